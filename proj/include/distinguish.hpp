#pragma once

#include "distinguish/errors.hpp"
#include "distinguish/fock.hpp"
#include "distinguish/transforms.hpp"
#include "distinguish/quadrature.hpp"
#include "distinguish/models.hpp"
#include "distinguish/projectors.hpp"
#include "distinguish/analysis.hpp"
