#pragma once

// Gamma sweeps, analytic cross-checks, monotonicity classification and
// extremum refinement.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "distinguish/errors.hpp"
#include "distinguish/models.hpp"
#include "distinguish/projectors.hpp"
#include "distinguish/transforms.hpp"

namespace distinguish {

/// Everything besides gamma that a scenario's measurement may need.
struct ScenarioParams {
    std::optional<ProjectorAngles> angles;
    DetectorModel detectors{1.0};
    ClassicalSetup classical{};
};

// ---------------------------------------------------------------------------
// Closed forms. None of these touch the Fock engine.

inline double hom2_coincidence_closed(double g) {
    const double s = std::sin(g);
    return s * s / 2.0;
}

inline double hom4_coincidence_closed(double g) {
    const double c2 = std::cos(g) * std::cos(g);
    const double s2 = std::sin(g) * std::sin(g);
    return c2 * c2 / 4.0 + c2 * s2 / 4.0 + 3.0 * s2 * s2 / 8.0;
}

/// The same coincidence probability written through I = cos^4(gamma).
inline double hom4_coincidence_from_indistinguishability(double indist) {
    return (3.0 * indist - 4.0 * std::sqrt(indist) + 3.0) / 8.0;
}

inline double hom4_bunching_closed(double g) {
    const double c2 = std::cos(g) * std::cos(g);
    const double s2 = std::sin(g) * std::sin(g);
    return 3.0 * c2 / 8.0 + s2 * s2 / 16.0;
}

inline double single_deliberate_closed(double g, const ProjectorAngles& a) {
    const double cb = std::cos(a.beta());
    const double sb = std::sin(a.beta());
    return cb * cb * (1.0 - std::sin(g)) / 2.0 +
           std::cos(a.theta()) * std::sin(2.0 * a.beta()) * std::cos(g) / 2.0 +
           sb * sb * (1.0 + std::sin(g)) / 2.0;
}

inline double single_loss_closed(double g, const ProjectorAngles& a) {
    const double cg = std::cos(g);
    const double cb = std::cos(a.beta());
    const double sb = std::sin(a.beta());
    return (cg * cg * cb * cb + std::cos(a.theta()) * std::sin(2.0 * a.beta()) * cg + sb * sb) / 2.0;
}

inline double single_phase_noise_closed(double g, const ProjectorAngles& a) {
    return (1.0 + std::cos(a.theta()) * std::sin(2.0 * a.beta()) * std::cos(g)) / 2.0;
}

inline double two_photon_polarization_closed(double g) {
    const double s = std::sin(std::numbers::pi / 4.0 + g / 2.0);
    const double c = std::cos(g / 2.0);
    return 4.0 / 3.0 * s * s * c * c;
}

inline bool has_closed_form(ScenarioId id) { return is_quantum(id); }

inline const ProjectorAngles& require_angles(ScenarioId id, const ScenarioParams& params) {
    if (!params.angles) {
        throw InvalidParameter(std::string(scenario_name(id)) + " requires projector angles (beta, theta)");
    }
    return *params.angles;
}

inline double closed_form(ScenarioId id, Gamma gamma, const ScenarioParams& params = {}) {
    const double g = gamma.radians();
    switch (id) {
        case ScenarioId::Hom2: return hom2_coincidence_closed(g);
        case ScenarioId::Hom4Coincidence: return hom4_coincidence_closed(g);
        case ScenarioId::Hom4Bunching: return hom4_bunching_closed(g);
        case ScenarioId::SingleDeliberate: return single_deliberate_closed(g, require_angles(id, params));
        case ScenarioId::SingleLoss: return single_loss_closed(g, require_angles(id, params));
        case ScenarioId::SinglePhaseNoise: return single_phase_noise_closed(g, require_angles(id, params));
        case ScenarioId::TwoPhotonPolarization: return two_photon_polarization_closed(g);
        case ScenarioId::HofmannCascade: {
            const double eta = params.detectors.eta();
            return 3.0 * eta * eta / 8.0 * two_photon_polarization_closed(g);
        }
        case ScenarioId::ClassicalPolarization: break;
    }
    throw UnsupportedScenario(std::string(scenario_name(id)) + " has no separate closed form");
}

// ---------------------------------------------------------------------------
// Engine evaluation.

/// Measured probability for one scenario at one gamma, computed by building
/// the input state, transforming it, and applying the scenario's measurement.
inline double evaluate(ScenarioId id, Gamma gamma, const ScenarioParams& params = {},
                       const EngineOptions& options = {}) {
    switch (id) {
        case ScenarioId::Hom2:
            return event_sum(lift(early_late_beamsplitter(), hom_two_photon(gamma, options), options),
                             hom2_coincidence());
        case ScenarioId::Hom4Coincidence:
            return event_sum(lift(early_late_beamsplitter(), hom_two_pair(gamma, options), options),
                             hom4_coincidence());
        case ScenarioId::Hom4Bunching:
            return event_sum(lift(early_late_beamsplitter(), hom_two_pair(gamma, options), options),
                             hom4_bunching());
        case ScenarioId::SingleDeliberate:
            return pure_projection(single_deliberate(gamma, options),
                                   single_photon_projector(require_angles(id, params)));
        case ScenarioId::SingleLoss:
            return loss_marginal_projection(single_loss(gamma, options),
                                            single_photon_projector(require_angles(id, params)), options);
        case ScenarioId::SinglePhaseNoise:
            return pure_projection(single_phase_noise(gamma, options),
                                   single_photon_projector(require_angles(id, params)));
        case ScenarioId::TwoPhotonPolarization:
            return pure_projection(two_photon_polarization(gamma, options), two_photon_xi());
        case ScenarioId::HofmannCascade:
            return hofmann_cascade(two_photon_polarization(gamma, options), params.detectors, options);
        case ScenarioId::ClassicalPolarization:
            return classical_intensity(gamma.radians(), params.classical.theta1, params.classical.theta2,
                                       params.classical.field_amplitude);
    }
    throw UnsupportedScenario("unknown scenario");
}

// ---------------------------------------------------------------------------
// Monotonicity.

enum class Verdict { NonDecreasing, NonIncreasing, Constant, NonMonotonic };

inline std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NonDecreasing: return "NonDecreasing";
        case Verdict::NonIncreasing: return "NonIncreasing";
        case Verdict::Constant: return "Constant";
        case Verdict::NonMonotonic: return "NonMonotonic";
    }
    return "unknown";
}

inline constexpr double kMonotonicityTolerance = 1e-9;

inline Verdict classify_monotonicity(std::span<const double> values, double tol = kMonotonicityTolerance) {
    if (values.size() < 3) {
        throw InvalidParameter("monotonicity needs at least 3 values, got " + std::to_string(values.size()));
    }
    bool non_decreasing = true;
    bool non_increasing = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double step = values[i] - values[i - 1];
        if (step < -tol) non_decreasing = false;
        if (step > tol) non_increasing = false;
    }
    if (non_decreasing && non_increasing) return Verdict::Constant;
    if (non_decreasing) return Verdict::NonDecreasing;
    if (non_increasing) return Verdict::NonIncreasing;
    return Verdict::NonMonotonic;
}

// ---------------------------------------------------------------------------
// Extrema.

/// Golden-section minimization on [lo, hi]; ties go to the left.
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

inline constexpr double kDerivativeStep = 1e-5;

template <typename F>
double central_difference(F&& f, double x, double h = kDerivativeStep) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

enum class ExtremumKind { Min, Max };

struct Extremum {
    double gamma;
    double value;
    ExtremumKind kind;
};

/// Locates a stationary point inside [lo, hi] where f turns. Golden-section
/// narrows the bracket while function comparisons are still resolvable, then
/// bisection on the sign of the central-difference slope finishes the job,
/// since plain comparisons stall near sqrt(machine epsilon) in gamma.
template <typename F>
double refine_turning_point(F&& f, double lo, double hi, ExtremumKind kind, double domain_lo,
                            double domain_hi) {
    auto objective = [&](double x) { return kind == ExtremumKind::Min ? f(x) : -f(x); };
    double x = golden_section_minimize(objective, lo, hi, 1e-6);

    const double h = kDerivativeStep;
    double a = std::max(lo, x - 4e-6);
    double b = std::min(hi, x + 4e-6);
    if (a - h < domain_lo || b + h > domain_hi) return x;
    double slope_a = central_difference(objective, a, h);
    double slope_b = central_difference(objective, b, h);
    if (!(slope_a < 0.0 && slope_b > 0.0)) return x;
    for (int i = 0; i < 80 && (b - a) > 1e-13; ++i) {
        const double m = 0.5 * (a + b);
        if (central_difference(objective, m, h) < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// Interior turning points of sampled `values` on `grid`, refined on `f`.
template <typename F>
std::vector<Extremum> find_turning_points(F&& f, std::span<const double> grid, std::span<const double> values,
                                          double tol = kMonotonicityTolerance) {
    std::vector<Extremum> out;
    int prev_sign = 0;
    std::size_t prev_index = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double step = values[i + 1] - values[i];
        const int sign = step > tol ? 1 : (step < -tol ? -1 : 0);
        if (sign == 0) continue;
        if (prev_sign != 0 && sign != prev_sign) {
            const ExtremumKind kind = prev_sign < 0 ? ExtremumKind::Min : ExtremumKind::Max;
            const double g = refine_turning_point(f, grid[prev_index], grid[i + 1], kind, grid.front(),
                                                  grid.back());
            out.push_back({g, f(g), kind});
        }
        prev_sign = sign;
        prev_index = i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepResult {
    ScenarioId scenario;
    ScenarioParams params;
    std::vector<double> gammas;
    std::vector<double> probabilities;
    std::optional<std::vector<double>> closed_form;
    std::optional<std::vector<double>> indistinguishability;
    Verdict verdict = Verdict::Constant;
    std::vector<Extremum> extrema;
    std::optional<double> max_closed_form_deviation;
    EngineOptions options{};
};

inline constexpr int kDefaultSteps = 101;

/// `steps` uniform points on [0, pi/2], endpoints exact.
inline std::vector<double> gamma_grid(int steps) {
    if (steps < 3) throw InvalidParameter("steps must be >= 3, got " + std::to_string(steps));
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) grid[i] = kHalfPi * i / (steps - 1);
    grid.back() = kHalfPi;
    return grid;
}

/// Refined interior extrema of a sweep, evaluated on the engine probability.
inline std::vector<Extremum> find_extrema(const SweepResult& result) {
    auto f = [&](double g) { return evaluate(result.scenario, Gamma(g), result.params, result.options); };
    return find_turning_points(f, result.gammas, result.probabilities);
}

inline SweepResult sweep(ScenarioId id, int steps = kDefaultSteps, const ScenarioParams& params = {},
                         const EngineOptions& options = {}) {
    if (needs_projector_angles(id)) require_angles(id, params);

    SweepResult r{id, params, gamma_grid(steps), {}, {}, {}, Verdict::Constant, {}, {}, options};
    r.probabilities.reserve(r.gammas.size());
    for (double g : r.gammas) r.probabilities.push_back(evaluate(id, Gamma(g), params, options));

    if (has_closed_form(id)) {
        std::vector<double> cf;
        double worst = 0.0;
        for (std::size_t i = 0; i < r.gammas.size(); ++i) {
            cf.push_back(closed_form(id, Gamma(r.gammas[i]), params));
            worst = std::max(worst, std::abs(cf.back() - r.probabilities[i]));
        }
        r.closed_form = std::move(cf);
        r.max_closed_form_deviation = worst;
    }
    if (is_quantum(id)) {
        std::vector<double> ind;
        for (double g : r.gammas) ind.push_back(indistinguishability(id, Gamma(g), options));
        r.indistinguishability = std::move(ind);
    }
    r.verdict = classify_monotonicity(r.probabilities);
    r.extrema = find_extrema(r);
    return r;
}

}  // namespace distinguish
