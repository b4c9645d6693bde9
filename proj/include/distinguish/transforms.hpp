#pragma once

// Linear-optical mode transformations and their action on Fock states.
//
// Column convention: a ModeUnitary U sends a_i^dag -> sum_j U(j, i) a_j^dag,
// so column i is the image of input mode i. Composition follows the matrix
// product: lift(u * v, psi) == lift(u, lift(v, psi)).

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "distinguish/fock.hpp"

namespace distinguish {

class ModeUnitary {
public:
    using Block = std::array<std::array<Complex, 2>, 2>;

    static constexpr double kUnitarityTolerance = 1e-12;

    static ModeUnitary identity(std::size_t dimension) {
        std::vector<Complex> m(dimension * dimension);
        for (std::size_t i = 0; i < dimension; ++i) m[i * dimension + i] = 1.0;
        return ModeUnitary(dimension, std::move(m), false);
    }

    /// Row-major entries; throws if U^dag U differs from the identity by more
    /// than 1e-12 in any entry.
    ModeUnitary(std::size_t dimension, std::vector<Complex> row_major)
        : ModeUnitary(dimension, std::move(row_major), true) {}

    /// Identity on all modes except the 2x2 block acting on (mode_a, mode_b).
    /// block[r][c] is the amplitude of output (a,b)[r] for input (a,b)[c].
    static ModeUnitary embed(const Block& block, std::size_t mode_a, std::size_t mode_b,
                             std::size_t total_modes) {
        if (mode_a >= total_modes || mode_b >= total_modes) {
            throw InvalidParameter("mode index out of range for " + std::to_string(total_modes) +
                                   " modes");
        }
        if (mode_a == mode_b) throw InvalidParameter("two-mode block needs distinct modes");
        ModeUnitary u = identity(total_modes);
        const std::size_t idx[2] = {mode_a, mode_b};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) u.at(idx[r], idx[c]) = block[r][c];
        }
        u.check_unitary();
        return u;
    }

    std::size_t dimension() const { return dimension_; }

    Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dimension_ + col]; }

    friend ModeUnitary operator*(const ModeUnitary& lhs, const ModeUnitary& rhs) {
        if (lhs.dimension_ != rhs.dimension_) {
            throw DimensionMismatch("cannot compose unitaries of dimension " +
                                    std::to_string(lhs.dimension_) + " and " +
                                    std::to_string(rhs.dimension_));
        }
        const std::size_t n = lhs.dimension_;
        std::vector<Complex> m(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex l = lhs(i, k);
                if (l == Complex{}) continue;
                for (std::size_t j = 0; j < n; ++j) m[i * n + j] += l * rhs(k, j);
            }
        }
        return ModeUnitary(n, std::move(m), false);
    }

    /// Largest entry of |U^dag U - 1|.
    double unitarity_defect() const {
        const std::size_t n = dimension_;
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Complex s{};
                for (std::size_t k = 0; k < n; ++k) s += std::conj((*this)(k, i)) * (*this)(k, j);
                if (i == j) s -= 1.0;
                worst = std::max(worst, std::abs(s));
            }
        }
        return worst;
    }

private:
    ModeUnitary(std::size_t dimension, std::vector<Complex> row_major, bool validate)
        : dimension_(dimension), entries_(std::move(row_major)) {
        if (entries_.size() != dimension_ * dimension_) {
            throw DimensionMismatch("expected " + std::to_string(dimension_ * dimension_) +
                                    " matrix entries, got " + std::to_string(entries_.size()));
        }
        if (validate) check_unitary();
    }

    Complex& at(std::size_t row, std::size_t col) { return entries_[row * dimension_ + col]; }

    void check_unitary() const {
        if (double d = unitarity_defect(); d > kUnitarityTolerance) {
            throw InvalidParameter("matrix is not unitary (defect " + std::to_string(d) + ")");
        }
    }

    std::size_t dimension_;
    std::vector<Complex> entries_;
};

/// Balanced beam splitter: a^dag -> (a^dag + b^dag)/sqrt2, b^dag -> (a^dag - b^dag)/sqrt2.
/// With this sign choice |1,1> -> (|2,0> - |0,2>)/sqrt2.
inline ModeUnitary beamsplitter_5050(std::size_t mode_a, std::size_t mode_b, std::size_t total_modes) {
    const double r = 1.0 / std::numbers::sqrt2;
    return ModeUnitary::embed({{{r, r}, {r, -r}}}, mode_a, mode_b, total_modes);
}

/// Real rotation on an (H, V) pair: H^dag -> cos H^dag + sin V^dag,
/// V^dag -> -sin H^dag + cos V^dag.
inline ModeUnitary polarization_rotation(double angle, std::size_t total_modes, std::size_t mode_h,
                                         std::size_t mode_v) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return ModeUnitary::embed({{{c, -s}, {s, c}}}, mode_h, mode_v, total_modes);
}

/// The same balanced beam splitter on the early pair (0,1) and the late pair
/// (2,3) of a four-mode early/late layout.
inline ModeUnitary early_late_beamsplitter() {
    return beamsplitter_5050(0, 1, 4) * beamsplitter_5050(2, 3, 4);
}

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace detail

/// U applied to a Fock state. Each basis ket is written as a monomial in
/// creation operators, every a_i^dag is replaced by its image column, the
/// product is expanded, and monomials are re-read as normalized kets.
inline FockState lift(const ModeUnitary& u, const FockState& state, const EngineOptions& options = {}) {
    const std::size_t modes = state.mode_count();
    if (u.dimension() != modes) {
        throw DimensionMismatch("unitary of dimension " + std::to_string(u.dimension()) +
                                " applied to a " + std::to_string(modes) + "-mode state");
    }

    // Sparse image of each creation operator.
    std::vector<std::vector<std::pair<std::size_t, Complex>>> image(modes);
    for (std::size_t i = 0; i < modes; ++i) {
        for (std::size_t j = 0; j < modes; ++j) {
            if (u(j, i) != Complex{}) image[i].emplace_back(j, u(j, i));
        }
    }

    // Polynomial in creation operators: exponent vector -> coefficient.
    using Poly = std::map<std::vector<int>, Complex>;
    FockState::Terms out;

    for (const auto& [occ, amp] : state.terms()) {
        check_photon_bound(occ, options.max_photons);

        double norm = 1.0;
        for (std::size_t i = 0; i < modes; ++i) norm *= detail::factorial(occ[i]);

        Poly poly{{std::vector<int>(modes, 0), amp / std::sqrt(norm)}};
        for (std::size_t i = 0; i < modes; ++i) {
            for (int rep = 0; rep < occ[i]; ++rep) {
                Poly next;
                for (const auto& [exps, coeff] : poly) {
                    for (const auto& [j, uji] : image[i]) {
                        std::vector<int> e = exps;
                        ++e[j];
                        next[e] += coeff * uji;
                    }
                }
                poly = std::move(next);
            }
        }

        // prod_j (a_j^dag)^{k_j} |0> = prod_j sqrt(k_j!) |k>
        for (const auto& [exps, coeff] : poly) {
            double scale = 1.0;
            for (int k : exps) scale *= detail::factorial(k);
            out[OccupationVector(exps)] += coeff * std::sqrt(scale);
        }
    }
    return FockState::from_terms(modes, std::move(out), options);
}

}  // namespace distinguish
