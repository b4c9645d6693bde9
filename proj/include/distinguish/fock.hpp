#pragma once

// Finite bosonic Fock-space algebra: occupation-number kets, sparse pure
// states, weighted mixtures, and the handful of operations everything else
// is built from.
//
// Normalization convention: |n_1,...,n_M> = prod_i (a_i^dag)^{n_i} / sqrt(n_i!) |0>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "distinguish/errors.hpp"

namespace distinguish {

using Complex = std::complex<double>;

// Knobs shared by every routine that builds states. The defaults are what all
// reported numbers use; tests vary prune_threshold to show it is harmless.
struct EngineOptions {
    int max_photons = 8;
    double prune_threshold = 1e-15;
};

inline constexpr double kNormalizationTolerance = 1e-12;

/// Photon counts per mode. Ordered lexicographically so that maps keyed on
/// it iterate in a fixed order.
class OccupationVector {
public:
    OccupationVector() = default;

    explicit OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
        for (int c : counts_) {
            if (c < 0) {
                throw InvalidOccupation("occupation " + to_string() + " has a negative entry");
            }
        }
    }

    OccupationVector(std::initializer_list<int> counts)
        : OccupationVector(std::vector<int>(counts)) {}

    static OccupationVector vacuum(std::size_t modes) {
        return OccupationVector(std::vector<int>(modes, 0));
    }

    std::size_t mode_count() const { return counts_.size(); }
    int operator[](std::size_t mode) const { return counts_[mode]; }
    std::span<const int> counts() const { return counts_; }

    int total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

    OccupationVector concatenated(const OccupationVector& right) const {
        std::vector<int> joined = counts_;
        joined.insert(joined.end(), right.counts_.begin(), right.counts_.end());
        return OccupationVector(std::move(joined));
    }

    std::string to_string() const {
        std::string out = "|";
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (i != 0) out += ',';
            out += std::to_string(counts_[i]);
        }
        return out + ">";
    }

    auto operator<=>(const OccupationVector&) const = default;
    bool operator==(const OccupationVector&) const = default;

private:
    std::vector<int> counts_;
};

inline void check_photon_bound(const OccupationVector& occ, int max_photons) {
    if (occ.total() > max_photons) {
        throw InvalidOccupation("occupation " + occ.to_string() + " carries " +
                                std::to_string(occ.total()) + " photons; bound is " +
                                std::to_string(max_photons));
    }
}

/// Every occupation pattern of `photons` photons over `modes` modes, in
/// lexicographic order.
inline std::vector<OccupationVector> all_occupations(std::size_t modes, int photons) {
    std::vector<OccupationVector> out;
    if (modes == 0) {
        if (photons == 0) out.emplace_back();
        return out;
    }
    std::vector<int> counts(modes, 0);
    std::function<void(std::size_t, int)> fill = [&](std::size_t mode, int left) {
        if (mode + 1 == modes) {
            counts[mode] = left;
            out.emplace_back(counts);
            return;
        }
        for (int n = 0; n <= left; ++n) {
            counts[mode] = n;
            fill(mode + 1, left - n);
        }
    };
    fill(0, photons);
    std::sort(out.begin(), out.end());
    return out;
}

/// Sparse pure state: map from occupation pattern to amplitude. Entries with
/// |amplitude| below the prune threshold are dropped on construction.
class FockState {
public:
    using Terms = std::map<OccupationVector, Complex>;

    explicit FockState(std::size_t mode_count) : mode_count_(mode_count) {}

    FockState(std::size_t mode_count, const std::vector<std::pair<OccupationVector, Complex>>& terms,
              const EngineOptions& options = {})
        : mode_count_(mode_count) {
        for (const auto& [occ, amp] : terms) {
            check_key(occ, options.max_photons);
            terms_[occ] += amp;
        }
        prune(options.prune_threshold);
    }

    static FockState from_terms(std::size_t mode_count, Terms terms, const EngineOptions& options = {}) {
        FockState state(mode_count);
        for (const auto& [occ, amp] : terms) state.check_key(occ, options.max_photons);
        state.terms_ = std::move(terms);
        state.prune(options.prune_threshold);
        return state;
    }

    std::size_t mode_count() const { return mode_count_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    Complex amplitude(const OccupationVector& occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? Complex{} : it->second;
    }

    double norm_squared() const {
        double sum = 0.0;
        for (const auto& [occ, amp] : terms_) sum += std::norm(amp);
        return sum;
    }

    bool is_normalized(double tol = kNormalizationTolerance) const {
        return std::abs(norm_squared() - 1.0) < tol;
    }

    /// Total photon number if every term carries the same count, else -1.
    int photon_number() const {
        int n = -1;
        for (const auto& [occ, amp] : terms_) {
            int t = occ.total();
            if (n == -1) {
                n = t;
            } else if (n != t) {
                return -1;
            }
        }
        return n == -1 ? 0 : n;
    }

    FockState scaled(Complex factor, const EngineOptions& options = {}) const {
        Terms out;
        for (const auto& [occ, amp] : terms_) out.emplace(occ, amp * factor);
        return from_terms(mode_count_, std::move(out), options);
    }

    FockState normalized() const {
        double n = std::sqrt(norm_squared());
        if (n == 0.0) throw InvalidParameter("cannot normalize the zero vector");
        return scaled(1.0 / n);
    }

    friend FockState operator+(const FockState& a, const FockState& b) {
        if (a.mode_count_ != b.mode_count_) {
            throw DimensionMismatch("cannot add states on " + std::to_string(a.mode_count_) +
                                    " and " + std::to_string(b.mode_count_) + " modes");
        }
        Terms sum = a.terms_;
        for (const auto& [occ, amp] : b.terms_) sum[occ] += amp;
        return from_terms(a.mode_count_, std::move(sum));
    }

    friend FockState operator*(Complex factor, const FockState& s) { return s.scaled(factor); }

private:
    void check_key(const OccupationVector& occ, int max_photons) const {
        if (occ.mode_count() != mode_count_) {
            throw DimensionMismatch("occupation " + occ.to_string() + " does not have " +
                                    std::to_string(mode_count_) + " modes");
        }
        check_photon_bound(occ, max_photons);
    }

    void prune(double threshold) {
        std::erase_if(terms_, [threshold](const auto& kv) {
            return std::abs(kv.second) < threshold || kv.second == Complex{};
        });
    }

    std::size_t mode_count_;
    Terms terms_;
};

/// Normalized basis ket with amplitude 1 on `occupations`.
inline FockState basis_ket(const OccupationVector& occupations, const EngineOptions& options = {}) {
    check_photon_bound(occupations, options.max_photons);
    return FockState(occupations.mode_count(), {{occupations, Complex{1.0, 0.0}}}, options);
}

inline FockState basis_ket(std::initializer_list<int> occupations, const EngineOptions& options = {}) {
    return basis_ket(OccupationVector(occupations), options);
}

/// <bra|ket>, conjugate-linear in the bra.
inline Complex inner_product(const FockState& bra, const FockState& ket) {
    if (bra.mode_count() != ket.mode_count()) {
        throw DimensionMismatch("inner product of states on " + std::to_string(bra.mode_count()) +
                                " and " + std::to_string(ket.mode_count()) + " modes");
    }
    const auto& small = bra.size() <= ket.size() ? bra.terms() : ket.terms();
    const auto& large = bra.size() <= ket.size() ? ket.terms() : bra.terms();
    const bool bra_is_small = bra.size() <= ket.size();
    Complex sum{};
    for (const auto& [occ, amp] : small) {
        auto it = large.find(occ);
        if (it == large.end()) continue;
        sum += bra_is_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return sum;
}

/// left (x) right; modes of `right` are appended after those of `left`.
inline FockState tensor(const FockState& left, const FockState& right, const EngineOptions& options = {}) {
    FockState::Terms out;
    for (const auto& [lo, la] : left.terms()) {
        for (const auto& [ro, ra] : right.terms()) {
            OccupationVector joined = lo.concatenated(ro);
            check_photon_bound(joined, options.max_photons);
            out[joined] += la * ra;
        }
    }
    return FockState::from_terms(left.mode_count() + right.mode_count(), std::move(out), options);
}

/// Classical mixture of normalized pure states on a common mode set.
class StateEnsemble {
public:
    struct Member {
        double weight;
        FockState state;
    };

    explicit StateEnsemble(std::vector<Member> members) : members_(std::move(members)) {
        if (members_.empty()) throw InvalidParameter("ensemble needs at least one member");
        double total = 0.0;
        for (const auto& m : members_) {
            if (!(m.weight > 0.0 && m.weight <= 1.0)) {
                throw InvalidParameter("ensemble weight " + std::to_string(m.weight) + " outside (0,1]");
            }
            if (m.state.mode_count() != members_.front().state.mode_count()) {
                throw DimensionMismatch("ensemble members disagree on mode count");
            }
            if (!m.state.is_normalized()) {
                throw InvalidParameter("ensemble member is not normalized");
            }
            total += m.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw InvalidParameter("ensemble weights sum to " + std::to_string(total));
        }
    }

    std::size_t mode_count() const { return members_.front().state.mode_count(); }
    const std::vector<Member>& members() const { return members_; }

private:
    std::vector<Member> members_;
};

inline void require_normalized(const FockState& s, const char* what) {
    if (!s.is_normalized()) {
        throw InvalidParameter(std::string(what) + " is not normalized (norm^2 = " +
                               std::to_string(s.norm_squared()) + ")");
    }
}

/// |<reference|state>|^2.
inline double fidelity(const FockState& reference, const FockState& state) {
    require_normalized(reference, "fidelity reference");
    return std::norm(inner_product(reference, state));
}

/// sum_i w_i |<reference|state_i>|^2.
inline double fidelity(const FockState& reference, const StateEnsemble& ensemble) {
    require_normalized(reference, "fidelity reference");
    double sum = 0.0;
    for (const auto& m : ensemble.members()) sum += m.weight * std::norm(inner_product(reference, m.state));
    return sum;
}

}  // namespace distinguish
