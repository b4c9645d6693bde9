#pragma once

// Measurement models: pure-state projections, coincidence-window event sums,
// the ancilla-marginalized loss measurement, the proper indistinguishability
// projector, the two-photon polarization projector with its probabilistic
// beam-splitter/polarizer realization, and the classical-light analogue.

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "distinguish/errors.hpp"
#include "distinguish/fock.hpp"
#include "distinguish/models.hpp"
#include "distinguish/transforms.hpp"

namespace distinguish {

inline constexpr double kProbabilitySlack = 1e-9;

/// Raw probabilities are kept unclamped; anything outside [-1e-9, 1+1e-9]
/// means the algebra is wrong.
inline double checked_probability(double p, const char* what) {
    if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
        throw InvariantViolation(std::string(what) + " produced probability " + std::to_string(p));
    }
    return p;
}

/// beta in [0, pi/2], theta in [0, 2pi).
class ProjectorAngles {
public:
    ProjectorAngles(double beta, double theta) : beta_(beta), theta_(theta) {
        if (!(beta >= 0.0 && beta <= kHalfPi)) {
            throw InvalidParameter("beta = " + std::to_string(beta) + " outside [0, pi/2]");
        }
        if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) {
            throw InvalidParameter("theta = " + std::to_string(theta) + " outside [0, 2pi)");
        }
    }

    double beta() const { return beta_; }
    double theta() const { return theta_; }

private:
    double beta_;
    double theta_;
};

class DetectorModel {
public:
    explicit DetectorModel(double eta = 1.0) : eta_(eta) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw InvalidParameter("eta = " + std::to_string(eta) + " outside [0, 1]");
        }
    }

    double eta() const { return eta_; }

    /// Photon-number-insensitive click probability for n incident photons.
    double click_probability(int photons) const {
        return photons <= 0 ? 0.0 : 1.0 - std::pow(1.0 - eta_, photons);
    }

private:
    double eta_;
};

/// Set of detection patterns on the observed modes that a coincidence window
/// cannot tell apart. Unobserved modes are summed over.
class EventSumProjector {
public:
    EventSumProjector(std::vector<OccupationVector> events, std::vector<bool> observed_mask)
        : events_(std::move(events)), observed_(std::move(observed_mask)) {
        const std::size_t observed_count =
            static_cast<std::size_t>(std::count(observed_.begin(), observed_.end(), true));
        std::set<OccupationVector> seen;
        for (const auto& e : events_) {
            if (e.mode_count() != observed_count) {
                throw DimensionMismatch("event " + e.to_string() + " does not cover " +
                                        std::to_string(observed_count) + " observed modes");
            }
            if (!seen.insert(e).second) throw InvalidParameter("duplicate event " + e.to_string());
        }
    }

    /// All modes observed.
    static EventSumProjector all_observed(std::vector<OccupationVector> events, std::size_t modes) {
        return EventSumProjector(std::move(events), std::vector<bool>(modes, true));
    }

    const std::vector<OccupationVector>& events() const { return events_; }
    const std::vector<bool>& observed_mask() const { return observed_; }

    OccupationVector observed_part(const OccupationVector& occ) const {
        std::vector<int> kept;
        for (std::size_t i = 0; i < observed_.size(); ++i) {
            if (observed_[i]) kept.push_back(occ[i]);
        }
        return OccupationVector(std::move(kept));
    }

private:
    std::vector<OccupationVector> events_;
    std::vector<bool> observed_;
};

/// Both early/late output pairs each holding one photon.
inline EventSumProjector hom2_coincidence() {
    return EventSumProjector::all_observed({{1, 0, 0, 1}, {0, 1, 1, 0}}, 4);
}

/// Two photons in each output path, in any early/late split.
inline EventSumProjector hom4_coincidence() {
    return EventSumProjector::all_observed(
        {{2, 2, 0, 0}, {2, 1, 0, 1}, {1, 2, 1, 0}, {2, 0, 0, 2}, {1, 1, 1, 1}, {0, 2, 2, 0}}, 4);
}

/// All four photons in the first output path.
inline EventSumProjector hom4_bunching() {
    return EventSumProjector::all_observed({{4, 0, 0, 0}, {3, 0, 1, 0}, {2, 0, 2, 0}}, 4);
}

inline double event_sum(const FockState& state_out, const EventSumProjector& projector) {
    if (projector.observed_mask().size() != state_out.mode_count()) {
        throw DimensionMismatch("event projector covers " +
                                std::to_string(projector.observed_mask().size()) + " modes, state has " +
                                std::to_string(state_out.mode_count()));
    }
    const std::set<OccupationVector> events(projector.events().begin(), projector.events().end());
    double p = 0.0;
    for (const auto& [occ, amp] : state_out.terms()) {
        if (events.contains(projector.observed_part(occ))) p += std::norm(amp);
    }
    return checked_probability(p, "event_sum");
}

/// |<projector|state>|^2.
inline double pure_projection(const FockState& state, const FockState& projector) {
    if (state.mode_count() != projector.mode_count()) {
        throw DimensionMismatch("projection of a " + std::to_string(state.mode_count()) +
                                "-mode state onto a " + std::to_string(projector.mode_count()) +
                                "-mode projector");
    }
    require_normalized(projector, "projector");
    return checked_probability(std::norm(inner_product(projector, state)), "pure_projection");
}

/// Weight-averaged projection of a mixture.
inline double pure_projection(const StateEnsemble& ensemble, const FockState& projector) {
    double p = 0.0;
    for (const auto& m : ensemble.members()) p += m.weight * pure_projection(m.state, projector);
    return checked_probability(p, "pure_projection");
}

/// cos(beta)|1,0> + e^{-i theta} sin(beta)|0,1>
inline FockState single_photon_projector(const ProjectorAngles& angles) {
    return FockState(2, {{{1, 0}, std::cos(angles.beta())},
                         {{0, 1}, std::polar(std::sin(angles.beta()), -angles.theta())}});
}

/// Projection of a (mode 1, mode 2, ancilla) state onto a two-mode projector,
/// summing over whatever the undetected ancilla holds.
inline double loss_marginal_projection(const FockState& state, const FockState& projector,
                                       const EngineOptions& options = {}) {
    if (state.mode_count() != 3 || projector.mode_count() != 2) {
        throw DimensionMismatch("loss projection needs a 3-mode state and a 2-mode projector");
    }
    require_normalized(projector, "projector");
    const int projector_photons = projector.photon_number();
    if (projector_photons != 1) throw InvalidParameter("loss projector must be a single-photon state");

    int max_ancilla = 0;
    for (const auto& [occ, amp] : state.terms()) max_ancilla = std::max(max_ancilla, occ[2]);
    double p = 0.0;
    for (int k = 0; k <= max_ancilla; ++k) {
        const FockState extended = tensor(projector, basis_ket(OccupationVector{k}, options), options);
        p += std::norm(inner_product(extended, state));
    }
    return checked_probability(p, "loss_marginal_projection");
}

/// U|psi(0)>, the projector whose probability tracks I(gamma) exactly.
inline FockState proper_projector(ScenarioId id, const EngineOptions& options = {}) {
    if (!is_quantum(id)) {
        throw UnsupportedScenario(std::string(scenario_name(id)) + " has no proper projector");
    }
    return lift(scenario_unitary(id), reference_state(id, options), options);
}

/// (sqrt2|2,0> + |1,1>)/sqrt3 on (H, V).
inline FockState two_photon_xi() {
    return FockState(2, {{{2, 0}, std::sqrt(2.0 / 3.0)}, {{1, 1}, std::sqrt(1.0 / 3.0)}});
}

/// Probabilistic realization of the two_photon_xi projection. Layout after
/// padding: (arm1 H, arm1 V, arm2 H, arm2 V). A non-polarizing balanced beam
/// splitter feeds the two arms; arm 1 passes diagonal light (rotated onto its
/// H mode), arm 2 passes horizontal light. Each detector watches its pass mode
/// and fires with probability 1 - (1-eta)^n; the result is the probability
/// that both fire.
inline double hofmann_cascade(const FockState& state, const DetectorModel& detectors,
                              const EngineOptions& options = {}) {
    if (state.mode_count() != 2) throw DimensionMismatch("cascade input must be a 2-mode (H, V) state");
    if (state.photon_number() != 2) {
        throw InvalidParameter("cascade input must be a two-photon state, got photon number " +
                               std::to_string(state.photon_number()));
    }
    const FockState padded = tensor(state, basis_ket({0, 0}, options), options);
    const ModeUnitary splitter = beamsplitter_5050(0, 2, 4) * beamsplitter_5050(1, 3, 4);
    // Rotation by -pi/4 takes (H+V)/sqrt2 onto arm 1's H mode.
    const ModeUnitary diagonal_analyzer = polarization_rotation(-std::numbers::pi / 4.0, 4, 0, 1);
    const FockState out = lift(diagonal_analyzer * splitter, padded, options);

    double p = 0.0;
    for (const auto& [occ, amp] : out.terms()) {
        p += std::norm(amp) * detectors.click_probability(occ[0]) * detectors.click_probability(occ[2]);
    }
    return checked_probability(p, "hofmann_cascade");
}

struct ClassicalSetup {
    double theta1 = 0.0;
    double theta2 = std::numbers::pi / 4.0;
    double field_amplitude = 2.0;
};

/// Coincident intensity product for linearly polarized classical light at
/// angle gamma through polarizers at theta1 and theta2:
/// (E0/2)^4 cos^2(gamma - theta1) cos^2(gamma - theta2).
inline double classical_intensity(double gamma, double theta1, double theta2, double field_amplitude) {
    const double e = field_amplitude / 2.0;
    const double c1 = std::cos(gamma - theta1);
    const double c2 = std::cos(gamma - theta2);
    return e * e * e * e * c1 * c1 * c2 * c2;
}

}  // namespace distinguish
