#pragma once

// Distinguishability-parameterized input states and their indistinguishability
// I(gamma) = |<psi(0)|psi(gamma)>|^2.
//
// Mode layouts:
//   four-mode scenarios  (early path 1, early path 2, late path 1, late path 2)
//   polarization         (H, V)
//   loss model           (mode 1, mode 2, loss ancilla)

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "distinguish/errors.hpp"
#include "distinguish/fock.hpp"
#include "distinguish/quadrature.hpp"
#include "distinguish/transforms.hpp"

namespace distinguish {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

enum class ScenarioId {
    Hom2,
    Hom4Coincidence,
    Hom4Bunching,
    SingleDeliberate,
    SingleLoss,
    SinglePhaseNoise,
    TwoPhotonPolarization,
    HofmannCascade,
    ClassicalPolarization,
};

inline constexpr std::array kAllScenarios = {
    ScenarioId::Hom2,
    ScenarioId::Hom4Coincidence,
    ScenarioId::Hom4Bunching,
    ScenarioId::SingleDeliberate,
    ScenarioId::SingleLoss,
    ScenarioId::SinglePhaseNoise,
    ScenarioId::TwoPhotonPolarization,
    ScenarioId::HofmannCascade,
    ScenarioId::ClassicalPolarization,
};

inline std::string_view scenario_name(ScenarioId id) {
    switch (id) {
        case ScenarioId::Hom2: return "hom2";
        case ScenarioId::Hom4Coincidence: return "hom4-coincidence";
        case ScenarioId::Hom4Bunching: return "hom4-bunching";
        case ScenarioId::SingleDeliberate: return "single-deliberate";
        case ScenarioId::SingleLoss: return "single-loss";
        case ScenarioId::SinglePhaseNoise: return "single-phase-noise";
        case ScenarioId::TwoPhotonPolarization: return "two-photon-polarization";
        case ScenarioId::HofmannCascade: return "hofmann-cascade";
        case ScenarioId::ClassicalPolarization: return "classical-polarization";
    }
    return "unknown";
}

inline std::optional<ScenarioId> parse_scenario(std::string_view name) {
    for (ScenarioId id : kAllScenarios) {
        if (scenario_name(id) == name) return id;
    }
    return std::nullopt;
}

inline bool is_quantum(ScenarioId id) { return id != ScenarioId::ClassicalPolarization; }

/// Scenarios whose measurement is a projector (beta, theta) on one photon in two modes.
inline bool needs_projector_angles(ScenarioId id) {
    return id == ScenarioId::SingleDeliberate || id == ScenarioId::SingleLoss ||
           id == ScenarioId::SinglePhaseNoise;
}

/// Distinguishability parameter gamma in [0, pi/2]. Values within 1e-12 of
/// the interval are clamped onto it; anything further out is rejected.
class Gamma {
public:
    static constexpr double kSlack = 1e-12;

    explicit Gamma(double radians) : radians_(radians) {
        if (!(radians >= -kSlack && radians <= kHalfPi + kSlack)) {
            throw InvalidParameter("gamma = " + std::to_string(radians) + " outside [0, pi/2]");
        }
        radians_ = std::clamp(radians, 0.0, kHalfPi);
    }

    double radians() const { return radians_; }

private:
    double radians_;
};

/// cos(g)|1,1>(x)|0,0> + sin(g)|1,0>(x)|0,1>
inline FockState hom_two_photon(Gamma gamma, const EngineOptions& options = {}) {
    const double g = gamma.radians();
    return FockState(4, {{{1, 1, 0, 0}, std::cos(g)}, {{1, 0, 0, 1}, std::sin(g)}}, options);
}

/// Two pairs, one delayed: cos^2|2,2,0,0> + sqrt2 cos sin|2,1,0,1> + sin^2|2,0,0,2>.
inline FockState hom_two_pair(Gamma gamma, const EngineOptions& options = {}) {
    const double c = std::cos(gamma.radians());
    const double s = std::sin(gamma.radians());
    return FockState(4,
                     {{{2, 2, 0, 0}, c * c},
                      {{2, 1, 0, 1}, std::numbers::sqrt2 * c * s},
                      {{2, 0, 0, 2}, s * s}},
                     options);
}

/// Single photon rotated from diagonal towards V: cos(pi/4+g/2)|1,0> + sin(pi/4+g/2)|0,1>.
inline FockState single_deliberate(Gamma gamma, const EngineOptions& options = {}) {
    const double a = std::numbers::pi / 4.0 + gamma.radians() / 2.0;
    return FockState(2, {{{1, 0}, std::cos(a)}, {{0, 1}, std::sin(a)}}, options);
}

/// Loss on the first mode, modelled unitarily into an unobserved ancilla.
inline FockState single_loss(Gamma gamma, const EngineOptions& options = {}) {
    const double g = gamma.radians();
    const double r = 1.0 / std::numbers::sqrt2;
    return FockState(3,
                     {{{1, 0, 0}, r * std::cos(g)}, {{0, 1, 0}, r}, {{0, 0, 1}, r * std::sin(g)}},
                     options);
}

/// (|1,0> + e^{i phi}|0,1>)/sqrt2
inline FockState phase_noise_member(double phi, const EngineOptions& options = {}) {
    const double r = 1.0 / std::numbers::sqrt2;
    return FockState(2, {{{1, 0}, r}, {{0, 1}, r * std::polar(1.0, phi)}}, options);
}

/// Two-point phase distribution {+g, -g} with equal weights: <cos phi> = cos g,
/// <sin phi> = 0.
inline StateEnsemble single_phase_noise(Gamma gamma, const EngineOptions& options = {}) {
    const double g = gamma.radians();
    return StateEnsemble({{0.5, phase_noise_member(g, options)}, {0.5, phase_noise_member(-g, options)}});
}

/// Same first moment as single_phase_noise, but with phases drawn from a
/// zero-mean wrapped normal distribution discretized on `nodes` points.
inline StateEnsemble single_phase_noise_wrapped_gaussian(Gamma gamma, int nodes = 17,
                                                         const EngineOptions& options = {}) {
    const QuadratureRule rule = wrapped_normal_rule(std::max(0.0, std::cos(gamma.radians())), nodes);
    std::vector<StateEnsemble::Member> members;
    members.reserve(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        members.push_back({rule.weights[i], phase_noise_member(rule.nodes[i], options)});
    }
    return StateEnsemble(std::move(members));
}

/// Photon pair rotated from diagonal towards H:
/// sin^2(a)|2,0> + sqrt2 sin(a)cos(a)|1,1> + cos^2(a)|0,2>, a = pi/4 + g/2.
inline FockState two_photon_polarization(Gamma gamma, const EngineOptions& options = {}) {
    const double a = std::numbers::pi / 4.0 + gamma.radians() / 2.0;
    const double s = std::sin(a);
    const double c = std::cos(a);
    return FockState(2, {{{2, 0}, s * s}, {{1, 1}, std::numbers::sqrt2 * s * c}, {{0, 2}, c * c}},
                     options);
}

using ScenarioState = std::variant<FockState, StateEnsemble>;

inline ScenarioState scenario_state(ScenarioId id, Gamma gamma, const EngineOptions& options = {}) {
    switch (id) {
        case ScenarioId::Hom2: return hom_two_photon(gamma, options);
        case ScenarioId::Hom4Coincidence:
        case ScenarioId::Hom4Bunching: return hom_two_pair(gamma, options);
        case ScenarioId::SingleDeliberate: return single_deliberate(gamma, options);
        case ScenarioId::SingleLoss: return single_loss(gamma, options);
        case ScenarioId::SinglePhaseNoise: return single_phase_noise(gamma, options);
        case ScenarioId::TwoPhotonPolarization:
        case ScenarioId::HofmannCascade: return two_photon_polarization(gamma, options);
        case ScenarioId::ClassicalPolarization: break;
    }
    throw UnsupportedScenario(std::string(scenario_name(id)) + " has no Fock-state model");
}

/// The maximally interfering reference state psi(0) as a pure state.
inline FockState reference_state(ScenarioId id, const EngineOptions& options = {}) {
    if (id == ScenarioId::SinglePhaseNoise) return phase_noise_member(0.0, options);
    return std::get<FockState>(scenario_state(id, Gamma(0.0), options));
}

/// Transform that the scenario's photons interfere through: the early/late
/// beam splitter for the HOM scenarios, identity for the rest.
inline ModeUnitary scenario_unitary(ScenarioId id) {
    switch (id) {
        case ScenarioId::Hom2:
        case ScenarioId::Hom4Coincidence:
        case ScenarioId::Hom4Bunching: return early_late_beamsplitter();
        case ScenarioId::SingleDeliberate:
        case ScenarioId::SinglePhaseNoise:
        case ScenarioId::TwoPhotonPolarization:
        case ScenarioId::HofmannCascade: return ModeUnitary::identity(2);
        case ScenarioId::SingleLoss: return ModeUnitary::identity(3);
        case ScenarioId::ClassicalPolarization: break;
    }
    throw UnsupportedScenario(std::string(scenario_name(id)) + " has no mode transform");
}

/// |<psi(0)|psi(gamma)>|^2, averaged over members for the phase-noise ensemble.
inline double indistinguishability(ScenarioId id, Gamma gamma, const EngineOptions& options = {}) {
    if (!is_quantum(id)) {
        throw UnsupportedScenario(std::string(scenario_name(id)) + " has no indistinguishability");
    }
    const FockState reference = reference_state(id, options);
    return std::visit([&](const auto& state) { return fidelity(reference, state); },
                      scenario_state(id, gamma, options));
}

}  // namespace distinguish
