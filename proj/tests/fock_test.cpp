#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "distinguish/fock.hpp"
#include "distinguish/models.hpp"
#include "oracles.hpp"

namespace distinguish {
namespace {

constexpr double kTol = 1e-12;

TEST(BasisKet, SingleTermWithUnitAmplitude) {
    const FockState s = basis_ket({1, 1, 0, 0});
    EXPECT_EQ(s.mode_count(), 4u);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.amplitude(OccupationVector{1, 1, 0, 0}), Complex(1.0, 0.0));
}

TEST(BasisKet, VacuumIsNormalized) {
    const FockState vac = basis_ket({0, 0});
    EXPECT_NEAR(vac.norm_squared(), 1.0, kTol);
    EXPECT_EQ(vac.photon_number(), 0);
}

TEST(BasisKet, MultiplyOccupiedKetHasUnitNorm) {
    EXPECT_DOUBLE_EQ(basis_ket({2, 2, 0, 0}).norm_squared(), 1.0);
}

TEST(BasisKet, RejectsNegativeEntry) {
    EXPECT_THROW(basis_ket({1, -1}), InvalidOccupation);
}

TEST(BasisKet, RejectsPhotonBoundOverflow) {
    EXPECT_THROW(basis_ket({5, 4}), InvalidOccupation);
    EXPECT_NO_THROW(basis_ket({5, 4}, EngineOptions{.max_photons = 9}));
    EXPECT_THROW(basis_ket({2, 1}, EngineOptions{.max_photons = 2}), InvalidOccupation);
}

TEST(InnerProduct, OrthogonalBasisKets) {
    EXPECT_EQ(inner_product(basis_ket({1, 0}), basis_ket({0, 1})), Complex{});
}

TEST(InnerProduct, ConjugateLinearInBra) {
    const FockState a(2, {{{1, 0}, Complex(0.0, 1.0)}});
    const FockState b = basis_ket({1, 0});
    EXPECT_EQ(inner_product(a, b), Complex(0.0, -1.0));
    EXPECT_EQ(inner_product(b, a), Complex(0.0, 1.0));
}

TEST(InnerProduct, HomOverlapIsCosGamma) {
    const FockState ref = hom_two_photon(Gamma(0.0));
    for (double g : {0.0, 0.3, 0.7, 1.2, kHalfPi}) {
        const Complex ov = inner_product(ref, hom_two_photon(Gamma(g)));
        EXPECT_NEAR(ov.real(), std::cos(g), kTol);
        EXPECT_NEAR(ov.imag(), 0.0, kTol);
    }
}

TEST(InnerProduct, ModeCountMismatchThrows) {
    EXPECT_THROW(inner_product(basis_ket({1, 0}), basis_ket({1, 0, 0})), DimensionMismatch);
}

TEST(Tensor, AppendsModes) {
    const FockState t = tensor(basis_ket({1, 1}), basis_ket({0, 0}));
    EXPECT_EQ(t.mode_count(), 4u);
    EXPECT_EQ(t.amplitude(OccupationVector{1, 1, 0, 0}), Complex(1.0));
}

TEST(Tensor, IsBilinear) {
    const Complex alpha(0.3, -0.4);
    const FockState t = tensor(alpha * basis_ket({1, 0}), basis_ket({0, 1}));
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.amplitude(OccupationVector{1, 0, 0, 1}), alpha);
}

TEST(Tensor, BuildsTwoPhotonHomInput) {
    const double g = 0.4;
    const FockState built = std::cos(g) * tensor(basis_ket({1, 1}), basis_ket({0, 0})) +
                            std::sin(g) * tensor(basis_ket({1, 0}), basis_ket({0, 1}));
    EXPECT_TRUE(built.is_normalized());
    EXPECT_NEAR(std::abs(inner_product(built, hom_two_photon(Gamma(g)))), 1.0, kTol);
}

TEST(Tensor, PhotonBoundEnforced) {
    EXPECT_THROW(tensor(basis_ket({3, 2}), basis_ket({2, 2})), InvalidOccupation);
}

TEST(Fidelity, SelfIsOne) {
    const FockState s = hom_two_pair(Gamma(0.8));
    EXPECT_NEAR(fidelity(s, s), 1.0, kTol);
}

TEST(Fidelity, HomIsCosSquared) {
    for (double g : {0.1, 0.9, 1.5}) {
        EXPECT_NEAR(fidelity(hom_two_photon(Gamma(0.0)), hom_two_photon(Gamma(g))),
                    std::cos(g) * std::cos(g), kTol);
    }
}

TEST(Fidelity, PhaseNoiseEnsemble) {
    const FockState ref = phase_noise_member(0.0);
    for (double g : {0.0, 0.5, 1.0, kHalfPi}) {
        EXPECT_NEAR(fidelity(ref, single_phase_noise(Gamma(g))), (1.0 + std::cos(g)) / 2.0, kTol);
    }
}

TEST(Fidelity, RejectsUnnormalizedReference) {
    const FockState half(2, {{{1, 0}, 0.5}});
    EXPECT_THROW(fidelity(half, basis_ket({1, 0})), InvalidParameter);
}

TEST(StateEnsemble, ValidatesWeightsAndMembers) {
    const FockState a = basis_ket({1, 0});
    EXPECT_THROW(StateEnsemble({{0.5, a}, {0.4, a}}), InvalidParameter);
    EXPECT_THROW(StateEnsemble({{1.0, FockState(2, {{{1, 0}, 2.0}})}}), InvalidParameter);
    EXPECT_THROW(StateEnsemble({{0.5, a}, {0.5, basis_ket({1, 0, 0})}}), DimensionMismatch);
    EXPECT_THROW(StateEnsemble({}), InvalidParameter);
}

TEST(FockState, PrunesTinyAmplitudes) {
    const FockState s(2, {{{1, 0}, 1.0}, {{0, 1}, 1e-17}});
    EXPECT_EQ(s.size(), 1u);
    const FockState kept(2, {{{1, 0}, 1.0}, {{0, 1}, 1e-17}}, EngineOptions{.prune_threshold = 0.0});
    EXPECT_EQ(kept.size(), 2u);
}

TEST(FockState, IteratesLexicographically) {
    const FockState s(3, {{{0, 0, 1}, 1.0}, {{1, 0, 0}, 1.0}, {{0, 1, 0}, 1.0}});
    std::vector<OccupationVector> keys;
    for (const auto& [occ, amp] : s.terms()) keys.push_back(occ);
    EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
    EXPECT_EQ(keys.front(), (OccupationVector{0, 0, 1}));
}

TEST(AllOccupations, CountsMatchStarsAndBars) {
    EXPECT_EQ(all_occupations(4, 4).size(), 35u);
    EXPECT_EQ(all_occupations(2, 0).size(), 1u);
    for (const auto& occ : all_occupations(3, 2)) EXPECT_EQ(occ.total(), 2);
}

// Properties on random states.

TEST(FockProperties, CauchySchwarz) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const FockState a = 1.7 * oracle::random_state(3, 3, rng);
        const FockState b = oracle::random_state(3, 3, rng);
        EXPECT_LE(std::norm(inner_product(a, b)), a.norm_squared() * b.norm_squared() + 1e-12);
        EXPECT_GE(inner_product(a, a).real(), 0.0);
        EXPECT_NEAR(inner_product(a, a).imag(), 0.0, 1e-15);
    }
}

TEST(FockProperties, TensorIsAssociative) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const FockState a = oracle::random_state(2, 2, rng);
        const FockState b = oracle::random_state(1, 2, rng);
        const FockState c = oracle::random_state(2, 2, rng);
        const FockState left = tensor(tensor(a, b), c);
        const FockState right = tensor(a, tensor(b, c));
        ASSERT_EQ(left.mode_count(), right.mode_count());
        for (const auto& [occ, amp] : left.terms()) EXPECT_LT(std::abs(amp - right.amplitude(occ)), 1e-14);
        for (const auto& [occ, amp] : right.terms()) EXPECT_LT(std::abs(amp - left.amplitude(occ)), 1e-14);
    }
}

TEST(FockProperties, FidelitySelfAndSymmetry) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const FockState a = oracle::random_state(4, 2, rng);
        const FockState b = oracle::random_state(4, 2, rng);
        EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-14);
        EXPECT_LE(fidelity(a, b), 1.0 + 1e-12);
    }
}

}  // namespace
}  // namespace distinguish
