// Copyright 2026 The hyperepp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "hyperepp/cavity.hpp"

namespace hyperepp {
namespace {

// Independent evaluation of the input-output relation in subtractive form:
// r = 1 - kappa (i d0 + gamma/2) / [(i d0 + gamma/2)(i dc + kappa/2) + g^2].
cplx oracle_reflection(double g, double kappa, double gamma, double dc, double d0) {
    const cplx i{0.0, 1.0};
    const cplx nv = i * d0 + gamma / 2.0;
    return 1.0 - kappa * nv / (nv * (i * dc + kappa / 2.0) + g * g);
}

TEST(Cavity, BarclayPresetGivesQuotedReflection) {
    const CavityParams p = barclay_preset();
    EXPECT_TRUE(p.resonant());
    const ReflectionPair refl = reflection_pair(p);
    EXPECT_NEAR(refl.r.real(), 0.94, 0.01);
    EXPECT_EQ(refl.r.imag(), 0.0);
    EXPECT_EQ(refl.r0, cplx(-1.0, 0.0));
    // 4g^2 / (kappa gamma) with the 2pi factors cancelling
    const double c = 4.0 * 0.09 / (26.0 * 0.0004);
    EXPECT_NEAR(refl.r.real(), (c - 1.0) / (c + 1.0), 1e-14);
    EXPECT_NEAR(refl.r.real(), 0.9438444924, 1e-9);
}

TEST(Cavity, ResonantFastPathAgreesWithGeneralFormula) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int k = 0; k < 200; ++k) {
        CavityParams p;
        p.g = u(rng);
        p.kappa = u(rng);
        p.gamma = u(rng);
        const ReflectionPair refl = reflection_pair(p);
        EXPECT_LT(std::abs(refl.r - oracle_reflection(p.g, p.kappa, p.gamma, 0.0, 0.0)), 1e-12);
        EXPECT_LT(std::abs(refl.r0 - oracle_reflection(0.0, p.kappa, p.gamma, 0.0, 0.0)), 1e-12);
    }
}

TEST(Cavity, DetunedCoefficientsMatchOracle) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    std::uniform_real_distribution<double> det(-5.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        CavityParams p;
        p.g = u(rng);
        p.kappa = u(rng);
        p.gamma = u(rng);
        p.omega_c = det(rng);
        p.omega_0 = det(rng);
        const ReflectionPair refl = reflection_pair(p);
        EXPECT_LT(std::abs(refl.r - oracle_reflection(p.g, p.kappa, p.gamma, p.omega_c, p.omega_0)), 1e-12);
        EXPECT_LT(std::abs(refl.r0 - oracle_reflection(0.0, p.kappa, p.gamma, p.omega_c, p.omega_0)), 1e-12);
    }
}

TEST(Cavity, EmptyCavityDetunedByHalfKappaGivesI) {
    CavityParams p;
    p.kappa = 2.0;
    p.omega_c = 1.0;
    EXPECT_LT(std::abs(reflection_empty(p) - cplx(0.0, 1.0)), 1e-15);
}

TEST(Cavity, ReflectionMagnitudeNeverExceedsOne) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    std::uniform_real_distribution<double> det(-20.0, 20.0);
    for (int k = 0; k < 10000; ++k) {
        const CavityParams p = CavityParams::from_ghz_over_2pi(u(rng), u(rng) + 1e-3, u(rng) + 1e-3, det(rng), det(rng));
        const ReflectionPair refl = reflection_pair(p);
        ASSERT_LE(std::abs(refl.r), 1.0 + 1e-12);
        ASSERT_LE(std::abs(refl.r0), 1.0 + 1e-12);
    }
}

TEST(Cavity, ZeroCouplingIsContinuousWithEmptyCavity) {
    CavityParams p = CavityParams::from_ghz_over_2pi(0.0, 3.0, 0.5, 0.4, -0.2);
    EXPECT_LT(std::abs(reflection_coupled(p) - reflection_empty(p)), 1e-15);
    p.g = 1e-9;
    EXPECT_LT(std::abs(reflection_coupled(p) - reflection_empty(p)), 1e-12);
}

TEST(Cavity, RatioFiveGivesNinetyNineOverHundredOne) {
    const ReflectionPair refl = resonant_pair_for_ratio(5.0);
    EXPECT_NEAR(refl.r.real(), 99.0 / 101.0, 1e-15);
    EXPECT_EQ(refl.r0, cplx(-1.0, 0.0));
    EXPECT_NEAR(resonant_pair_for_ratio(0.5).r.real(), 0.0, 1e-15);
}

TEST(Cavity, UnitConversionAndRatio) {
    const CavityParams p = CavityParams::from_ghz_over_2pi(0.3, 26.0, 0.0004);
    EXPECT_NEAR(p.g, 2.0 * std::numbers::pi * 0.3, 1e-15);
    EXPECT_NEAR(p.cooperativity_ratio(), 0.3 / std::sqrt(26.0 * 0.0004), 1e-12);
}

TEST(Cavity, RejectsInvalidParameters) {
    EXPECT_THROW(CavityParams::from_ghz_over_2pi(-1.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(CavityParams::from_ghz_over_2pi(1.0, std::numeric_limits<double>::quiet_NaN(), 1.0),
                 std::invalid_argument);
    EXPECT_THROW(CavityParams::resonant_with_ratio(-0.1), std::invalid_argument);
    CavityParams zero;
    zero.kappa = 0.0;
    zero.gamma = 0.0;
    EXPECT_THROW(reflection_pair(zero), std::domain_error);
}

TEST(Cavity, ScatterRule) {
    const ReflectionPair refl{{0.9, 0.1}, {-0.8, 0.2}};
    using enum Polarization;
    EXPECT_EQ(scatter(R, Spin::Plus, InteractionMode::Ideal, refl), cplx(1.0, 0.0));
    EXPECT_EQ(scatter(R, Spin::Minus, InteractionMode::Ideal, refl), cplx(-1.0, 0.0));
    EXPECT_EQ(scatter(L, Spin::Minus, InteractionMode::Ideal, refl), cplx(1.0, 0.0));
    EXPECT_EQ(scatter(L, Spin::Plus, InteractionMode::Ideal, refl), cplx(-1.0, 0.0));
    EXPECT_EQ(scatter(R, Spin::Plus, InteractionMode::Realistic, refl), refl.r);
    EXPECT_EQ(scatter(L, Spin::Plus, InteractionMode::Realistic, refl), refl.r0);
    EXPECT_EQ(scatter(L, Spin::Minus, InteractionMode::Realistic, refl), refl.r);
}

TEST(Cavity, ModeNames) {
    EXPECT_EQ(parse_mode("ideal"), InteractionMode::Ideal);
    EXPECT_EQ(parse_mode(to_string(InteractionMode::Realistic)), InteractionMode::Realistic);
    EXPECT_THROW(parse_mode("perfect"), std::invalid_argument);
}

} // namespace
} // namespace hyperepp
