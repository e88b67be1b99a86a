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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hyperepp/protocol.hpp"

namespace hyperepp {
namespace {

double same(double f) { return f * f + (1 - f) * (1 - f); }
double diff(double f) { return 2 * f * (1 - f); }

// Case probability as a product over DOFs of same/different flags.
double oracle_case(int id, const std::array<double, 3>& f) {
    static const std::array<std::array<bool, 3>, 8> differs{{{false, false, false},
                                                             {true, true, true},
                                                             {true, false, false},
                                                             {false, true, false},
                                                             {false, false, true},
                                                             {true, true, false},
                                                             {true, false, true},
                                                             {false, true, true}}};
    double p = 1.0;
    for (std::size_t d = 0; d < 3; ++d) p *= differs[static_cast<std::size_t>(id - 1)][d] ? diff(f[d]) : same(f[d]);
    return p;
}

HyperBellSpec spec_of(const char* pfs) {
    HyperBellSpec s;
    for (std::size_t d = 0; d < 3; ++d) {
        s.set(kSixQubitDofs[d], pfs[d] == 'f' ? BellLabel::phi_plus() : BellLabel::psi_plus());
    }
    return s;
}

TEST(Protocol, ClassifyCoversAllPatterns) {
    const auto E = Parity::Even;
    const auto O = Parity::Odd;
    EXPECT_EQ(classify({E, E, E}, {E, E, E}).id(), 1);
    EXPECT_EQ(classify({O, O, O}, {O, O, O}).id(), 1);
    EXPECT_EQ(classify({E, E, E}, {O, O, O}).id(), 2);
    EXPECT_EQ(classify({O, E, E}, {E, E, E}).id(), 3);
    EXPECT_EQ(classify({E, O, E}, {E, E, E}).id(), 4);
    EXPECT_EQ(classify({E, E, O}, {E, E, E}).id(), 5);
    EXPECT_EQ(classify({O, O, E}, {E, E, E}).id(), 6);
    EXPECT_EQ(classify({O, E, O}, {E, E, E}).id(), 7);
    EXPECT_EQ(classify({E, O, O}, {E, E, E}).id(), 8);
    std::set<unsigned> patterns;
    for (int k = 1; k <= 8; ++k) patterns.insert(CaseId(k).pattern());
    EXPECT_EQ(patterns.size(), 8U);
    EXPECT_THROW(CaseId(9), std::invalid_argument);
}

TEST(Protocol, FidelityIterationReferenceValues) {
    EXPECT_NEAR(purify_map(0.8), 0.64 / 0.68, 1e-15);
    const FidelityIterate one = iterate_fidelity(0.8, 0.8, 0.8, 1);
    EXPECT_NEAR(one.per_dof[0], 0.9411764705882353, 1e-15);
    EXPECT_NEAR(one.product, 0.833706492977814, 1e-14);
    EXPECT_NEAR(iterate_fidelity(0.8, 0.8, 0.8, 2).product, 0.9883722101613865, 1e-14);
    EXPECT_NEAR(iterate_fidelity(0.8, 0.8, 0.8, 3).product, 0.9999542250297608, 1e-14);
    EXPECT_THROW(iterate_fidelity(0.8, 0.8, -0.1, 1), std::invalid_argument);
}

TEST(Protocol, PurificationImprovesAboveOneHalf) {
    for (int i = 1; i < 100; ++i) {
        const double f = 0.5 + 0.5 * i / 100.0;
        EXPECT_GT(purify_map(f), f);
    }
    EXPECT_DOUBLE_EQ(purify_map(0.5), 0.5);
    EXPECT_DOUBLE_EQ(purify_map(1.0), 1.0);
}

TEST(Protocol, YieldsAtPointEight) {
    EXPECT_NEAR(efficiency_y1(0.8, 0.8, 0.8), 0.314432, 1e-15);
    EXPECT_NEAR(efficiency_y2(0.8, 0.8, 0.8), 0.523328, 1e-15);
    EXPECT_NEAR(efficiency_y2(1.0, 1.0, 1.0), 1.0, 1e-15);
}

TEST(Protocol, CaseProbabilitiesFormADistribution) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const std::array<double, 3> f{u(rng), u(rng), u(rng)};
        double total = 0.0;
        for (int c = 1; c <= 8; ++c) {
            const double p = case_probability(CaseId(c), f[0], f[1], f[2]);
            EXPECT_NEAR(p, oracle_case(c, f), 1e-15);
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_GE(efficiency_y2(f[0], f[1], f[2]), efficiency_y1(f[0], f[1], f[2]));
    }
}

TEST(Protocol, Step1IdealMatchesProducts) {
    for (const std::array<double, 3> f : {std::array{0.8, 0.8, 0.8}, std::array{0.95, 0.7, 0.6}, std::array{0.3, 0.55, 0.99}}) {
        const MixedEnsemble e = canonical_ensemble(f[0], f[1], f[2]);
        const Step1Result s = step1(e, e, InteractionMode::Ideal, ReflectionPair{});
        EXPECT_NEAR(s.survival(), 1.0, 1e-12);
        for (int c = 1; c <= 8; ++c) {
            EXPECT_NEAR(s.case_mass(CaseId(c)), oracle_case(c, f), 1e-12) << c;
            EXPECT_NEAR(s.case_probability(CaseId(c)), oracle_case(c, f), 1e-12) << c;
        }
        const auto post = s.posterior(CaseId(1));
        ASSERT_TRUE(post.has_value());
        for (std::size_t d = 0; d < 3; ++d) {
            EXPECT_NEAR(post->dof_fidelity(kSixQubitDofs[d]), f[d] * f[d] / same(f[d]), 1e-12);
        }
        EXPECT_TRUE(post->is_canonical(1e-10));
    }
}

TEST(Protocol, Step1TableEntriesMatchDerivedTerms) {
    const std::array<double, 3> f{0.9, 0.75, 0.6};
    const MixedEnsemble e = canonical_ensemble(f[0], f[1], f[2]);
    const Step1Result s = step1(e, e, InteractionMode::Ideal, ReflectionPair{});
    for (int c = 1; c <= 8; ++c) {
        for (std::size_t d = 0; d < 3; ++d) {
            const bool same_dof = CaseId(c).same(kSixQubitDofs[d]);
            const double phi = s.table_entry(CaseId(c), kSixQubitDofs[d], BellLabel::phi_plus());
            const double psi = s.table_entry(CaseId(c), kSixQubitDofs[d], BellLabel::psi_plus());
            EXPECT_NEAR(phi, same_dof ? f[d] * f[d] : f[d] * (1 - f[d]), 1e-12);
            EXPECT_NEAR(psi, same_dof ? (1 - f[d]) * (1 - f[d]) : f[d] * (1 - f[d]), 1e-12);
        }
    }
}

TEST(Protocol, Step1RejectsNonProductEnsembles) {
    std::array<double, 64> w{};
    w[0] = 0.5;
    w[63] = 0.5;
    const MixedEnsemble e = ensemble_from_weights(w);
    EXPECT_THROW(step1(e, e, InteractionMode::Ideal, ReflectionPair{}), std::invalid_argument);
}

TEST(Protocol, Step2Plans) {
    EXPECT_THROW(step2_plan(CaseId(1)), std::domain_error);
    EXPECT_THROW(step2_plan(CaseId(2)), std::domain_error);
    EXPECT_EQ(step2_plan(CaseId(3)).describe(), "PP");
    EXPECT_EQ(step2_plan(CaseId(6)).describe(), "PP,PF,PP,PF");
    EXPECT_EQ(step2_plan(CaseId(8)).describe(), "PF,PP,PF,PS,PP,PS");
    for (int c = 3; c <= 8; ++c) {
        const Step2Plan plan = step2_plan(CaseId(c));
        EXPECT_EQ(plan.partner_case.id(), 11 - c);
        // AB takes exactly the DOFs in which its own pair differed
        const auto taken = step2_taken_from_partner(plan);
        for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(taken[d], !CaseId(c).same(kSixQubitDofs[d])) << c;
    }
}

StateVector step2_ideal_final(const Step2Plan& plan, const StateVector& in) {
    const Step2Result r = step2_execute(plan, in, InteractionMode::Ideal, ReflectionPair{});
    EXPECT_NEAR(r.survival, 1.0, 1e-12);
    EXPECT_FALSE(r.leaves.empty());
    for (const auto& leaf : r.leaves) EXPECT_LT(max_abs_diff(leaf.state, r.leaves.front().state), 1e-12);
    return r.leaves.front().state;
}

TEST(Protocol, Step2FinalStatesForEveryPairing) {
    const StateVector in = step2_input(spec_of("sff"), spec_of("fss"));
    const std::array<std::pair<const char*, const char*>, 6> expect{
        {{"fff", "sss"}, {"ssf", "ffs"}, {"sfs", "fsf"}, {"fsf", "sfs"}, {"ffs", "ssf"}, {"sss", "fff"}}};
    for (int c = 3; c <= 8; ++c) {
        const auto [ab, a2b2] = expect[static_cast<std::size_t>(c - 3)];
        const StateVector out = step2_ideal_final(step2_plan(CaseId(c)), in);
        EXPECT_LT(max_abs_diff(out, step2_input(spec_of(ab), spec_of(a2b2))), 1e-12) << "case " << c;
        const auto w = step2_bell_weights(out);
        EXPECT_NEAR(w[static_cast<std::size_t>(spec_of(ab).index() + 64 * spec_of(a2b2).index())], 1.0, 1e-12);
    }
}

TEST(Protocol, Step2CaseSixIntermediateStates) {
    const StateVector in = step2_input(spec_of("sff"), spec_of("fss"));
    using enum SwapKind;
    const std::vector<std::pair<std::vector<SwapKind>, std::pair<const char*, const char*>>> steps{
        {{PP}, {"fff", "sss"}},
        {{PP, PF}, {"fff", "sss"}},
        {{PP, PF, PP}, {"sff", "fss"}},
        {{PP, PF, PP, PF}, {"fsf", "sfs"}}};
    for (const auto& [seq, want] : steps) {
        const Step2Plan plan{CaseId(6), CaseId(5), seq};
        const StateVector out = step2_ideal_final(plan, in);
        EXPECT_LT(max_abs_diff(out, step2_input(spec_of(want.first), spec_of(want.second))), 1e-12) << plan.describe();
    }
}

TEST(Protocol, Step2RealisticLosesMass) {
    const StateVector in = step2_input(spec_of("sff"), spec_of("fss"));
    const Step2Result r = step2_execute(step2_plan(CaseId(3)), in, InteractionMode::Realistic, resonant_pair_for_ratio(2.0));
    EXPECT_LT(r.survival, 1.0);
    EXPECT_GT(r.survival, 0.5);
    double total = 0.0;
    for (const auto& leaf : r.leaves) {
        total += leaf.mass;
        EXPECT_EQ(leaf.nv_results.size(), 2U);
    }
    EXPECT_NEAR(total, r.survival, 1e-12);
}

TEST(Protocol, RunEppIdealFollowsIteration) {
    for (const std::array<double, 3> f : {std::array{0.8, 0.8, 0.8}, std::array{0.9, 0.7, 0.65}}) {
        const EppReport rep = run_epp(f[0], f[1], f[2], 3, InteractionMode::Ideal, ReflectionPair{});
        ASSERT_EQ(rep.rounds.size(), 3U);
        for (int n = 1; n <= 3; ++n) {
            const FidelityIterate it = iterate_fidelity(f[0], f[1], f[2], n);
            const RoundRecord& r = rep.rounds[static_cast<std::size_t>(n - 1)];
            EXPECT_NEAR(r.f_out_product, it.product, 1e-12);
            for (std::size_t d = 0; d < 3; ++d) EXPECT_NEAR(r.f_out[d], it.per_dof[d], 1e-12);
            EXPECT_GT(r.f_out_product, r.f_in[0] * r.f_in[1] * r.f_in[2]);
            EXPECT_NEAR(r.y1, efficiency_y1(r.f_in[0], r.f_in[1], r.f_in[2]), 1e-12);
            EXPECT_NEAR(r.y2, efficiency_y2(r.f_in[0], r.f_in[1], r.f_in[2]), 1e-12);
            EXPECT_NEAR(r.kept + r.discarded + r.step2, r.survival, 1e-12);
        }
    }
    EXPECT_THROW(run_epp(0.8, 0.8, 0.8, 0, InteractionMode::Ideal, ReflectionPair{}), std::invalid_argument);
}

TEST(Protocol, RunEppRealisticStaysCloseToIdeal) {
    const ReflectionPair refl = resonant_pair_for_ratio(2.942);
    const EppReport rep = run_epp(0.8, 0.8, 0.8, 1, InteractionMode::Realistic, refl);
    const RoundRecord& r = rep.last();
    EXPECT_LT(r.survival, 1.0);
    EXPECT_GT(r.survival, 0.6);
    double total = 0.0;
    for (double p : r.case_probabilities) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(r.f_out_product, 0.833706492977814, 0.01);
    EXPECT_LT(r.y1, 0.314432);
}

TEST(Protocol, FiniteInventoryApproachesExpectedYield) {
    std::array<double, 8> p{};
    for (int c = 1; c <= 8; ++c) p[static_cast<std::size_t>(c - 1)] = case_probability(CaseId(c), 0.8, 0.8, 0.8);
    const InventoryResult a = simulate_inventory(p, 200000, 99);
    const InventoryResult b = simulate_inventory(p, 200000, 99);
    EXPECT_EQ(a.successes, b.successes);
    EXPECT_NEAR(a.yield(), efficiency_y2(0.8, 0.8, 0.8), 0.01);
    std::size_t n = 0;
    for (auto c : a.counts) n += c;
    EXPECT_EQ(n, 200000U);
}

TEST(Protocol, PublishedTableDiscrepancyIsFlagged) {
    const auto flags = table_discrepancies();
    ASSERT_EQ(flags.size(), 1U);
    EXPECT_EQ(flags[0].case_id.id(), 3);
    EXPECT_EQ(flags[0].dof, Dof::S);
    EXPECT_EQ(flags[0].label, 0);
    EXPECT_EQ(flags[0].published, TableTerm::OneMinusFSquared);
    EXPECT_EQ(flags[0].derived, TableTerm::FSquared);
}

TEST(Protocol, DisplayedKetAudit) {
    std::set<std::string> flagged;
    for (const auto& e : audit_displayed_kets()) {
        if (!e.consistent) {
            flagged.insert(e.name);
            EXPECT_FALSE(e.reason.empty());
        }
    }
    const std::set<std::string> expect{"Phi4^F", "Phi3^S", "Phi4^S", "Phi5^P", "Phi5^S", "Phi7^S"};
    EXPECT_EQ(flagged, expect);
}

} // namespace
} // namespace hyperepp
