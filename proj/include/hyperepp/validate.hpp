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

/**
 * @file
 * Self-checks run by the `validate` subcommand: circuit simulations against
 * the closed forms, step-1 enumeration against the probability products, and
 * an audit of the published probability table and displayed kets.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "circuits.hpp"
#include "protocol.hpp"

namespace hyperepp {

struct CheckResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    [[nodiscard]] bool passed() const { return max_error <= tolerance; }
};

/// g / sqrt(kappa gamma) in {0.5, 1.0, ..., 5.0}.
inline std::vector<double> standard_ratio_grid() {
    std::vector<double> xs;
    for (int i = 1; i <= 10; ++i) xs.push_back(0.5 * i);
    return xs;
}

inline CheckResult check_p_qnd_against_formula(const std::vector<ReflectionPair>& points) {
    CheckResult c{"P-QND circuit vs closed form (64 Bell inputs per point)", 0.0, 1e-9};
    for (const auto& refl : points) {
        const QndPerformance q = qnd_performance(refl);
        for (int i = 0; i < 64; ++i) {
            const HyperBellSpec spec = HyperBellSpec::from_index(i);
            const auto sim = simulate_p_qnd(make_hyper_bell(spec, {Photon::A, Photon::B}), Photon::A, Photon::B, refl);
            const bool odd = p_qnd_formula_index(spec.p.parity) == 2;
            c.max_error = std::max({c.max_error, std::abs(sim.fidelity - (odd ? q.f_p2 : q.f_p1)),
                                    std::abs(sim.efficiency - (odd ? q.eta_p2 : q.eta_p1))});
        }
    }
    return c;
}

inline CheckResult check_s_qnd_against_formula(const std::vector<ReflectionPair>& points) {
    CheckResult c{"S-QND circuit vs closed form (64 Bell inputs per point)", 0.0, 1e-9};
    for (const auto& refl : points) {
        const QndPerformance q = qnd_performance(refl);
        for (int i = 0; i < 64; ++i) {
            const HyperBellSpec spec = HyperBellSpec::from_index(i);
            const auto sim = simulate_s_qnd(make_hyper_bell(spec, {Photon::A, Photon::B}), Photon::A, Photon::B, refl);
            const auto k = static_cast<std::size_t>(s_qnd_formula_index(spec.p.parity, spec.f.parity, spec.s.parity) - 1);
            c.max_error =
                std::max({c.max_error, std::abs(sim.fidelity - q.f_s[k]), std::abs(sim.efficiency - q.eta_s[k])});
        }
    }
    return c;
}

inline CheckResult check_pp_swap_against_formula(const std::vector<ReflectionPair>& points) {
    CheckResult c{"P-P SWAP circuit vs closed form (balanced and general inputs)", 0.0, 1e-9};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (const auto& refl : points) {
        std::vector<SwapAmplitudes> inputs{SwapAmplitudes::balanced()};
        for (int k = 0; k < 4; ++k) {
            const double t1 = angle(rng);
            const double t2 = angle(rng);
            inputs.push_back({std::cos(t1), std::sin(t1), std::cos(t2), std::sin(t2)});
        }
        const SwapPerformance balanced = swap_performance_max_entangled(refl);
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            const auto& a = inputs[k];
            const auto sim = simulate_pp_swap(polarization_product(Photon::A, a.alpha1, a.beta1, Photon::A2, a.alpha2, a.beta2),
                                              Photon::A, Photon::A2, refl);
            const SwapPerformance f = k == 0 ? balanced : swap_performance(refl.r, refl.r0, a);
            c.max_error =
                std::max({c.max_error, std::abs(sim.fidelity - f.f_swap), std::abs(sim.efficiency - f.eta_swap)});
        }
    }
    return c;
}

/// Step-1 enumeration against per-DOF products for `samples` random triples.
inline CheckResult check_step1_tables(int samples, std::uint64_t seed) {
    CheckResult c{"step-1 case and Bell-outcome probabilities vs first-principles products", 0.0, 1e-12};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const ReflectionPair ideal{};
    for (int n = 0; n < samples; ++n) {
        const std::array<double, 3> f{u(rng), u(rng), u(rng)};
        const MixedEnsemble e = canonical_ensemble(f[0], f[1], f[2]);
        const Step1Result s = step1(e, e, InteractionMode::Ideal, ideal);
        for (int k = 1; k <= 8; ++k) {
            const CaseId cid(k);
            c.max_error = std::max(c.max_error, std::abs(s.case_mass(cid) - case_probability(cid, f[0], f[1], f[2])));
            for (std::size_t d = 0; d < 3; ++d) {
                for (int l = 0; l < 2; ++l) {
                    const BellLabel label = l == 0 ? BellLabel::phi_plus() : BellLabel::psi_plus();
                    const double expect = evaluate(derived_table_term(cid, kSixQubitDofs[d], l), f[d]);
                    c.max_error = std::max(c.max_error, std::abs(s.table_entry(cid, kSixQubitDofs[d], label) - expect));
                }
            }
        }
    }
    return c;
}

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<TableDiscrepancy> table_flags;
    std::vector<KetAuditEntry> ket_flags; ///< inconsistent entries only

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
    }
};

inline std::vector<ReflectionPair> standard_reflection_points() {
    std::vector<ReflectionPair> pts;
    for (double x : standard_ratio_grid()) pts.push_back(resonant_pair_for_ratio(x));
    return pts;
}

inline ValidationReport run_validation() {
    ValidationReport r;
    const auto pts = standard_reflection_points();
    r.checks.push_back(check_p_qnd_against_formula(pts));
    r.checks.push_back(check_s_qnd_against_formula(pts));
    r.checks.push_back(check_pp_swap_against_formula(pts));
    r.checks.push_back(check_step1_tables(5, 2024));
    r.table_flags = table_discrepancies();
    for (auto& e : audit_displayed_kets()) {
        if (!e.consistent) r.ket_flags.push_back(std::move(e));
    }
    return r;
}

} // namespace hyperepp
