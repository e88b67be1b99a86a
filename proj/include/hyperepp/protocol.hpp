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
 * Two-step hyperentanglement purification.
 *
 * Step 1 compares the parities of AC and BD in every DOF, classifies the
 * outcome into one of eight cases, and measures C and D after Hadamards.
 * Step 2 pairs complementary cases and moves good DOFs from the partner pair
 * into AB with SWAP gates.
 *
 * Mixed inputs are exact Bell-diagonal ensembles; statistics come from full
 * enumeration over the joint ensemble terms.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "circuits.hpp"
#include "hilbert.hpp"
#include "parallel.hpp"

namespace hyperepp {

// ---------------------------------------------------------------------------
// Cases

/// One of the eight step-1 outcomes. Bit d of pattern() is set when AC and BD
/// had different parity in DOF d (P = bit 0, F = bit 1, S = bit 2).
class CaseId {
  public:
    constexpr CaseId() = default;
    explicit CaseId(int id) : id_(id) {
        if (id < 1 || id > 8) throw std::invalid_argument("CaseId: id outside 1..8");
    }

    [[nodiscard]] constexpr int id() const { return id_; }
    [[nodiscard]] constexpr std::size_t slot() const { return static_cast<std::size_t>(id_ - 1); }

    [[nodiscard]] unsigned pattern() const { return kPatterns[slot()]; }
    [[nodiscard]] bool same(Dof d) const { return !((pattern() >> static_cast<unsigned>(d)) & 1U); }

    static CaseId from_pattern(unsigned pattern) {
        for (int i = 0; i < 8; ++i) {
            if (kPatterns[static_cast<std::size_t>(i)] == (pattern & 7U)) return CaseId(i + 1);
        }
        throw std::logic_error("CaseId: unreachable pattern");
    }

    friend constexpr bool operator==(CaseId a, CaseId b) { return a.id_ == b.id_; }

    [[nodiscard]] std::string name() const { return "case " + std::to_string(id_); }

  private:
    // same/same/same, diff/diff/diff, then one or two DOFs differing
    static constexpr std::array<unsigned, 8> kPatterns{0b000, 0b111, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110};
    int id_ = 1;
};

inline CaseId classify(const std::array<Parity, 3>& ac, const std::array<Parity, 3>& bd) {
    unsigned pattern = 0;
    for (unsigned d = 0; d < 3; ++d) {
        if (ac[d] != bd[d]) pattern |= 1U << d;
    }
    return CaseId::from_pattern(pattern);
}

// ---------------------------------------------------------------------------
// Closed forms

/// F^2 / (F^2 + (1 - F)^2); fixed points 0, 1/2 and 1.
inline double purify_map(double f) {
    const double g = 1.0 - f;
    return f * f / (f * f + g * g);
}

struct FidelityIterate {
    std::array<double, 3> per_dof{};
    double product = 0.0;
};

inline void check_fidelities(double f1, double f2, double f3) {
    for (double f : {f1, f2, f3}) {
        if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fidelity outside [0, 1]");
    }
}

inline FidelityIterate iterate_fidelity(double f1, double f2, double f3, int rounds) {
    check_fidelities(f1, f2, f3);
    if (rounds < 0) throw std::invalid_argument("iterate_fidelity: negative round count");
    FidelityIterate out{{f1, f2, f3}, 0.0};
    for (int n = 0; n < rounds; ++n) {
        for (double& f : out.per_dof) f = purify_map(f);
    }
    out.product = out.per_dof[0] * out.per_dof[1] * out.per_dof[2];
    return out;
}

/// Probability that AC and BD agree (same) or disagree (diff) in one DOF.
inline double same_probability(double f) { return f * f + (1.0 - f) * (1.0 - f); }
inline double diff_probability(double f) { return 2.0 * f * (1.0 - f); }

/// Closed-form probability of a step-1 case.
inline double case_probability(CaseId c, double f1, double f2, double f3) {
    const std::array<double, 3> f{f1, f2, f3};
    double p = 1.0;
    for (std::size_t d = 0; d < 3; ++d) {
        p *= c.same(static_cast<Dof>(d)) ? same_probability(f[d]) : diff_probability(f[d]);
    }
    return p;
}

inline double efficiency_y1(double f1, double f2, double f3) {
    check_fidelities(f1, f2, f3);
    return same_probability(f1) * same_probability(f2) * same_probability(f3);
}

/// Y1 plus one min{} term per complementary pairing (3,8), (4,7), (5,6).
inline double efficiency_y2(double f1, double f2, double f3) {
    check_fidelities(f1, f2, f3);
    const double s1 = same_probability(f1);
    const double s2 = same_probability(f2);
    const double s3 = same_probability(f3);
    const double d1 = diff_probability(f1);
    const double d2 = diff_probability(f2);
    const double d3 = diff_probability(f3);
    return s1 * s2 * s3 + std::min(d1 * s2 * s3, s1 * d2 * d3) + std::min(s1 * d2 * s3, d1 * s2 * d3) +
           std::min(s1 * s2 * d3, d1 * d2 * s3);
}

// ---------------------------------------------------------------------------
// Step 1

struct Step1Result {
    /// mass[case slot][AB spec index]: absolute probability mass of AB ending
    /// in that Bell state after the case was flagged.
    std::array<std::array<double, 64>, 8> mass{};
    double input_mass = 1.0;

    [[nodiscard]] double case_mass(CaseId c) const {
        double s = 0.0;
        for (double m : mass[c.slot()]) s += m;
        return s;
    }

    /// Mass that survived both QNDs of Alice and Bob.
    [[nodiscard]] double survival() const {
        double s = 0.0;
        for (int k = 1; k <= 8; ++k) s += case_mass(CaseId(k));
        return s / input_mass;
    }

    /// Conditional on survival; sums to 1 over the eight cases.
    [[nodiscard]] double case_probability(CaseId c) const {
        const double total = survival() * input_mass;
        if (total <= 0.0) throw std::domain_error("Step1Result: nothing survived");
        return case_mass(c) / total;
    }

    [[nodiscard]] static bool discarded(CaseId c) { return c.id() == 2; }

    /// Bell-diagonal posterior of AB for the case; empty when the case never occurs.
    [[nodiscard]] std::optional<MixedEnsemble> posterior(CaseId c) const {
        if (case_mass(c) <= 0.0) return std::nullopt;
        return ensemble_from_weights(mass[c.slot()]);
    }

    /// Mass of outcomes that match case c's same/different flag in DOF d and
    /// leave AB in `label` in that DOF (marginal over the other DOFs).
    [[nodiscard]] double table_entry(CaseId c, Dof d, BellLabel label) const {
        const unsigned bit = 1U << static_cast<unsigned>(d);
        double s = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const CaseId other(k);
            if ((other.pattern() & bit) != (c.pattern() & bit)) continue;
            for (int i = 0; i < 64; ++i) {
                if (HyperBellSpec::from_index(i).at(d) == label) s += mass[other.slot()][static_cast<std::size_t>(i)];
            }
        }
        return s / input_mass;
    }
};

namespace detail {

/// Alice runs P-QND then S-QND on (A, C); Bob does the same on (B, D).
/// Returns (pattern, state) leaves with the NV spins removed.
struct QndLeaf {
    std::array<Parity, 3> ac{};
    std::array<Parity, 3> bd{};
    StateVector state;
};

constexpr double kPruneMass = 1e-24;

inline std::vector<QndLeaf> run_parity_checks(const StateVector& abcd, InteractionMode mode, const ReflectionPair& refl) {
    struct Partial {
        std::array<Parity, 3> ac{};
        std::array<Parity, 3> bd{};
        StateVector state;
    };
    std::vector<Partial> frontier{{{}, {}, abcd}};
    for (auto [p1, p2, alice] : {std::tuple{Photon::A, Photon::C, true}, std::tuple{Photon::B, Photon::D, false}}) {
        std::vector<Partial> next;
        for (const auto& part : frontier) {
            const QndResult pq = p_qnd(part.state, p1, p2, 0, mode, refl);
            for (const auto& pb : pq.branches) {
                if (pb.state.norm2() <= kPruneMass) continue;
                const QndResult sq = s_qnd(pb.state, p1, p2, 1, 2, mode, refl);
                for (const auto& sb : sq.branches) {
                    if (sb.state.norm2() <= kPruneMass) continue;
                    Partial child{part.ac, part.bd, sb.state};
                    auto& par = alice ? child.ac : child.bd;
                    par = {*pb.outcome.p_parity, *sb.outcome.f_parity, *sb.outcome.s_parity};
                    next.push_back(std::move(child));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<QndLeaf> out;
    for (auto& p : frontier) out.push_back({p.ac, p.bd, std::move(p.state)});
    return out;
}

/// Bit flips to even parity, Hadamards on C and D, detection, sigma_z
/// feed-forward on B. Adds the AB Bell weights of every detection outcome.
inline void measure_cd(const QndLeaf& leaf, std::array<double, 64>& into) {
    StateVector s = leaf.state;
    for (std::size_t d = 0; d < 3; ++d) {
        const Dof dof = kSixQubitDofs[d];
        if (leaf.ac[d] == Parity::Odd) s = apply_gate(std::move(s), sigma_x(Photon::C, dof));
        if (leaf.bd[d] == Parity::Odd) s = apply_gate(std::move(s), sigma_x(Photon::D, dof));
    }
    for (Photon ph : {Photon::C, Photon::D}) {
        for (Dof dof : kSixQubitDofs) s = apply_gate(std::move(s), hadamard(ph, dof));
    }
    std::vector<QubitLabel> detected;
    for (Photon ph : {Photon::C, Photon::D}) {
        for (Dof dof : kSixQubitDofs) detected.push_back(QubitLabel::photon_dof(ph, dof));
    }
    for (std::size_t bits = 0; bits < 64; ++bits) {
        StateVector ab = s.project(detected, bits);
        if (ab.norm2() <= kPruneMass) continue;
        for (std::size_t d = 0; d < 3; ++d) {
            const bool c = (bits >> d) & 1U;
            const bool dd = (bits >> (d + 3)) & 1U;
            if (c != dd) ab = apply_gate(std::move(ab), sigma_z(Photon::B, kSixQubitDofs[d]));
        }
        const auto coeff = bell_coefficients(ab, {Photon::A, Photon::B});
        for (std::size_t i = 0; i < 64; ++i) into[i] += std::norm(coeff[i]);
    }
}

} // namespace detail

namespace detail {

using CaseMass = std::array<std::array<double, 64>, 8>;

/// Step-1 outcome masses for unit-weight |ab> (x) |cd>.
inline CaseMass step1_term(const HyperBellSpec& ab, const HyperBellSpec& cd, InteractionMode mode,
                           const ReflectionPair& refl) {
    const StateVector abcd = make_hyper_bell(ab, {Photon::A, Photon::B})
                                 .tensor(make_hyper_bell(cd, {Photon::C, Photon::D}))
                                 .canonical();
    CaseMass acc{};
    for (const auto& leaf : run_parity_checks(abcd, mode, refl)) {
        measure_cd(leaf, acc[classify(leaf.ac, leaf.bd).slot()]);
    }
    return acc;
}

/// Memoized step1_term. Term results do not depend on ensemble weights, so
/// repeated rounds and sweeps reuse them.
inline const CaseMass& cached_step1_term(const HyperBellSpec& ab, const HyperBellSpec& cd, InteractionMode mode,
                                         const ReflectionPair& refl) {
    using Key = std::tuple<int, double, double, double, double, int, int>;
    static std::mutex mu;
    static std::map<Key, CaseMass> cache;
    const Key key{static_cast<int>(mode), refl.r.real(), refl.r.imag(), refl.r0.real(), refl.r0.imag(), ab.index(),
                  cd.index()};
    {
        const std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    CaseMass m = step1_term(ab, cd, mode, refl);
    const std::lock_guard lock(mu);
    return cache.emplace(key, m).first->second;
}

} // namespace detail

/// Exact step-1 enumeration over all pairs of ensemble terms.
inline Step1Result step1(const MixedEnsemble& ab, const MixedEnsemble& cd, InteractionMode mode,
                         const ReflectionPair& refl) {
    for (const MixedEnsemble* e : {&ab, &cd}) {
        e->validate();
        if (!e->is_canonical()) throw std::invalid_argument("step1: ensemble is not of bit-flip product form");
    }
    const std::size_t n_ab = ab.terms.size();
    const std::size_t n = n_ab * cd.terms.size();
    std::vector<const detail::CaseMass*> per_term(n, nullptr);
    parallel_for(n, [&](std::size_t t) {
        const auto& tab = ab.terms[t % n_ab];
        const auto& tcd = cd.terms[t / n_ab];
        if (tab.weight * tcd.weight <= 0.0) return;
        per_term[t] = &detail::cached_step1_term(tab.spec, tcd.spec, mode, refl);
    });
    Step1Result out;
    for (std::size_t t = 0; t < n; ++t) {
        if (!per_term[t]) continue;
        const double w = ab.terms[t % n_ab].weight * cd.terms[t / n_ab].weight;
        for (std::size_t k = 0; k < 8; ++k) {
            for (std::size_t i = 0; i < 64; ++i) out.mass[k][i] += w * (*per_term[t])[k][i];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Step 2

enum class SwapKind { PP, PF, PS, PT };

inline std::string to_string(SwapKind k) {
    static constexpr std::array<const char*, 4> names{"PP", "PF", "PS", "PT"};
    return names[static_cast<std::size_t>(k)];
}

struct Step2Plan {
    CaseId own_case;
    CaseId partner_case;
    std::vector<SwapKind> sequence; ///< PP acts on (A, A') and (B, B'); the rest on A, B, A', B'

    [[nodiscard]] std::string describe() const {
        std::string s;
        for (SwapKind k : sequence) s += (s.empty() ? "" : ",") + to_string(k);
        return s;
    }
};

inline Step2Plan step2_plan(CaseId c) {
    using enum SwapKind;
    switch (c.id()) {
    case 1: throw std::domain_error("step2_plan: case 1 needs no second step");
    case 2: throw std::domain_error("step2_plan: case 2 is discarded");
    case 3: return {c, CaseId(8), {PP}};
    case 4: return {c, CaseId(7), {PF, PP, PF}};
    case 5: return {c, CaseId(6), {PS, PP, PS}};
    case 6: return {c, CaseId(5), {PP, PF, PP, PF}};
    case 7: return {c, CaseId(4), {PP, PS, PP, PS}};
    case 8: return {c, CaseId(3), {PF, PP, PF, PS, PP, PS}};
    default: break;
    }
    throw std::invalid_argument("step2_plan: bad case");
}

struct Step2Leaf {
    double mass = 0.0; ///< absolute probability of this NV-outcome history
    std::vector<int> nv_results;
    StateVector state; ///< A, B, A', B'; normalized
};

struct Step2Result {
    std::vector<Step2Leaf> leaves;
    double survival = 0.0;
};

inline constexpr std::array<Photon, 4> kStep2Photons{Photon::A, Photon::B, Photon::A2, Photon::B2};

/// Runs the plan on a joint state of A, B, A', B'. PP swaps use NV unit 0 for
/// (A, A') and unit 1 for (B, B'); every NV outcome branch is kept.
inline Step2Result step2_execute(const Step2Plan& plan, const StateVector& abab, InteractionMode mode,
                                 const ReflectionPair& refl) {
    for (Photon ph : kStep2Photons) {
        if (!abab.contains(QubitLabel::photon_dof(ph, Dof::P))) {
            throw std::invalid_argument("step2_execute: register lacks photon " + to_string(ph));
        }
    }
    const double n0 = abab.norm2();
    if (n0 <= 0.0) throw std::domain_error("step2_execute: zero-norm input");
    struct Partial {
        std::vector<int> nv;
        StateVector state; // unnormalized
    };
    std::vector<Partial> frontier{{{}, abab.scaled(1.0 / std::sqrt(n0))}};
    for (SwapKind k : plan.sequence) {
        std::vector<Partial> next;
        for (auto& part : frontier) {
            if (k != SwapKind::PP) {
                const Dof other = k == SwapKind::PF ? Dof::F : (k == SwapKind::PS ? Dof::S : Dof::T);
                StateVector s = std::move(part.state);
                for (Photon ph : kStep2Photons) s = dof_swap(std::move(s), ph, other);
                next.push_back({std::move(part.nv), std::move(s)});
                continue;
            }
            const SwapResult first = pp_swap(part.state, Photon::A, Photon::A2, 0, mode, refl);
            for (const auto& b1 : first.branches) {
                if (b1.state.norm2() <= detail::kPruneMass) continue;
                const SwapResult second = pp_swap(b1.state, Photon::B, Photon::B2, 1, mode, refl);
                for (const auto& b2 : second.branches) {
                    if (b2.state.norm2() <= detail::kPruneMass) continue;
                    Partial child{part.nv, b2.state};
                    child.nv.push_back(b1.nv_result);
                    child.nv.push_back(b2.nv_result);
                    next.push_back(std::move(child));
                }
            }
        }
        frontier = std::move(next);
    }
    Step2Result out;
    for (auto& p : frontier) {
        const double m = p.state.norm2();
        out.survival += m;
        out.leaves.push_back({m, std::move(p.nv), p.state.normalized().canonical()});
    }
    return out;
}

inline StateVector step2_input(const HyperBellSpec& ab, const HyperBellSpec& a2b2) {
    return make_hyper_bell(ab, {Photon::A, Photon::B}).tensor(make_hyper_bell(a2b2, {Photon::A2, Photon::B2})).canonical();
}

/// Joint Bell weights of (AB, A'B'); entry i + 64 * j is |<spec_i, spec_j|state>|^2.
inline std::vector<double> step2_bell_weights(const StateVector& abab) {
    const auto amps = bell_basis_amplitudes(abab, {{Photon::A, Photon::B}, {Photon::A2, Photon::B2}});
    std::vector<double> w(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) w[i] = std::norm(amps[i]);
    return w;
}

/// The slot of each DOF after the plan: true where AB ends up holding the
/// partner's original state in that DOF.
inline std::array<bool, 3> step2_taken_from_partner(const Step2Plan& plan) {
    // track which pair's original DOF sits in each (pair, DOF) slot
    std::array<std::array<int, 3>, 2> src{{{0, 1, 2}, {3, 4, 5}}};
    for (SwapKind k : plan.sequence) {
        if (k == SwapKind::PP) {
            std::swap(src[0][0], src[1][0]);
        } else if (k != SwapKind::PT) {
            const std::size_t o = k == SwapKind::PF ? 1 : 2;
            for (auto& pair : src) std::swap(pair[0], pair[o]);
        }
    }
    std::array<bool, 3> out{};
    for (std::size_t d = 0; d < 3; ++d) out[d] = src[0][d] >= 3;
    return out;
}

// ---------------------------------------------------------------------------
// Full rounds

struct RoundRecord {
    int round = 1;
    std::array<double, 3> f_in{};
    std::array<double, 8> case_probabilities{}; ///< conditional on survival
    std::array<double, 8> case_masses{};        ///< absolute
    std::array<double, 3> f_out{};              ///< case-1 posterior per DOF
    double f_out_product = 0.0;                 ///< probability of (phi+, phi+, phi+) in the case-1 posterior
    double y1 = 0.0;
    double y2 = 0.0;
    double survival = 1.0;
    double kept = 0.0;      ///< case 1
    double discarded = 0.0; ///< case 2
    double step2 = 0.0;     ///< cases 3..8
    Step1Result step1;
};

struct EppReport {
    InteractionMode mode = InteractionMode::Ideal;
    std::vector<RoundRecord> rounds;

    [[nodiscard]] const RoundRecord& last() const {
        if (rounds.empty()) throw std::logic_error("EppReport: no rounds");
        return rounds.back();
    }
};

/// Runs `rounds` purification rounds. Each round feeds the per-DOF fidelities
/// of the case-1 posterior into a fresh bit-flip product ensemble.
inline EppReport run_epp(double f1, double f2, double f3, int rounds, InteractionMode mode, const ReflectionPair& refl) {
    check_fidelities(f1, f2, f3);
    if (rounds < 1) throw std::invalid_argument("run_epp: need at least one round");
    EppReport report;
    report.mode = mode;
    std::array<double, 3> f{f1, f2, f3};
    for (int n = 1; n <= rounds; ++n) {
        const MixedEnsemble e = canonical_ensemble(f[0], f[1], f[2]);
        RoundRecord rec;
        rec.round = n;
        rec.f_in = f;
        rec.step1 = step1(e, e, mode, refl);
        const Step1Result& s1 = rec.step1;
        rec.survival = s1.survival();
        for (int k = 1; k <= 8; ++k) {
            rec.case_masses[static_cast<std::size_t>(k - 1)] = s1.case_mass(CaseId(k));
            rec.case_probabilities[static_cast<std::size_t>(k - 1)] = s1.case_probability(CaseId(k));
        }
        const auto& m = rec.case_masses;
        rec.kept = m[0];
        rec.discarded = m[1];
        for (std::size_t k = 2; k < 8; ++k) rec.step2 += m[k];
        rec.y1 = m[0];
        rec.y2 = m[0] + std::min(m[2], m[7]) + std::min(m[3], m[6]) + std::min(m[4], m[5]);
        const auto post = s1.posterior(CaseId(1));
        if (!post) throw std::domain_error("run_epp: case 1 never occurs");
        for (std::size_t d = 0; d < 3; ++d) rec.f_out[d] = post->dof_fidelity(kSixQubitDofs[d]);
        rec.f_out_product = post->fidelity();
        report.rounds.push_back(std::move(rec));
        f = report.rounds.back().f_out;
        for (double& v : f) v = std::clamp(v, 0.0, 1.0);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Finite inventory

struct InventoryResult {
    std::size_t groups = 0;
    std::array<std::size_t, 8> counts{};
    std::size_t successes = 0; ///< case 1 plus matched step-2 pairings
    [[nodiscard]] double yield() const {
        return groups ? static_cast<double>(successes) / static_cast<double>(groups) : 0.0;
    }
};

/// Draws `groups` step-1 outcomes from the given case probabilities with a
/// seeded generator and matches complementary cases greedily.
inline InventoryResult simulate_inventory(const std::array<double, 8>& case_probabilities, std::size_t groups,
                                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> dist(case_probabilities.begin(), case_probabilities.end());
    InventoryResult out;
    out.groups = groups;
    for (std::size_t i = 0; i < groups; ++i) ++out.counts[static_cast<std::size_t>(dist(rng))];
    out.successes = out.counts[0];
    for (auto [a, b] : {std::pair{2, 7}, std::pair{3, 6}, std::pair{4, 5}}) {
        out.successes += std::min(out.counts[static_cast<std::size_t>(a)], out.counts[static_cast<std::size_t>(b)]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Audit of the published probability table and displayed kets

enum class TableTerm { FSquared, OneMinusFSquared, FTimesOneMinusF };

inline std::string to_string(TableTerm t) {
    switch (t) {
    case TableTerm::FSquared: return "F^2";
    case TableTerm::OneMinusFSquared: return "(1-F)^2";
    case TableTerm::FTimesOneMinusF: return "F(1-F)";
    }
    return "?";
}

inline double evaluate(TableTerm t, double f) {
    switch (t) {
    case TableTerm::FSquared: return f * f;
    case TableTerm::OneMinusFSquared: return (1.0 - f) * (1.0 - f);
    case TableTerm::FTimesOneMinusF: return f * (1.0 - f);
    }
    return 0.0;
}

/// Entry for AB in phi+ (label 0) or psi+ (label 1) in DOF d of case c.
inline TableTerm derived_table_term(CaseId c, Dof d, int label) {
    if (!c.same(d)) return TableTerm::FTimesOneMinusF;
    return label == 0 ? TableTerm::FSquared : TableTerm::OneMinusFSquared;
}

/// The table as published: [case][DOF][phi+ / psi+].
inline std::array<std::array<std::array<TableTerm, 2>, 3>, 8> published_table() {
    constexpr auto S = std::array<TableTerm, 2>{TableTerm::FSquared, TableTerm::OneMinusFSquared};
    constexpr auto D = std::array<TableTerm, 2>{TableTerm::FTimesOneMinusF, TableTerm::FTimesOneMinusF};
    constexpr auto GG = std::array<TableTerm, 2>{TableTerm::OneMinusFSquared, TableTerm::OneMinusFSquared};
    return {{
        {S, S, S},
        {D, D, D},
        {D, S, GG},
        {S, D, S},
        {S, S, D},
        {D, D, S},
        {D, S, D},
        {S, D, D},
    }};
}

struct TableDiscrepancy {
    CaseId case_id;
    Dof dof = Dof::P;
    int label = 0; ///< 0 phi+, 1 psi+
    TableTerm published = TableTerm::FSquared;
    TableTerm derived = TableTerm::FSquared;
};

inline std::vector<TableDiscrepancy> table_discrepancies() {
    std::vector<TableDiscrepancy> out;
    const auto table = published_table();
    for (int k = 1; k <= 8; ++k) {
        for (std::size_t d = 0; d < 3; ++d) {
            for (int l = 0; l < 2; ++l) {
                const CaseId c(k);
                const TableTerm pub = table[c.slot()][d][static_cast<std::size_t>(l)];
                const TableTerm der = derived_table_term(c, kSixQubitDofs[d], l);
                if (pub != der) out.push_back({c, kSixQubitDofs[d], l, pub, der});
            }
        }
    }
    return out;
}

/// A four-photon ket pair (photon order A, B, C, D) in its reference form,
/// with the parities its context asserts.
struct DisplayedKet {
    std::string name;
    Dof dof = Dof::P;
    std::array<std::string, 2> kets;
    Parity ab = Parity::Even;
    Parity ac = Parity::Even;
    Parity bd = Parity::Even;
};

inline std::vector<DisplayedKet> displayed_kets() {
    using P = Parity;
    const auto E = P::Even;
    const auto O = P::Odd;
    return {
        {"Phi1^P", Dof::P, {"RRRR", "LLLL"}, E, E, E}, {"Phi2^P", Dof::P, {"RLRL", "LRLR"}, O, E, E},
        {"Phi1^F", Dof::F, {"rrrr", "llll"}, E, E, E}, {"Phi2^F", Dof::F, {"rlrl", "lrlr"}, O, E, E},
        {"Phi1^S", Dof::S, {"EEEE", "IIII"}, E, E, E}, {"Phi2^S", Dof::S, {"EIEI", "IEIE"}, O, E, E},
        {"Phi3^P", Dof::P, {"RRLL", "LLRR"}, E, O, O}, {"Phi4^P", Dof::P, {"RLLR", "LRRL"}, O, O, O},
        {"Phi3^F", Dof::F, {"rrll", "llrr"}, E, O, O}, {"Phi4^F", Dof::F, {"rllr", "lrll"}, O, O, O},
        {"Phi3^S", Dof::S, {"EEII", "IIIE"}, E, O, O}, {"Phi4^S", Dof::S, {"EIII", "IEEI"}, O, O, O},
        {"Phi5^P", Dof::P, {"RRRL", "LLLL"}, E, E, O}, {"Phi6^P", Dof::P, {"RLRR", "LRLL"}, O, E, O},
        {"Phi5^F", Dof::F, {"rrrl", "lllr"}, E, E, O}, {"Phi6^F", Dof::F, {"rlrr", "lrll"}, O, E, O},
        {"Phi5^S", Dof::S, {"EEEE", "IIIE"}, E, E, O}, {"Phi6^S", Dof::S, {"EIEE", "IEII"}, O, E, O},
        {"Phi7^P", Dof::P, {"RRLR", "LLRL"}, E, O, E}, {"Phi8^P", Dof::P, {"RLLL", "LRRR"}, O, O, E},
        {"Phi7^F", Dof::F, {"rrlr", "llrl"}, E, O, E}, {"Phi8^F", Dof::F, {"rlll", "lrrr"}, O, O, E},
        {"Phi7^S", Dof::S, {"EEIE", "IIIE"}, E, O, E}, {"Phi8^S", Dof::S, {"EIII", "IEEE"}, O, O, E},
    };
}

struct KetAuditEntry {
    std::string name;
    bool consistent = true;
    std::string reason;
};

/// Checks each displayed ket pair: both kets must have the asserted AB, AC and
/// BD parities and be bitwise complements of each other.
inline std::vector<KetAuditEntry> audit_displayed_kets() {
    std::vector<KetAuditEntry> out;
    for (const auto& k : displayed_kets()) {
        KetAuditEntry e{k.name, true, ""};
        std::array<std::array<int, 4>, 2> bits{};
        for (std::size_t j = 0; j < 2; ++j) {
            if (k.kets[j].size() != 4) throw std::logic_error("displayed ket must have four letters");
            for (std::size_t i = 0; i < 4; ++i) {
                const char ch = k.kets[j][i];
                bits[j][i] = (ch == 'L' || ch == 'l' || ch == 'I') ? 1 : 0;
            }
            auto parity = [&](std::size_t x, std::size_t y) { return bits[j][x] != bits[j][y] ? Parity::Odd : Parity::Even; };
            if (parity(0, 1) != k.ab) e.reason += "|" + k.kets[j] + "> has AB parity " + to_string(parity(0, 1)) + "; ";
            if (parity(0, 2) != k.ac) e.reason += "|" + k.kets[j] + "> has AC parity " + to_string(parity(0, 2)) + "; ";
            if (parity(1, 3) != k.bd) e.reason += "|" + k.kets[j] + "> has BD parity " + to_string(parity(1, 3)) + "; ";
        }
        for (std::size_t i = 0; i < 4; ++i) {
            if (bits[0][i] == bits[1][i]) {
                e.reason += "kets are not complements; ";
                break;
            }
        }
        e.consistent = e.reason.empty();
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace hyperepp
