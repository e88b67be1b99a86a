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
 * Composite devices: polarization and spatial-mode parity-check QND
 * measurements, the NV-assisted polarization SWAP between two photons, and
 * the linear-optics SWAPs between DOFs of one photon.
 *
 * Routing used here:
 *  - P-QND: NV in |phi+>. The R component of each photon (every spatial arm)
 *    reflects off the NV; L bypasses it. Ideal net effect: sigma_z on the NV
 *    per R photon, so even P parity leaves |phi+>, odd gives |phi->.
 *  - S-QND: unit 1 sees the r arm of each photon (F bit 0), unit 2 the E arm
 *    (S bit 0). On the selected arm a sigma_z^P plate is combined with the
 *    reflection, so both polarizations act as sigma_z on the spin. Unit 1 is
 *    run for both photons, then unit 2.
 *  - P-P SWAP: NV in |phi+>. L components of both photons scatter, NV
 *    Hadamard, P Hadamards on both photons, R components scatter, P
 *    Hadamards again, NV Hadamard, NV measured in {|+1>, |-1>}. On +1 the
 *    feed-forward is sigma_z^P on both photons.
 *
 * Each device returns the unnormalized joint state right before the NV
 * measurement. Fidelity of a realistic run is its overlap with the ideal run
 * of that joint state; efficiency is its norm^2.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "optics.hpp"

namespace hyperepp {

struct QndOutcome {
    std::optional<Parity> p_parity;
    std::optional<Parity> f_parity;
    std::optional<Parity> s_parity;
    double survival = 1.0;
};

/// One measurement record. `state` has the NV spins removed and is NOT
/// renormalized: its norm^2 is survival * probability of the input's mass.
struct QndBranch {
    QndOutcome outcome;
    double probability = 0.0; ///< conditional on survival
    StateVector state;
};

struct QndResult {
    StateVector evolved; ///< photons + NV spins before measurement
    double survival = 0.0;
    std::vector<QndBranch> branches;

    [[nodiscard]] const QndBranch& likeliest() const {
        if (branches.empty()) throw std::logic_error("QndResult: no branches");
        const QndBranch* best = &branches.front();
        for (const auto& b : branches) {
            if (b.probability > best->probability) best = &b;
        }
        return *best;
    }
};

struct SwapBranch {
    int nv_result = 1; ///< +1 or -1
    double probability = 0.0;
    std::vector<std::string> corrections_applied;
    StateVector state; ///< NV removed, corrections applied, unnormalized
};

struct SwapResult {
    StateVector evolved;
    double survival = 0.0;
    std::vector<SwapBranch> branches;
};

namespace detail {

inline void require_photon(const StateVector& s, Photon p, std::initializer_list<Dof> dofs) {
    for (Dof d : dofs) {
        if (!s.contains(QubitLabel::photon_dof(p, d))) {
            throw std::invalid_argument("photon " + to_string(p) + " lacks DOF " + to_string(d));
        }
    }
}

inline StateVector add_nv_phi_plus(const StateVector& s, int unit) {
    if (s.contains(QubitLabel::nv(unit))) throw std::invalid_argument("NV unit already in register");
    const double h = 1.0 / std::sqrt(2.0);
    return s.with_qubit(QubitLabel::nv(unit), h, h);
}

/// Measures the given NV units in {phi+, phi-} and removes them. Branch k has
/// bit j set when units[j] gave phi-.
inline std::vector<std::pair<std::size_t, StateVector>> measure_nvs_phi(StateVector joint, const std::vector<int>& units) {
    std::vector<QubitLabel> labels;
    for (int u : units) {
        joint = apply_gate(std::move(joint), NvHadamard{u});
        labels.push_back(QubitLabel::nv(u));
    }
    std::vector<std::pair<std::size_t, StateVector>> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << units.size()); ++bits) {
        out.emplace_back(bits, joint.project(labels, bits));
    }
    return out;
}

} // namespace detail

/// Polarization parity check on (photon1, photon2) with NV `unit`, which is
/// added to the register in |phi+>.
inline QndResult p_qnd(const StateVector& state, Photon photon1, Photon photon2, int unit, InteractionMode mode,
                       const ReflectionPair& refl) {
    detail::require_photon(state, photon1, {Dof::P});
    detail::require_photon(state, photon2, {Dof::P});
    const double n0 = state.norm2();
    if (n0 <= 0.0) throw std::domain_error("p_qnd: zero-norm input");
    StateVector joint = detail::add_nv_phi_plus(state, unit);
    for (Photon ph : {photon1, photon2}) {
        joint = scatter_photon_nv(std::move(joint), ph, unit, ArmCondition::when(Dof::P, 0), mode, refl);
    }
    QndResult out{joint, joint.norm2() / n0, {}};
    for (auto& [bits, branch] : detail::measure_nvs_phi(joint, {unit})) {
        QndOutcome o;
        o.p_parity = bits ? Parity::Odd : Parity::Even;
        o.survival = out.survival;
        const double p = out.survival > 0.0 ? branch.norm2() / (n0 * out.survival) : 0.0;
        out.branches.push_back({o, p, std::move(branch)});
    }
    return out;
}

/// Spatial-mode parity check: unit1 flags the F parity, unit2 the S parity.
inline QndResult s_qnd(const StateVector& state, Photon photon1, Photon photon2, int unit1, int unit2,
                       InteractionMode mode, const ReflectionPair& refl) {
    if (unit1 == unit2) throw std::invalid_argument("s_qnd: units must differ");
    detail::require_photon(state, photon1, {Dof::P, Dof::F, Dof::S});
    detail::require_photon(state, photon2, {Dof::P, Dof::F, Dof::S});
    const double n0 = state.norm2();
    if (n0 <= 0.0) throw std::domain_error("s_qnd: zero-norm input");
    StateVector joint = detail::add_nv_phi_plus(detail::add_nv_phi_plus(state, unit1), unit2);
    for (auto [dof, unit] : {std::pair{Dof::F, unit1}, std::pair{Dof::S, unit2}}) {
        const ArmCondition arm = ArmCondition::when(dof, 0);
        for (Photon ph : {photon1, photon2}) {
            joint = apply_gate(std::move(joint), sigma_z(ph, Dof::P, arm));
            joint = scatter_photon_nv(std::move(joint), ph, unit, arm, mode, refl);
        }
    }
    QndResult out{joint, joint.norm2() / n0, {}};
    for (auto& [bits, branch] : detail::measure_nvs_phi(joint, {unit1, unit2})) {
        QndOutcome o;
        o.f_parity = (bits & 1U) ? Parity::Odd : Parity::Even;
        o.s_parity = (bits & 2U) ? Parity::Odd : Parity::Even;
        o.survival = out.survival;
        const double p = out.survival > 0.0 ? branch.norm2() / (n0 * out.survival) : 0.0;
        out.branches.push_back({o, p, std::move(branch)});
    }
    return out;
}

/// Gate list of the P-P SWAP up to (and including) the last NV Hadamard.
inline std::vector<GateOp> pp_swap_gates(Photon a, Photon a2, int unit, InteractionMode mode, const ReflectionPair& refl) {
    const ArmCondition l_only = ArmCondition::when(Dof::P, 1);
    const ArmCondition r_only = ArmCondition::when(Dof::P, 0);
    return {
        ConditionalScatter{a, l_only, unit, mode, refl},
        ConditionalScatter{a2, l_only, unit, mode, refl},
        NvHadamard{unit},
        hadamard(a, Dof::P),
        hadamard(a2, Dof::P),
        ConditionalScatter{a, r_only, unit, mode, refl},
        ConditionalScatter{a2, r_only, unit, mode, refl},
        hadamard(a, Dof::P),
        hadamard(a2, Dof::P),
        NvHadamard{unit},
    };
}

/// Exchanges the polarization states of photons a and a2 using NV `unit`.
inline SwapResult pp_swap(const StateVector& state, Photon a, Photon a2, int unit, InteractionMode mode,
                          const ReflectionPair& refl) {
    if (a == a2) throw std::invalid_argument("pp_swap: photons must differ");
    detail::require_photon(state, a, {Dof::P});
    detail::require_photon(state, a2, {Dof::P});
    const double n0 = state.norm2();
    if (n0 <= 0.0) throw std::domain_error("pp_swap: zero-norm input");
    StateVector joint = apply_gates(detail::add_nv_phi_plus(state, unit), pp_swap_gates(a, a2, unit, mode, refl));
    SwapResult out{joint, joint.norm2() / n0, {}};
    for (int bit = 0; bit < 2; ++bit) {
        SwapBranch b;
        b.nv_result = bit == 0 ? 1 : -1;
        StateVector s = joint.project(QubitLabel::nv(unit), bit);
        b.probability = out.survival > 0.0 ? s.norm2() / (n0 * out.survival) : 0.0;
        if (bit == 0) {
            for (Photon ph : {a, a2}) {
                const PhotonGate z = sigma_z(ph, Dof::P);
                s = apply_gate(std::move(s), z);
                b.corrections_applied.push_back(describe(z));
            }
        }
        b.state = std::move(s);
        out.branches.push_back(std::move(b));
    }
    return out;
}

/// Exchanges the P qubit of `photon` with its `other` DOF.
inline StateVector dof_swap(StateVector state, Photon photon, Dof other) {
    detail::require_photon(state, photon, {Dof::P, other});
    return std::move(state).swap_qubits(QubitLabel::photon_dof(photon, Dof::P), QubitLabel::photon_dof(photon, other));
}

inline StateVector pf_swap(StateVector state, Photon photon) { return dof_swap(std::move(state), photon, Dof::F); }
inline StateVector ps_swap(StateVector state, Photon photon) { return dof_swap(std::move(state), photon, Dof::S); }
inline StateVector pt_swap(StateVector state, Photon photon) { return dof_swap(std::move(state), photon, Dof::T); }

// ---------------------------------------------------------------------------
// Device performance by direct simulation

struct DevicePerformance {
    double fidelity = 0.0;
    double efficiency = 0.0;
};

namespace detail {

inline DevicePerformance compare_runs(const StateVector& real, const StateVector& ideal, double input_norm2) {
    return {fidelity(real, ideal), real.norm2() / input_norm2};
}

} // namespace detail

inline DevicePerformance simulate_p_qnd(const StateVector& input, Photon p1, Photon p2, const ReflectionPair& refl) {
    const auto real = p_qnd(input, p1, p2, 0, InteractionMode::Realistic, refl);
    const auto ideal = p_qnd(input, p1, p2, 0, InteractionMode::Ideal, refl);
    return detail::compare_runs(real.evolved, ideal.evolved, input.norm2());
}

inline DevicePerformance simulate_s_qnd(const StateVector& input, Photon p1, Photon p2, const ReflectionPair& refl) {
    const auto real = s_qnd(input, p1, p2, 1, 2, InteractionMode::Realistic, refl);
    const auto ideal = s_qnd(input, p1, p2, 1, 2, InteractionMode::Ideal, refl);
    return detail::compare_runs(real.evolved, ideal.evolved, input.norm2());
}

inline DevicePerformance simulate_pp_swap(const StateVector& input, Photon a, Photon a2, const ReflectionPair& refl) {
    const auto real = pp_swap(input, a, a2, 0, InteractionMode::Realistic, refl);
    const auto ideal = pp_swap(input, a, a2, 0, InteractionMode::Ideal, refl);
    return detail::compare_runs(real.evolved, ideal.evolved, input.norm2());
}

/// (alpha1|R> + beta1|L>)_a (alpha2|R> + beta2|L>)_a2, polarization only.
inline StateVector polarization_product(Photon a, cplx alpha1, cplx beta1, Photon a2, cplx alpha2, cplx beta2) {
    return StateVector::qubit(QubitLabel::photon_dof(a, Dof::P), alpha1, beta1)
        .tensor(StateVector::qubit(QubitLabel::photon_dof(a2, Dof::P), alpha2, beta2));
}

} // namespace hyperepp
