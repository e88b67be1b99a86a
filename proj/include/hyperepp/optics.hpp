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
 * Primitive gates: wave plates and beam splitters acting on one photon DOF,
 * NV spin Hadamards, and the conditional photon-NV scattering step.
 *
 * Beam splitters, switches and delay lines are not modeled as objects. Their
 * net effect is which basis components a ConditionalScatter touches and the
 * order in which gates are listed.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "cavity.hpp"
#include "hilbert.hpp"

namespace hyperepp {

/// Predicate over one photon's DOF bits: satisfied when
/// (bits & mask) == value, with bit k of mask/value referring to Dof k.
struct ArmCondition {
    std::uint8_t mask = 0;
    std::uint8_t value = 0;

    static constexpr ArmCondition always() { return {}; }
    static constexpr ArmCondition when(Dof d, int bit) {
        const auto b = static_cast<std::uint8_t>(1U << static_cast<unsigned>(d));
        return {b, static_cast<std::uint8_t>(bit ? b : 0)};
    }
    [[nodiscard]] constexpr ArmCondition and_when(Dof d, int bit) const {
        const ArmCondition c = when(d, bit);
        return {static_cast<std::uint8_t>(mask | c.mask), static_cast<std::uint8_t>((value & ~c.mask) | c.value)};
    }
    [[nodiscard]] constexpr bool involves(Dof d) const { return (mask >> static_cast<unsigned>(d)) & 1U; }
    [[nodiscard]] constexpr bool trivial() const { return mask == 0; }
};

enum class LocalKind : std::uint8_t { Identity, Hadamard, SigmaX, SigmaZ };

/// Single-qubit gate on one DOF of one photon, optionally restricted to the
/// basis components where the photon's other DOFs satisfy `condition`.
/// Hadamard on P is a half-wave plate at 22.5 degrees; on F/S/T a 50:50 beam
/// splitter.
struct PhotonGate {
    LocalKind kind = LocalKind::Identity;
    Photon photon = Photon::A;
    Dof dof = Dof::P;
    ArmCondition condition{};
};

struct NvHadamard {
    int unit = 0;
};

/// Photon reflected off NV unit `unit` for the components satisfying
/// `condition`; each such amplitude picks up scatter(pol, spin).
struct ConditionalScatter {
    Photon photon = Photon::A;
    ArmCondition condition{};
    int unit = 0;
    InteractionMode mode = InteractionMode::Ideal;
    ReflectionPair refl{};
};

using GateOp = std::variant<PhotonGate, NvHadamard, ConditionalScatter>;

inline PhotonGate hadamard(Photon p, Dof d, ArmCondition c = {}) { return {LocalKind::Hadamard, p, d, c}; }
inline PhotonGate sigma_x(Photon p, Dof d, ArmCondition c = {}) { return {LocalKind::SigmaX, p, d, c}; }
inline PhotonGate sigma_z(Photon p, Dof d, ArmCondition c = {}) { return {LocalKind::SigmaZ, p, d, c}; }

inline Mat2 local_matrix(LocalKind kind) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (kind) {
    case LocalKind::Identity: return {{{1.0, 0.0}, {0.0, 1.0}}};
    case LocalKind::Hadamard: return {{{h, h}, {h, -h}}};
    case LocalKind::SigmaX: return {{{0.0, 1.0}, {1.0, 0.0}}};
    case LocalKind::SigmaZ: return {{{1.0, 0.0}, {0.0, -1.0}}};
    }
    throw std::invalid_argument("local_matrix: bad kind");
}

/// Local operator of a gate. For ConditionalScatter the matrix is the 4x4
/// diagonal over (pol bit) + 2 * (spin bit), applied where the condition holds.
struct LocalOperator {
    Register targets;
    std::vector<cplx> matrix; ///< row-major, dim x dim
    ArmCondition condition{};
    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << targets.size(); }
    [[nodiscard]] cplx at(std::size_t row, std::size_t col) const { return matrix.at(row * dim() + col); }
};

inline LocalOperator matrix_of(const GateOp& gate) {
    return std::visit(
        [](const auto& g) -> LocalOperator {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PhotonGate>) {
                const Mat2 m = local_matrix(g.kind);
                return {{QubitLabel::photon_dof(g.photon, g.dof)}, {m[0][0], m[0][1], m[1][0], m[1][1]}, g.condition};
            } else if constexpr (std::is_same_v<T, NvHadamard>) {
                const Mat2 m = local_matrix(LocalKind::Hadamard);
                return {{QubitLabel::nv(g.unit)}, {m[0][0], m[0][1], m[1][0], m[1][1]}, {}};
            } else {
                LocalOperator op{{QubitLabel::photon_dof(g.photon, Dof::P), QubitLabel::nv(g.unit)},
                                 std::vector<cplx>(16, cplx{0.0, 0.0}),
                                 g.condition};
                for (int spin = 0; spin < 2; ++spin) {
                    for (int pol = 0; pol < 2; ++pol) {
                        const auto k = static_cast<std::size_t>(pol + 2 * spin);
                        op.matrix[k * 4 + k] =
                            scatter(static_cast<Polarization>(pol), static_cast<Spin>(spin), g.mode, g.refl);
                    }
                }
                return op;
            }
        },
        gate);
}

namespace detail {

/// Bit mask / value over register positions for a photon-local condition.
inline std::pair<std::size_t, std::size_t> condition_mask(const StateVector& s, Photon photon, ArmCondition c) {
    std::size_t mask = 0;
    std::size_t value = 0;
    for (unsigned d = 0; d < 4; ++d) {
        if (!((c.mask >> d) & 1U)) continue;
        const std::size_t b = std::size_t{1} << s.position(QubitLabel::photon_dof(photon, static_cast<Dof>(d)));
        mask |= b;
        if ((c.value >> d) & 1U) value |= b;
    }
    return {mask, value};
}

} // namespace detail

/// Multiplies each amplitude whose photon components satisfy `condition` by
/// scatter(pol bit, spin bit); the rest are untouched.
inline StateVector scatter_photon_nv(StateVector state, Photon photon, int unit, ArmCondition condition,
                                     InteractionMode mode, const ReflectionPair& refl) {
    const std::size_t pol = std::size_t{1} << state.position(QubitLabel::photon_dof(photon, Dof::P));
    const std::size_t spin = std::size_t{1} << state.position(QubitLabel::nv(unit));
    const auto [mask, value] = detail::condition_mask(state, photon, condition);
    std::array<cplx, 4> table{};
    for (int s = 0; s < 2; ++s) {
        for (int p = 0; p < 2; ++p) {
            table[static_cast<std::size_t>(p + 2 * s)] =
                scatter(static_cast<Polarization>(p), static_cast<Spin>(s), mode, refl);
        }
    }
    return std::move(state).apply_diagonal([&](std::size_t i) {
        if ((i & mask) != value) return cplx{1.0, 0.0};
        return table[((i & pol) ? 1U : 0U) + ((i & spin) ? 2U : 0U)];
    });
}

inline StateVector apply_gate(StateVector state, const GateOp& gate) {
    if (const auto* g = std::get_if<PhotonGate>(&gate)) {
        if (g->condition.involves(g->dof)) throw std::invalid_argument("apply_gate: condition on the target DOF");
        const QubitLabel target = QubitLabel::photon_dof(g->photon, g->dof);
        if (g->condition.trivial()) return std::move(state).apply_1q(target, local_matrix(g->kind));
        // controlled form: identity outside the selected arm
        const auto [mask, value] = detail::condition_mask(state, g->photon, g->condition);
        if (g->kind == LocalKind::SigmaZ) {
            const std::size_t bit = std::size_t{1} << state.position(target);
            return std::move(state).apply_diagonal(
                [&](std::size_t i) { return ((i & mask) == value && (i & bit)) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0}; });
        }
        const Mat2 m = local_matrix(g->kind);
        const std::size_t bit = std::size_t{1} << state.position(target);
        std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & bit) || (i & mask) != value) continue;
            const cplx a0 = amps[i];
            const cplx a1 = amps[i | bit];
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
        return {state.labels(), std::move(amps)};
    }
    if (const auto* g = std::get_if<NvHadamard>(&gate)) {
        return std::move(state).apply_1q(QubitLabel::nv(g->unit), local_matrix(LocalKind::Hadamard));
    }
    const auto& g = std::get<ConditionalScatter>(gate);
    return scatter_photon_nv(std::move(state), g.photon, g.unit, g.condition, g.mode, g.refl);
}

inline StateVector apply_gates(StateVector state, const std::vector<GateOp>& gates) {
    for (const auto& g : gates) state = apply_gate(std::move(state), g);
    return state;
}

inline std::string describe(const GateOp& gate) {
    return std::visit(
        [](const auto& g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PhotonGate>) {
                static constexpr std::array<const char*, 4> names{"I", "H", "sigma_x", "sigma_z"};
                return std::string(names[static_cast<std::size_t>(g.kind)]) + "^" + to_string(g.dof) + "(" +
                       to_string(g.photon) + ")";
            } else if constexpr (std::is_same_v<T, NvHadamard>) {
                return "H(NV" + std::to_string(g.unit) + ")";
            } else {
                return "scatter(" + to_string(g.photon) + ", NV" + std::to_string(g.unit) + ")";
            }
        },
        gate);
}

} // namespace hyperepp
