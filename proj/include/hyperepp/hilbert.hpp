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
 * Labeled qubit registers and dense state vectors.
 *
 * Basis convention: bit 0 <-> {R, r, E, u, +1}, bit 1 <-> {L, l, I, d, -1}.
 * Amplitude indices are little-endian over the register order, so bit k of
 * an index is the value of the k-th label.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cavity.hpp"

namespace hyperepp {

enum class Photon : std::uint8_t { A, B, C, D, A2, B2, C2, D2 };
enum class Dof : std::uint8_t { P, F, S, T };

inline constexpr std::array<Dof, 3> kSixQubitDofs{Dof::P, Dof::F, Dof::S};

inline std::string to_string(Photon p) {
    static constexpr std::array<const char*, 8> names{"A", "B", "C", "D", "A'", "B'", "C'", "D'"};
    return names[static_cast<std::size_t>(p)];
}

inline std::string to_string(Dof d) {
    static constexpr std::array<const char*, 4> names{"P", "F", "S", "T"};
    return names[static_cast<std::size_t>(d)];
}

struct QubitLabel {
    enum class Kind : std::uint8_t { PhotonDof, NvSpin };

    Kind kind = Kind::PhotonDof;
    Photon photon = Photon::A;
    Dof dof = Dof::P;
    int unit = 0;

    static QubitLabel photon_dof(Photon p, Dof d) { return {Kind::PhotonDof, p, d, 0}; }
    static QubitLabel nv(int unit) { return {Kind::NvSpin, Photon::A, Dof::P, unit}; }

    [[nodiscard]] bool is_nv() const { return kind == Kind::NvSpin; }

    friend bool operator==(const QubitLabel& a, const QubitLabel& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::NvSpin) return a.unit == b.unit;
        return a.photon == b.photon && a.dof == b.dof;
    }

    /// Canonical register order: photons by id, DOFs P < F < S < T, NV spins last.
    friend bool operator<(const QubitLabel& a, const QubitLabel& b) {
        if (a.kind != b.kind) return a.kind == Kind::PhotonDof;
        if (a.kind == Kind::NvSpin) return a.unit < b.unit;
        if (a.photon != b.photon) return a.photon < b.photon;
        return a.dof < b.dof;
    }

    [[nodiscard]] std::string name() const {
        if (is_nv()) return "NV" + std::to_string(unit);
        return to_string(photon) + "." + to_string(dof);
    }
};

using Register = std::vector<QubitLabel>;

/// Register for the given photons, each carrying `dofs`, in canonical order.
inline Register photon_register(std::vector<Photon> photons, std::span<const Dof> dofs = kSixQubitDofs) {
    std::sort(photons.begin(), photons.end());
    Register reg;
    for (Photon p : photons) {
        for (Dof d : dofs) reg.push_back(QubitLabel::photon_dof(p, d));
    }
    return reg;
}

using Mat2 = std::array<std::array<cplx, 2>, 2>;

/// Dense amplitude vector over a labeled register. Not necessarily normalized:
/// after lossy operations norm2() is the survival probability.
class StateVector {
  public:
    StateVector() : amps_{cplx{1.0, 0.0}} {}

    StateVector(Register reg, std::vector<cplx> amps) : reg_(std::move(reg)), amps_(std::move(amps)) {
        if (reg_.size() > 30) throw std::invalid_argument("StateVector: register too large");
        if (amps_.size() != (std::size_t{1} << reg_.size())) {
            throw std::invalid_argument("StateVector: amplitude count does not match register size");
        }
        for (std::size_t i = 0; i < reg_.size(); ++i) {
            for (std::size_t j = i + 1; j < reg_.size(); ++j) {
                if (reg_[i] == reg_[j]) {
                    throw std::invalid_argument("StateVector: duplicate label " + reg_[i].name());
                }
            }
        }
    }

    static StateVector basis_state(Register reg, std::size_t index) {
        std::vector<cplx> amps(std::size_t{1} << reg.size());
        if (index >= amps.size()) throw std::invalid_argument("basis_state: index out of range");
        amps[index] = 1.0;
        return {std::move(reg), std::move(amps)};
    }

    /// Single-qubit state a0|0> + a1|1>.
    static StateVector qubit(const QubitLabel& label, cplx a0, cplx a1) {
        return {Register{label}, std::vector<cplx>{a0, a1}};
    }

    [[nodiscard]] const Register& labels() const { return reg_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const { return amps_; }
    [[nodiscard]] std::size_t num_qubits() const { return reg_.size(); }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] cplx amplitude(std::size_t index) const { return amps_.at(index); }

    [[nodiscard]] bool contains(const QubitLabel& label) const {
        return std::find(reg_.begin(), reg_.end(), label) != reg_.end();
    }

    [[nodiscard]] std::size_t position(const QubitLabel& label) const {
        auto it = std::find(reg_.begin(), reg_.end(), label);
        if (it == reg_.end()) throw std::invalid_argument("label " + label.name() + " not in register");
        return static_cast<std::size_t>(it - reg_.begin());
    }

    [[nodiscard]] double norm2() const {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return s;
    }

    [[nodiscard]] StateVector normalized() const {
        const double n = norm2();
        if (n <= 0.0) throw std::domain_error("normalized: zero-norm state");
        StateVector out = *this;
        const double inv = 1.0 / std::sqrt(n);
        for (cplx& a : out.amps_) a *= inv;
        return out;
    }

    [[nodiscard]] StateVector scaled(cplx factor) const {
        StateVector out = *this;
        for (cplx& a : out.amps_) a *= factor;
        return out;
    }

    /// this (x) other; other's labels take the higher bits.
    [[nodiscard]] StateVector tensor(const StateVector& other) const {
        Register reg = reg_;
        reg.insert(reg.end(), other.reg_.begin(), other.reg_.end());
        std::vector<cplx> amps(amps_.size() * other.amps_.size());
        for (std::size_t hi = 0; hi < other.amps_.size(); ++hi) {
            for (std::size_t lo = 0; lo < amps_.size(); ++lo) {
                amps[hi * amps_.size() + lo] = amps_[lo] * other.amps_[hi];
            }
        }
        return {std::move(reg), std::move(amps)};
    }

    /// <this|other>. Registers must match label-for-label.
    [[nodiscard]] cplx inner(const StateVector& other) const {
        if (reg_ != other.reg_) throw std::invalid_argument("inner: register mismatch");
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
        return s;
    }

    /// Same state expressed in a permuted register order.
    [[nodiscard]] StateVector reordered(const Register& target) const {
        if (target.size() != reg_.size()) throw std::invalid_argument("reordered: register size mismatch");
        std::vector<std::size_t> src(target.size());
        for (std::size_t k = 0; k < target.size(); ++k) src[k] = position(target[k]);
        std::vector<cplx> amps(amps_.size());
        for (std::size_t i = 0; i < amps.size(); ++i) {
            std::size_t j = 0;
            for (std::size_t k = 0; k < target.size(); ++k) j |= ((i >> k) & 1U) << src[k];
            amps[i] = amps_[j];
        }
        return {target, std::move(amps)};
    }

    [[nodiscard]] StateVector canonical() const {
        Register target = reg_;
        std::sort(target.begin(), target.end());
        return target == reg_ ? *this : reordered(target);
    }

    /// Applies a 2x2 operator to one qubit.
    [[nodiscard]] StateVector apply_1q(const QubitLabel& label, const Mat2& m) && {
        const std::size_t bit = std::size_t{1} << position(label);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (i & bit) continue;
            const cplx a0 = amps_[i];
            const cplx a1 = amps_[i | bit];
            amps_[i] = m[0][0] * a0 + m[0][1] * a1;
            amps_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
        return std::move(*this);
    }
    [[nodiscard]] StateVector apply_1q(const QubitLabel& label, const Mat2& m) const& {
        return StateVector(*this).apply_1q(label, m);
    }

    /// Multiplies every amplitude by factor(index).
    template <class Factor>
    [[nodiscard]] StateVector apply_diagonal(Factor&& factor) && {
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= factor(i);
        return std::move(*this);
    }

    /// Exchanges the values of two qubits (a permutation of amplitudes).
    [[nodiscard]] StateVector swap_qubits(const QubitLabel& a, const QubitLabel& b) && {
        const std::size_t pa = position(a);
        const std::size_t pb = position(b);
        if (pa == pb) return std::move(*this);
        const std::size_t ba = std::size_t{1} << pa;
        const std::size_t bb = std::size_t{1} << pb;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            // visit each (a=1, b=0) index once and swap with its (a=0, b=1) partner
            if ((i & ba) && !(i & bb)) std::swap(amps_[i], amps_[(i & ~ba) | bb]);
        }
        return std::move(*this);
    }

    /// Appends a qubit in state a0|0> + a1|1>.
    [[nodiscard]] StateVector with_qubit(const QubitLabel& label, cplx a0, cplx a1) const {
        return tensor(qubit(label, a0, a1));
    }

    /// Unnormalized projection of `labels` onto the computational values in
    /// `bits` (bit k of `bits` for labels[k]). The measured qubits are removed.
    [[nodiscard]] StateVector project(std::span<const QubitLabel> labels, std::size_t bits) const {
        std::size_t mask = 0;
        std::size_t value = 0;
        for (std::size_t k = 0; k < labels.size(); ++k) {
            const std::size_t b = std::size_t{1} << position(labels[k]);
            if (mask & b) throw std::invalid_argument("project: repeated label");
            mask |= b;
            if ((bits >> k) & 1U) value |= b;
        }
        Register reg;
        std::vector<std::size_t> kept;
        for (std::size_t q = 0; q < reg_.size(); ++q) {
            if (!((mask >> q) & 1U)) {
                reg.push_back(reg_[q]);
                kept.push_back(q);
            }
        }
        std::vector<cplx> amps(std::size_t{1} << reg.size());
        for (std::size_t j = 0; j < amps.size(); ++j) {
            std::size_t i = value;
            for (std::size_t k = 0; k < kept.size(); ++k) i |= ((j >> k) & 1U) << kept[k];
            amps[j] = amps_[i];
        }
        return {std::move(reg), std::move(amps)};
    }

    [[nodiscard]] StateVector project(const QubitLabel& label, int bit) const {
        return project(std::span<const QubitLabel>(&label, 1), static_cast<std::size_t>(bit));
    }

    /// Text snapshot: a "# labels" header, then one line per amplitude with
    /// |a| >= 1e-15: bitstring (register order) TAB re TAB im.
    [[nodiscard]] std::string to_text() const {
        std::ostringstream os;
        os.precision(17);
        os << "# labels";
        for (const auto& l : reg_) os << ' ' << l.name();
        os << '\n';
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (std::abs(amps_[i]) < 1e-15) continue;
            for (std::size_t k = 0; k < reg_.size(); ++k) os << (((i >> k) & 1U) ? '1' : '0');
            os << '\t' << amps_[i].real() << '\t' << amps_[i].imag() << '\n';
        }
        return os.str();
    }

    static StateVector from_text(Register reg, const std::string& text) {
        std::vector<cplx> amps(std::size_t{1} << reg.size());
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string bits;
            double re = 0.0;
            double im = 0.0;
            if (!(ls >> bits >> re >> im) || bits.size() != reg.size()) {
                throw std::invalid_argument("from_text: malformed line '" + line + "'");
            }
            std::size_t idx = 0;
            for (std::size_t k = 0; k < bits.size(); ++k) {
                if (bits[k] != '0' && bits[k] != '1') throw std::invalid_argument("from_text: bad bit");
                if (bits[k] == '1') idx |= std::size_t{1} << k;
            }
            amps[idx] = {re, im};
        }
        return {std::move(reg), std::move(amps)};
    }

  private:
    Register reg_;
    std::vector<cplx> amps_;
};

/// Largest amplitude-wise difference; registers must match.
inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    if (a.labels() != b.labels()) throw std::invalid_argument("max_abs_diff: register mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a.amplitude(i) - b.amplitude(i)));
    return m;
}

/// |<real|ideal>|^2 / (|real|^2 |ideal|^2).
inline double fidelity(const StateVector& real, const StateVector& ideal) {
    const double nr = real.norm2();
    const double ni = ideal.norm2();
    if (nr <= 0.0 || ni <= 0.0) throw std::domain_error("fidelity: zero-norm state");
    return std::norm(real.inner(ideal)) / (nr * ni);
}

// ---------------------------------------------------------------------------
// Measurement

/// Orthonormal single-qubit basis; outcome k projects onto states[k].
struct Basis {
    std::array<std::array<cplx, 2>, 2> states;

    void validate() const {
        auto ip = [](const std::array<cplx, 2>& u, const std::array<cplx, 2>& v) {
            return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
        };
        if (std::abs(ip(states[0], states[0]) - 1.0) > 1e-12 || std::abs(ip(states[1], states[1]) - 1.0) > 1e-12 ||
            std::abs(ip(states[0], states[1])) > 1e-12) {
            throw std::invalid_argument("Basis: vectors are not orthonormal");
        }
    }
};

inline Basis computational_basis() { return {{{{1.0, 0.0}, {0.0, 1.0}}}}; }

/// NV basis {|phi+>, |phi->} with |phi+-> = (|+1> +- |-1>)/sqrt(2).
inline Basis nv_phi_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{{{h, h}, {h, -h}}}};
}

struct MeasurementBranch {
    int outcome = 0;
    double probability = 0.0;
    StateVector state; ///< renormalized; the measured qubit is left in basis.states[outcome]
};

struct MeasurementResult {
    double survival = 0.0; ///< norm^2 of the state before measurement
    std::vector<MeasurementBranch> branches;
};

inline MeasurementResult measure(const StateVector& state, const QubitLabel& label, const Basis& basis) {
    basis.validate();
    const double n = state.norm2();
    if (n <= 0.0) throw std::domain_error("measure: zero-norm state");
    MeasurementResult out;
    out.survival = n;
    for (int k = 0; k < 2; ++k) {
        const auto& v = basis.states[static_cast<std::size_t>(k)];
        // |v><v| on the measured qubit
        Mat2 proj{{{v[0] * std::conj(v[0]), v[0] * std::conj(v[1])}, {v[1] * std::conj(v[0]), v[1] * std::conj(v[1])}}};
        StateVector collapsed = state.apply_1q(label, proj);
        const double p = collapsed.norm2() / n;
        out.branches.push_back({k, p, p > 0.0 ? collapsed.normalized() : collapsed});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bell states

enum class Parity : std::uint8_t { Even, Odd };

inline std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// One of phi+, phi-, psi+, psi-. Index 0..3 in that order (= sign_bit + 2 * parity_bit).
struct BellLabel {
    Parity parity = Parity::Even; ///< Even <-> phi, Odd <-> psi
    bool minus = false;

    static constexpr BellLabel phi_plus() { return {Parity::Even, false}; }
    static constexpr BellLabel phi_minus() { return {Parity::Even, true}; }
    static constexpr BellLabel psi_plus() { return {Parity::Odd, false}; }
    static constexpr BellLabel psi_minus() { return {Parity::Odd, true}; }

    static BellLabel from_index(int i) {
        if (i < 0 || i > 3) throw std::invalid_argument("BellLabel: index out of range");
        return {(i & 2) ? Parity::Odd : Parity::Even, (i & 1) != 0};
    }
    [[nodiscard]] constexpr int index() const { return (minus ? 1 : 0) + (parity == Parity::Odd ? 2 : 0); }

    friend constexpr bool operator==(BellLabel a, BellLabel b) { return a.parity == b.parity && a.minus == b.minus; }

    [[nodiscard]] std::string name() const {
        return std::string(parity == Parity::Even ? "phi" : "psi") + (minus ? "-" : "+");
    }

    static BellLabel parse(const std::string& s) {
        for (int i = 0; i < 4; ++i) {
            if (from_index(i).name() == s) return from_index(i);
        }
        throw std::invalid_argument("unknown Bell label '" + s + "'");
    }
};

/// One Bell state per DOF: P, F, S and optionally T.
struct HyperBellSpec {
    BellLabel p;
    BellLabel f;
    BellLabel s;
    std::optional<BellLabel> t;

    [[nodiscard]] BellLabel at(Dof d) const {
        switch (d) {
        case Dof::P: return p;
        case Dof::F: return f;
        case Dof::S: return s;
        case Dof::T:
            if (!t) throw std::invalid_argument("HyperBellSpec: no T component");
            return *t;
        }
        throw std::invalid_argument("HyperBellSpec: bad DOF");
    }

    void set(Dof d, BellLabel b) {
        switch (d) {
        case Dof::P: p = b; return;
        case Dof::F: f = b; return;
        case Dof::S: s = b; return;
        case Dof::T: t = b; return;
        }
    }

    /// 0..63 over (P, F, S); only valid without T.
    [[nodiscard]] int index() const { return p.index() + 4 * f.index() + 16 * s.index(); }

    static HyperBellSpec from_index(int i) {
        if (i < 0 || i > 63) throw std::invalid_argument("HyperBellSpec: index out of range");
        return {BellLabel::from_index(i & 3), BellLabel::from_index((i >> 2) & 3), BellLabel::from_index((i >> 4) & 3),
                std::nullopt};
    }

    friend bool operator==(const HyperBellSpec& a, const HyperBellSpec& b) {
        return a.p == b.p && a.f == b.f && a.s == b.s && a.t == b.t;
    }

    [[nodiscard]] std::string name() const {
        std::string out = p.name() + "," + f.name() + "," + s.name();
        if (t) out += "," + t->name();
        return out;
    }

    static constexpr HyperBellSpec all(BellLabel b) { return {b, b, b, std::nullopt}; }
};

/// Two-qubit Bell amplitudes indexed by (bit of first) + 2 * (bit of second).
inline std::array<cplx, 4> bell_amplitudes(BellLabel b) {
    const double h = 1.0 / std::sqrt(2.0);
    const double sgn = b.minus ? -1.0 : 1.0;
    if (b.parity == Parity::Even) return {h, 0.0, 0.0, sgn * h};
    return {0.0, h, sgn * h, 0.0};
}

/// Hyperentangled Bell state of a photon pair. The register is canonical
/// (photons by id, then DOFs); each Bell state is written with `pair.first`
/// as the first qubit.
inline StateVector make_hyper_bell(const HyperBellSpec& spec, std::pair<Photon, Photon> pair) {
    if (pair.first == pair.second) throw std::invalid_argument("make_hyper_bell: duplicate photon id");
    std::vector<Dof> dofs{Dof::P, Dof::F, Dof::S};
    if (spec.t) dofs.push_back(Dof::T);
    Register reg = photon_register({pair.first, pair.second}, dofs);
    std::vector<cplx> amps(std::size_t{1} << reg.size());
    std::vector<std::array<cplx, 4>> per_dof;
    for (Dof d : dofs) per_dof.push_back(bell_amplitudes(spec.at(d)));
    std::vector<std::size_t> first_pos;
    std::vector<std::size_t> second_pos;
    for (Dof d : dofs) {
        auto pos = [&](Photon p) {
            return static_cast<std::size_t>(std::find(reg.begin(), reg.end(), QubitLabel::photon_dof(p, d)) - reg.begin());
        };
        first_pos.push_back(pos(pair.first));
        second_pos.push_back(pos(pair.second));
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        cplx a{1.0, 0.0};
        for (std::size_t k = 0; k < dofs.size() && a != cplx{0.0, 0.0}; ++k) {
            const std::size_t local = ((i >> first_pos[k]) & 1U) | (((i >> second_pos[k]) & 1U) << 1);
            a *= per_dof[k][local];
        }
        amps[i] = a;
    }
    return {std::move(reg), std::move(amps)};
}

/// Bell-basis amplitudes of a state of several photon pairs. The register must
/// hold exactly the P, F, S qubits of those photons (any order). Entry
/// sum_k spec_k.index() * 64^k is <spec_0 (x) spec_1 (x) ...|state>. Uses
/// CNOT(first->second) then H(first) per DOF, which maps Bell index b to
/// |b & 1>|b >> 1>.
inline std::vector<cplx> bell_basis_amplitudes(const StateVector& state,
                                               const std::vector<std::pair<Photon, Photon>>& pairs) {
    std::vector<Photon> photons;
    for (const auto& [a, b] : pairs) {
        photons.push_back(a);
        photons.push_back(b);
    }
    const Register reg = photon_register(photons);
    if (state.num_qubits() != reg.size()) throw std::invalid_argument("bell_basis_amplitudes: register mismatch");
    const StateVector s = state.labels() == reg ? state : state.reordered(reg);
    std::vector<cplx> amps(s.amplitudes().begin(), s.amplitudes().end());
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<std::size_t> fpos;
    std::vector<std::size_t> spos;
    for (const auto& [first, second] : pairs) {
        for (Dof d : kSixQubitDofs) {
            fpos.push_back(s.position(QubitLabel::photon_dof(first, d)));
            spos.push_back(s.position(QubitLabel::photon_dof(second, d)));
            const std::size_t fb = std::size_t{1} << fpos.back();
            const std::size_t sb = std::size_t{1} << spos.back();
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if ((i & fb) && !(i & sb)) std::swap(amps[i], amps[i | sb]);
            }
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (i & fb) continue;
                const cplx a0 = amps[i];
                const cplx a1 = amps[i | fb];
                amps[i] = h * (a0 + a1);
                amps[i | fb] = h * (a0 - a1);
            }
        }
    }
    std::vector<cplx> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t idx = 0;
        double sign = 1.0;
        for (std::size_t k = 0; k < fpos.size(); ++k) {
            const std::size_t b = ((i >> fpos[k]) & 1U) + 2 * ((i >> spos[k]) & 1U);
            // the circuit maps psi- to -|1>|1>
            if (b == 3) sign = -sign;
            idx += b << (2 * k);
        }
        out[idx] = sign * amps[i];
    }
    return out;
}

/// <spec|state> for the 64 three-DOF specs of one pair, by HyperBellSpec::index().
inline std::array<cplx, 64> bell_coefficients(const StateVector& state, std::pair<Photon, Photon> pair) {
    const std::vector<cplx> v = bell_basis_amplitudes(state, {pair});
    std::array<cplx, 64> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

// ---------------------------------------------------------------------------
// Mixed states as exact Bell-diagonal ensembles

struct EnsembleTerm {
    double weight = 0.0;
    HyperBellSpec spec;
};

struct MixedEnsemble {
    std::vector<EnsembleTerm> terms;
    /// Set for ensembles built by canonical_ensemble(): (F1, F2, F3).
    std::optional<std::array<double, 3>> fidelities;

    void validate() const {
        double total = 0.0;
        for (const auto& t : terms) {
            if (!(t.weight >= 0.0)) throw std::invalid_argument("MixedEnsemble: negative weight");
            total += t.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("MixedEnsemble: weights do not sum to 1");
    }

    /// Probability that the given DOF is phi+.
    [[nodiscard]] double dof_fidelity(Dof d) const {
        double f = 0.0;
        for (const auto& t : terms) {
            if (t.spec.at(d) == BellLabel::phi_plus()) f += t.weight;
        }
        return f;
    }

    /// Probability of the target state (phi+, phi+, phi+).
    [[nodiscard]] double fidelity() const {
        double f = 0.0;
        for (const auto& t : terms) {
            if (t.spec == HyperBellSpec::all(BellLabel::phi_plus())) f += t.weight;
        }
        return f;
    }

    /// True when every term is in {phi+, psi+}^3 and the weights are the
    /// product of per-DOF marginals (the bit-flip-only product form).
    [[nodiscard]] bool is_canonical(double tol = 1e-12) const {
        const std::array<double, 3> f{dof_fidelity(Dof::P), dof_fidelity(Dof::F), dof_fidelity(Dof::S)};
        std::array<double, 64> w{};
        for (const auto& t : terms) {
            if (t.spec.t) return false;
            for (Dof d : kSixQubitDofs) {
                if (t.spec.at(d).minus) return false;
            }
            w[static_cast<std::size_t>(t.spec.index())] += t.weight;
        }
        for (int i = 0; i < 64; ++i) {
            const HyperBellSpec s = HyperBellSpec::from_index(i);
            double expect = 1.0;
            for (std::size_t k = 0; k < 3; ++k) {
                const BellLabel b = s.at(kSixQubitDofs[k]);
                if (b.minus) {
                    expect = 0.0;
                    break;
                }
                expect *= b.parity == Parity::Even ? f[k] : 1.0 - f[k];
            }
            if (std::abs(expect - w[static_cast<std::size_t>(i)]) > tol) return false;
        }
        return true;
    }
};

/// Bit-flip-noise product ensemble: per DOF, phi+ with probability F_i and
/// psi+ with 1 - F_i. Terms of exactly zero weight are omitted.
inline MixedEnsemble canonical_ensemble(double f1, double f2, double f3) {
    const std::array<double, 3> f{f1, f2, f3};
    for (double v : f) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("canonical_ensemble: fidelity outside [0, 1]");
    }
    MixedEnsemble e;
    e.fidelities = f;
    for (int mask = 0; mask < 8; ++mask) {
        HyperBellSpec spec = HyperBellSpec::all(BellLabel::phi_plus());
        double w = 1.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const bool flipped = (mask >> k) & 1;
            w *= flipped ? 1.0 - f[k] : f[k];
            if (flipped) spec.set(kSixQubitDofs[k], BellLabel::psi_plus());
        }
        if (w > 0.0) e.terms.push_back({w, spec});
    }
    return e;
}

/// Bell-diagonal ensemble from 64 (unnormalized) weights.
inline MixedEnsemble ensemble_from_weights(const std::array<double, 64>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::domain_error("ensemble_from_weights: zero total weight");
    MixedEnsemble e;
    for (int i = 0; i < 64; ++i) {
        const double w = weights[static_cast<std::size_t>(i)] / total;
        if (w > 0.0) e.terms.push_back({w, HyperBellSpec::from_index(i)});
    }
    return e;
}

} // namespace hyperepp
