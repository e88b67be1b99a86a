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
 * Single-photon reflection from an NV center in a single-sided microcavity.
 *
 * All rates and frequencies are angular frequencies expressed in one common
 * unit. Values quoted as "x/2pi GHz" are converted with from_ghz_over_2pi().
 */

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hyperepp {

using cplx = std::complex<double>;

/// Physical parameters of one NV-cavity unit.
struct CavityParams {
    double g = 0.0;       ///< NV-cavity coupling strength
    double kappa = 1.0;   ///< cavity damping rate
    double gamma = 1.0;   ///< NV decay rate
    double omega_c = 0.0; ///< cavity frequency
    double omega_0 = 0.0; ///< NV transition frequency
    double omega_p = 0.0; ///< photon frequency

    /// Throws std::invalid_argument on negative or non-finite fields.
    void validate() const {
        auto finite = [](double v) { return std::isfinite(v); };
        if (!finite(g) || !finite(kappa) || !finite(gamma) || !finite(omega_c) ||
            !finite(omega_0) || !finite(omega_p)) {
            throw std::invalid_argument("CavityParams: non-finite field");
        }
        if (g < 0.0 || kappa < 0.0 || gamma < 0.0) {
            throw std::invalid_argument("CavityParams: g, kappa and gamma must be non-negative");
        }
    }

    [[nodiscard]] bool resonant() const {
        return omega_c == omega_p && omega_0 == omega_p;
    }

    /// g / sqrt(kappa * gamma). Infinite when kappa * gamma == 0.
    [[nodiscard]] double cooperativity_ratio() const {
        return g / std::sqrt(kappa * gamma);
    }

    /// Builds parameters from values quoted divided by 2pi (e.g. GHz).
    /// Detunings are (omega_c - omega_p) and (omega_0 - omega_p).
    static CavityParams from_ghz_over_2pi(double g, double kappa, double gamma,
                                          double cavity_detuning = 0.0,
                                          double nv_detuning = 0.0) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        CavityParams p;
        p.g = two_pi * g;
        p.kappa = two_pi * kappa;
        p.gamma = two_pi * gamma;
        p.omega_p = 0.0;
        p.omega_c = two_pi * cavity_detuning;
        p.omega_0 = two_pi * nv_detuning;
        p.validate();
        return p;
    }

    /// Resonant unit with the given g / sqrt(kappa * gamma); kappa = gamma = 1.
    static CavityParams resonant_with_ratio(double ratio) {
        if (!(ratio >= 0.0) || !std::isfinite(ratio)) {
            throw std::invalid_argument("resonant_with_ratio: ratio must be finite and >= 0");
        }
        CavityParams p;
        p.g = ratio;
        p.kappa = 1.0;
        p.gamma = 1.0;
        return p;
    }
};

/// Chip-based microcavity of Barclay et al. (2009): total g with ZPL gamma,
/// [g, kappa, gamma]/2pi = [0.30, 26, 0.0004] GHz, on resonance.
inline CavityParams barclay_preset() {
    return CavityParams::from_ghz_over_2pi(0.30, 26.0, 0.0004);
}

/// Reflection amplitudes for a coupled (r) and an empty (r0) cavity.
struct ReflectionPair {
    cplx r{1.0, 0.0};
    cplx r0{-1.0, 0.0};
};

enum class InteractionMode {
    Ideal,     ///< |R,+1> -> |R,+1>, |R,-1> -> -|R,-1>, ...
    Realistic, ///< factors r and r0 from a ReflectionPair
};

inline std::string to_string(InteractionMode mode) {
    return mode == InteractionMode::Ideal ? "ideal" : "realistic";
}

inline InteractionMode parse_mode(const std::string& text) {
    if (text == "ideal") return InteractionMode::Ideal;
    if (text == "realistic") return InteractionMode::Realistic;
    throw std::invalid_argument("unknown interaction mode '" + text + "'");
}

namespace detail {

inline cplx checked_ratio(cplx num, cplx den, const char* what) {
    if (den == cplx{0.0, 0.0}) {
        throw std::domain_error(std::string(what) + ": vanishing denominator");
    }
    cplx out = num / den;
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
        throw std::domain_error(std::string(what) + ": non-finite result");
    }
    return out;
}

} // namespace detail

/// Reflection coefficient of the coupled NV-cavity unit at the photon frequency.
inline cplx reflection_coupled(const CavityParams& p) {
    p.validate();
    const cplx i{0.0, 1.0};
    const cplx cav = i * (p.omega_c - p.omega_p);
    const cplx nv = i * (p.omega_0 - p.omega_p) + p.gamma / 2.0;
    const double g2 = p.g * p.g;
    return detail::checked_ratio((cav - p.kappa / 2.0) * nv + g2,
                                 (cav + p.kappa / 2.0) * nv + g2, "reflection_coupled");
}

/// Reflection coefficient of the empty cavity (g = 0).
inline cplx reflection_empty(const CavityParams& p) {
    p.validate();
    const cplx i{0.0, 1.0};
    const cplx cav = i * (p.omega_c - p.omega_p);
    return detail::checked_ratio(cav - p.kappa / 2.0, cav + p.kappa / 2.0, "reflection_empty");
}

/// Both coefficients. On exact resonance r is real and r0 is exactly -1.
inline ReflectionPair reflection_pair(const CavityParams& p) {
    if (p.resonant()) {
        p.validate();
        const double kg = p.kappa * p.gamma;
        const double g4 = 4.0 * p.g * p.g;
        if (kg + g4 == 0.0) {
            throw std::domain_error("reflection_pair: vanishing denominator");
        }
        // r0 = -1 holds only for kappa > 0.
        if (p.kappa == 0.0) {
            throw std::domain_error("reflection_pair: kappa = 0 on resonance");
        }
        return {cplx{(g4 - kg) / (g4 + kg), 0.0}, cplx{-1.0, 0.0}};
    }
    return {reflection_coupled(p), reflection_empty(p)};
}

/// Resonant pair for a given g / sqrt(kappa * gamma): r = (4x^2 - 1)/(4x^2 + 1).
inline ReflectionPair resonant_pair_for_ratio(double ratio) {
    return reflection_pair(CavityParams::resonant_with_ratio(ratio));
}

enum class Polarization { R = 0, L = 1 };
enum class Spin { Plus = 0, Minus = 1 };

/// Amplitude factor picked up by a photon reflected off the unit.
/// Matching handedness (R,+1)/(L,-1) sees the coupled cavity (r), the other
/// combination the empty one (r0). Ideal mode is the limit r = 1, r0 = -1,
/// i.e. R acts as sigma_z on the spin and L as -sigma_z.
inline cplx scatter(Polarization pol, Spin spin, InteractionMode mode, const ReflectionPair& refl) {
    const bool coupled = static_cast<int>(pol) == static_cast<int>(spin);
    if (mode == InteractionMode::Ideal) {
        return coupled ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    }
    return coupled ? refl.r : refl.r0;
}

} // namespace hyperepp
