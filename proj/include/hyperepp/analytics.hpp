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
 * Closed-form fidelities and efficiencies of the QND and SWAP devices, and the
 * tables behind the fidelity/yield and device-performance figures.
 *
 * Formulas are written term by term in complex arithmetic, so they remain
 * valid off resonance.
 */

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavity.hpp"
#include "parallel.hpp"
#include "protocol.hpp"

namespace hyperepp {

namespace detail {

inline double abs2(cplx z) { return std::norm(z); }

inline double checked_div(double num, double den, const char* what) {
    if (den == 0.0) throw std::domain_error(std::string(what) + ": zero denominator");
    return num / den;
}

} // namespace detail

struct QndPerformance {
    double f_p1 = 0.0;
    double f_p2 = 0.0;
    double eta_p1 = 0.0;
    double eta_p2 = 0.0;
    std::array<double, 8> f_s{}; ///< f_s[0] is F_S1
    std::array<double, 8> eta_s{};
};

inline QndPerformance qnd_performance(cplx r, cplx r0) {
    using detail::abs2;
    using detail::checked_div;
    const cplx r2 = r * r;
    const cplx q2 = r0 * r0;
    QndPerformance out;

    const double np1 = 2.0 + abs2(r2) + abs2(q2);
    const double np2 = abs2(r) + abs2(r0);
    out.f_p1 = checked_div(abs2(2.0 + r2 + q2), 4.0 * np1, "F_P1");
    out.f_p2 = checked_div(abs2(r - r0), 2.0 * np2, "F_P2");
    out.eta_p1 = np1 / 4.0;
    out.eta_p2 = np2 / 2.0;

    const double n1 = 4.0 * (abs2(r2) + abs2(q2)) + (abs2(r2 * r2) + 2.0 * abs2(r2 * q2) + abs2(q2 * q2)) + 4.0;
    const double n2 = abs2(r2 * q2) + 2.0 * abs2(r * r0) + 1.0;
    const double n3 = (abs2(r2 * r) + abs2(q2 * r0) + abs2(r0 * r2) + abs2(q2 * r)) + 2.0 * (abs2(r) + abs2(r0));
    const double n4 = abs2(r * q2) + abs2(r0 * r2) + abs2(r) + abs2(r0);
    const double n5 = (abs2(r2 * r) + abs2(r * q2) + abs2(r0 * r2) + abs2(q2 * r0)) + 2.0 * (abs2(r) + abs2(r0));
    const double n6 = abs2(r) + abs2(r0) + abs2(r * q2) + abs2(r0 * r2);
    const double n7 = abs2(r2) + 2.0 * abs2(r * r0) + abs2(q2);

    out.f_s[0] = checked_div(abs2((r2 + q2) * (r2 + q2) + 4.0 * (r2 + q2) + 4.0), 16.0 * n1, "F_S1");
    out.f_s[1] = checked_div(abs2(r2 * q2 - 2.0 * r * r0 + 1.0), 4.0 * n2, "F_S2");
    out.f_s[2] = checked_div(abs2((r2 + q2) * (r - r0) + 2.0 * (r - r0)), 8.0 * n3, "F_S3");
    out.f_s[3] = checked_div(abs2((r - r0) * (1.0 - r * r0)), 4.0 * n4, "F_S4");
    out.f_s[4] = checked_div(abs2((r2 + q2) * (r - r0) + 2.0 * (r - r0)), 8.0 * n5, "F_S5");
    out.f_s[5] = checked_div(abs2((r - r0) * (1.0 - r * r0)), 4.0 * n6, "F_S6");
    out.f_s[6] = checked_div(abs2(r2 + q2 - 2.0 * r * r0), 4.0 * n7, "F_S7");
    out.f_s[7] = checked_div(abs2(r2 + q2 - 2.0 * r * r0), 4.0 * n7, "F_S8");

    out.eta_s = {n1 / 16.0, n2 / 4.0, n3 / 8.0, n4 / 4.0, n5 / 8.0, n6 / 4.0, n7 / 4.0, n7 / 4.0};
    return out;
}

inline QndPerformance qnd_performance(const ReflectionPair& p) { return qnd_performance(p.r, p.r0); }

/// Which P-QND expression (1 or 2) covers a state with this P parity.
inline int p_qnd_formula_index(Parity p) { return p == Parity::Even ? 1 : 2; }

/// Which S-QND expression (1..8) covers a state with these P, F, S parities.
inline int s_qnd_formula_index(Parity p, Parity f, Parity s) {
    return 1 + (p == Parity::Odd ? 1 : 0) + (s == Parity::Odd ? 2 : 0) + (f == Parity::Odd ? 4 : 0);
}

struct SwapPerformance {
    double f_swap = 0.0;
    double eta_swap = 0.0;
};

/// Per-photon input amplitudes (alpha on R, beta on L).
struct SwapAmplitudes {
    cplx alpha1{1.0, 0.0};
    cplx beta1{0.0, 0.0};
    cplx alpha2{1.0, 0.0};
    cplx beta2{0.0, 0.0};

    static SwapAmplitudes balanced() {
        const double h = 1.0 / std::sqrt(2.0);
        return {h, h, h, h};
    }
};

/// General-amplitude P-P SWAP fidelity and efficiency.
inline SwapPerformance swap_performance(cplx r, cplx r0, const SwapAmplitudes& a) {
    const auto [a1, b1, a2, b2] = a;
    if (std::abs(detail::abs2(a1) + detail::abs2(b1) - 1.0) > 1e-9 ||
        std::abs(detail::abs2(a2) + detail::abs2(b2) - 1.0) > 1e-9) {
        throw std::invalid_argument("swap_performance: amplitudes not normalized per photon");
    }
    const cplx r2 = r * r;
    const cplx r3 = r2 * r;
    const cplx q2 = r0 * r0;
    const cplx q3 = q2 * r0;
    const cplx sym = a1 * b2 + b1 * a2;
    const cplx anti = a1 * b2 - b1 * a2;
    const cplx bb = b1 * b2;
    const cplx aa = a1 * a2;
    const std::array<cplx, 8> t{
        2.0 * aa * r2 + sym * (r2 * r0 + r3 + q3 - q2 * r) + bb * (r2 * r2 + q2 * q2),
        2.0 * aa * r2 + sym * (r2 * r0 + r3 - q3 + q2 * r) + bb * (r2 * r2 - q2 * q2 + 2.0 * r2 * q2),
        2.0 * aa * r - anti * (r2 + q2) - bb * (r * q2 + r3 + q3 - r0 * r2),
        2.0 * aa * r - anti * (2.0 * r * r0 + r2 - q2) - bb * (r * q2 + r3 - q3 + r0 * r2),
        2.0 * aa * r + anti * (r2 + q2) - bb * (r * q2 + r3 + q3 - r0 * r2),
        2.0 * aa * r + anti * (2.0 * r * r0 + r2 - q2) - bb * (r * q2 + r3 - q3 + r0 * r2),
        2.0 * aa - 2.0 * sym * r0 + 2.0 * bb * q2,
        2.0 * aa - 2.0 * sym * r + 2.0 * bb * r2,
    };
    const std::array<cplx, 8> m{
        (a1 - b1) * (a2 - b2), (a1 + b1) * (a2 + b2), (a1 + b1) * (a2 - b2), (a1 - b1) * (a2 + b2),
        (a1 - b1) * (a2 + b2), (a1 + b1) * (a2 - b2), (a1 + b1) * (a2 + b2), (a1 - b1) * (a2 - b2),
    };
    double eta = 0.0;
    cplx fsum{0.0, 0.0};
    for (std::size_t k = 0; k < 8; ++k) {
        eta += detail::abs2(t[k]);
        fsum += t[k] * m[k] / 16.0;
    }
    eta /= 32.0;
    return {detail::checked_div(detail::abs2(fsum), eta, "F'_SWAP"), eta};
}

/// Balanced-input P-P SWAP fidelity and efficiency (all amplitudes equal).
inline SwapPerformance swap_performance_max_entangled(cplx r, cplx r0) {
    using detail::abs2;
    const cplx r2 = r * r;
    const cplx r3 = r2 * r;
    const cplx q2 = r0 * r0;
    const cplx q3 = q2 * r0;
    const cplx f1 = (2.0 * r2 + 2.0 * (r2 * r0 + r3 - q3 + q2 * r) + r2 * r2 - q2 * q2 + 2.0 * r2 * q2) / 16.0;
    const cplx f2 = (r0 - 1.0) * (r0 - 1.0) / 8.0;
    const double eta = (abs2(r2 + r2 * r0 + r3 + q3 - q2 * r + 0.5 * (r2 * r2 + q2 * q2)) +
                        abs2(r2 + r2 * r0 + r3 - q3 + q2 * r + 0.5 * (r2 * r2 - q2 * q2 + 2.0 * r2 * q2)) +
                        2.0 * abs2(r - 0.5 * (r * q2 + r3 + q3 - r0 * r2)) +
                        2.0 * abs2(r - 0.5 * (r * q2 + r3 - q3 + r0 * r2)) + abs2(1.0 - 2.0 * r0 + q2) +
                        abs2(1.0 - 2.0 * r + r2)) /
                       32.0;
    return {detail::checked_div(abs2(f1 + f2), eta, "F_SWAP"), eta};
}

inline SwapPerformance swap_performance_max_entangled(const ReflectionPair& p) {
    return swap_performance_max_entangled(p.r, p.r0);
}

// ---------------------------------------------------------------------------
// Figure tables

enum class FigureId { Fig8a, Fig8b, Fig10, Fig10b, Fig11, Fig11b, Fig12, Fig12b };

inline const std::vector<std::pair<FigureId, std::string>>& figure_names() {
    static const std::vector<std::pair<FigureId, std::string>> names{
        {FigureId::Fig8a, "fig8a"}, {FigureId::Fig8b, "fig8b"},   {FigureId::Fig10, "fig10"},
        {FigureId::Fig10b, "fig10b"}, {FigureId::Fig11, "fig11"}, {FigureId::Fig11b, "fig11b"},
        {FigureId::Fig12, "fig12"}, {FigureId::Fig12b, "fig12b"},
    };
    return names;
}

inline std::string to_string(FigureId id) {
    for (const auto& [k, v] : figure_names()) {
        if (k == id) return v;
    }
    throw std::invalid_argument("unknown figure id");
}

inline FigureId parse_figure(const std::string& s) {
    for (const auto& [k, v] : figure_names()) {
        if (v == s) return k;
    }
    throw std::invalid_argument("unknown figure '" + s + "'");
}

inline bool is_fidelity_sweep(FigureId id) { return id == FigureId::Fig8a || id == FigureId::Fig8b; }

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    std::size_t points = 2;

    void validate() const {
        if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
        if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
            throw std::invalid_argument("grid needs finite start < stop");
        }
    }
    [[nodiscard]] double at(std::size_t i) const {
        if (i + 1 == points) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
};

inline GridSpec default_grid(FigureId id) {
    if (is_fidelity_sweep(id)) return {0.5, 1.0, 51};
    return {0.05, 5.0, 100};
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::vector<std::string> figure_columns(FigureId id) {
    switch (id) {
    case FigureId::Fig8a: return {"F", "Fprime_n1", "Fprime_n2", "Fprime_n3"};
    case FigureId::Fig8b: return {"F", "Y1", "Y2"};
    case FigureId::Fig10: return {"g_over_sqrt_kappa_gamma", "F_P1", "F_P2"};
    case FigureId::Fig10b: return {"g_over_sqrt_kappa_gamma", "eta_P1", "eta_P2"};
    case FigureId::Fig11: return {"g_over_sqrt_kappa_gamma", "F_S1", "F_S2", "F_S3"};
    case FigureId::Fig11b: return {"g_over_sqrt_kappa_gamma", "eta_S1", "eta_S2", "eta_S3"};
    case FigureId::Fig12: return {"g_over_sqrt_kappa_gamma", "F_SWAP"};
    case FigureId::Fig12b: return {"g_over_sqrt_kappa_gamma", "eta_SWAP"};
    }
    throw std::invalid_argument("unknown figure id");
}

inline std::vector<double> figure_row(FigureId id, double x) {
    if (is_fidelity_sweep(id)) {
        if (id == FigureId::Fig8a) {
            return {x, iterate_fidelity(x, x, x, 1).product, iterate_fidelity(x, x, x, 2).product,
                    iterate_fidelity(x, x, x, 3).product};
        }
        return {x, efficiency_y1(x, x, x), efficiency_y2(x, x, x)};
    }
    const ReflectionPair refl = resonant_pair_for_ratio(x);
    switch (id) {
    case FigureId::Fig10: {
        const auto q = qnd_performance(refl);
        return {x, q.f_p1, q.f_p2};
    }
    case FigureId::Fig10b: {
        const auto q = qnd_performance(refl);
        return {x, q.eta_p1, q.eta_p2};
    }
    case FigureId::Fig11: {
        const auto q = qnd_performance(refl);
        return {x, q.f_s[0], q.f_s[1], q.f_s[2]};
    }
    case FigureId::Fig11b: {
        const auto q = qnd_performance(refl);
        return {x, q.eta_s[0], q.eta_s[1], q.eta_s[2]};
    }
    case FigureId::Fig12: return {x, swap_performance_max_entangled(refl).f_swap};
    case FigureId::Fig12b: return {x, swap_performance_max_entangled(refl).eta_swap};
    default: break;
    }
    throw std::invalid_argument("unknown figure id");
}

/// Rows ordered by grid index; evaluation may run in parallel.
inline Table figure_data(FigureId id, const GridSpec& grid) {
    grid.validate();
    if (is_fidelity_sweep(id) && (grid.start < 0.0 || grid.stop > 1.0)) {
        throw std::invalid_argument("fidelity grid must lie in [0, 1]");
    }
    if (!is_fidelity_sweep(id) && grid.start < 0.0) {
        throw std::invalid_argument("g/sqrt(kappa gamma) grid must be non-negative");
    }
    Table t{figure_columns(id), std::vector<std::vector<double>>(grid.points)};
    parallel_for(grid.points, [&](std::size_t i) { t.rows[i] = figure_row(id, grid.at(i)); });
    return t;
}

} // namespace hyperepp
