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
 * Support code for the command-line tool: run configuration, key = value
 * config files, CSV emission and a small SVG line-plot renderer.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "cavity.hpp"

namespace hyperepp {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "HYPEREPP_OUT_DIR";

struct RunConfig {
    std::string command;
    std::string preset = "barclay";
    std::optional<double> g;     ///< /2pi GHz
    std::optional<double> kappa; ///< /2pi GHz
    std::optional<double> gamma; ///< /2pi GHz
    double cavity_detuning = 0.0;
    double nv_detuning = 0.0;
    InteractionMode mode = InteractionMode::Ideal;
    std::array<double, 3> fidelities{0.8, 0.8, 0.8};
    int rounds = 1;
    std::optional<GridSpec> grid;
    std::string figure = "fig8a";
    std::string out;
    std::string plot;

    void validate() const {
        for (double f : fidelities) {
            if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("F values must lie in [0, 1]");
        }
        if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
        if (grid) grid->validate();
        if (preset != "barclay" && preset != "custom") throw std::invalid_argument("unknown preset '" + preset + "'");
    }

    /// Explicit g/kappa/gamma override the preset; all three must be given.
    [[nodiscard]] CavityParams cavity() const {
        const int given = (g ? 1 : 0) + (kappa ? 1 : 0) + (gamma ? 1 : 0);
        if (given == 0 && preset == "barclay") {
            return CavityParams::from_ghz_over_2pi(0.30, 26.0, 0.0004, cavity_detuning, nv_detuning);
        }
        if (given != 3) throw std::invalid_argument("give all of g, kappa and gamma, or none");
        return CavityParams::from_ghz_over_2pi(*g, *kappa, *gamma, cavity_detuning, nv_detuning);
    }
};

/// Parses `key = value` lines; blank lines and lines starting with '#' are skipped.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(t.substr(eq + 1));
    }
    return out;
}

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + v + "'");
    }
    if (used != v.size()) throw std::invalid_argument("config key '" + key + "': trailing characters in '" + v + "'");
    return d;
}

} // namespace detail

/// Applies config-file values to `cfg`. Unknown keys are errors.
inline void apply_config(const std::map<std::string, std::string>& kv, RunConfig& cfg) {
    for (const auto& [k, v] : kv) {
        if (k == "preset") {
            cfg.preset = v;
        } else if (k == "g") {
            cfg.g = detail::parse_double(k, v);
        } else if (k == "kappa") {
            cfg.kappa = detail::parse_double(k, v);
        } else if (k == "gamma") {
            cfg.gamma = detail::parse_double(k, v);
        } else if (k == "cavity_detuning") {
            cfg.cavity_detuning = detail::parse_double(k, v);
        } else if (k == "nv_detuning") {
            cfg.nv_detuning = detail::parse_double(k, v);
        } else if (k == "mode") {
            cfg.mode = parse_mode(v);
        } else if (k == "F") {
            std::istringstream is(v);
            std::array<double, 3> f{};
            std::string tok;
            for (double& x : f) {
                if (!(is >> tok)) throw std::invalid_argument("config key 'F' needs three values");
                x = detail::parse_double(k, tok);
            }
            if (is >> tok) throw std::invalid_argument("config key 'F' needs three values");
            cfg.fidelities = f;
        } else if (k == "rounds") {
            cfg.rounds = static_cast<int>(detail::parse_double(k, v));
        } else if (k == "start" || k == "stop" || k == "points") {
            if (!cfg.grid) cfg.grid = GridSpec{};
            if (k == "start") cfg.grid->start = detail::parse_double(k, v);
            if (k == "stop") cfg.grid->stop = detail::parse_double(k, v);
            if (k == "points") cfg.grid->points = static_cast<std::size_t>(detail::parse_double(k, v));
        } else if (k == "figure") {
            cfg.figure = v;
        } else if (k == "out") {
            cfg.out = v;
        } else if (k == "plot") {
            cfg.plot = v;
        } else {
            throw std::invalid_argument("unknown config key '" + k + "'");
        }
    }
}

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

/// Fixed 15-significant-digit formatting; trailing zeros are kept.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.15g", v);
    return buf;
}

inline void write_csv(const Table& t, std::ostream& os) {
    if (t.columns.empty() || t.rows.empty()) throw std::invalid_argument("emit_csv: empty table");
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) throw std::invalid_argument("emit_csv: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

/// Resolves the output path: "-" means stdout, empty means
/// <$HYPEREPP_OUT_DIR or .>/<default_name>.
inline std::string resolve_output_path(const std::string& requested, const std::string& default_name) {
    if (!requested.empty()) return requested;
    const char* dir = std::getenv(kOutDirEnv);
    std::string base = (dir && *dir) ? dir : ".";
    if (base.back() != '/') base += '/';
    return base + default_name;
}

inline void emit_csv(const Table& t, const std::string& path) {
    if (path == "-") {
        write_csv(t, std::cout);
        return;
    }
    std::ostringstream ss;
    write_csv(t, ss);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << ss.str();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

/// Line plot of every non-x column against column 0.
inline std::string render_svg(const Table& t, const std::string& title) {
    if (t.columns.size() < 2 || t.rows.empty()) throw std::invalid_argument("render_svg: nothing to plot");
    const double w = 640.0;
    const double h = 420.0;
    const double ml = 70.0;
    const double mr = 150.0;
    const double mt = 40.0;
    const double mb = 50.0;
    double xmin = t.rows.front()[0];
    double xmax = xmin;
    double ymin = t.rows.front()[1];
    double ymax = ymin;
    for (const auto& row : t.rows) {
        xmin = std::min(xmin, row[0]);
        xmax = std::max(xmax, row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            ymin = std::min(ymin, row[c]);
            ymax = std::max(ymax, row[c]);
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
    static constexpr std::array<const char*, 6> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
       << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        char xb[32];
        char yb[32];
        std::snprintf(xb, sizeof xb, "%.3g", xv);
        std::snprintf(yb, sizeof yb, "%.4g", yv);
        os << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 18 << "\" text-anchor=\"middle\" font-size=\"11\""
           << " font-family=\"sans-serif\">" << xb << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\""
           << " font-family=\"sans-serif\">" << yb << "</text>\n";
    }
    os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\" font-size=\"12\""
       << " font-family=\"sans-serif\">" << t.columns[0] << "</text>\n";
    for (std::size_t c = 1; c < t.columns.size(); ++c) {
        const char* color = colors[(c - 1) % colors.size()];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : t.rows) os << px(row[0]) << ',' << py(row[c]) << ' ';
        os << "\"/>\n";
        const double ly = mt + 18.0 * static_cast<double>(c);
        os << "<line x1=\"" << w - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << w - mr + 30 << "\" y2=\"" << ly
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << w - mr + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\" font-family=\"sans-serif\">"
           << t.columns[c] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace hyperepp
