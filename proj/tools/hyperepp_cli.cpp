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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hyperepp/hyperepp.hpp"

namespace {

using namespace hyperepp;

/// Writes the table and returns where it went (for the summary line).
std::string write_output(const Table& t, const RunConfig& cfg, const std::string& default_name) {
    const std::string path = resolve_output_path(cfg.out, default_name);
    emit_csv(t, path);
    return path == "-" ? "stdout" : path;
}

std::ostream& summary_stream(const RunConfig& cfg) { return cfg.out == "-" ? std::cerr : std::cout; }

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * v);
    return buf;
}

std::string num(double v, const char* fmt = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

int cmd_reflection(const RunConfig& cfg) {
    const CavityParams p = cfg.cavity();
    const ReflectionPair refl = reflection_pair(p);
    Table t{{"g_over_sqrt_kappa_gamma", "r_re", "r_im", "r0_re", "r0_im"},
            {{p.cooperativity_ratio(), refl.r.real(), refl.r.imag(), refl.r0.real(), refl.r0.imag()}}};
    const std::string where = write_output(t, cfg, "reflection.csv");
    summary_stream(cfg) << "reflection: g/sqrt(kappa gamma) = " << num(p.cooperativity_ratio(), "%.4g")
                        << ", r = " << num(refl.r.real(), "%.6f") << (refl.r.imag() < 0 ? " - " : " + ")
                        << num(std::abs(refl.r.imag()), "%.3g") << "i, r0 = " << num(refl.r0.real(), "%.6f")
                        << (refl.r0.imag() < 0 ? " - " : " + ") << num(std::abs(refl.r0.imag()), "%.3g")
                        << "i -> " << where << '\n';
    return 0;
}

int cmd_qnd(const RunConfig& cfg) {
    const ReflectionPair refl = reflection_pair(cfg.cavity());
    const QndPerformance q = qnd_performance(refl);
    Table t;
    t.columns = {"r_re", "r_im", "r0_re", "r0_im", "F_P1", "F_P2", "eta_P1", "eta_P2"};
    std::vector<double> row{refl.r.real(), refl.r.imag(), refl.r0.real(), refl.r0.imag(),
                            q.f_p1,        q.f_p2,        q.eta_p1,       q.eta_p2};
    for (int k = 1; k <= 8; ++k) t.columns.push_back("F_S" + std::to_string(k));
    for (int k = 1; k <= 8; ++k) t.columns.push_back("eta_S" + std::to_string(k));
    row.insert(row.end(), q.f_s.begin(), q.f_s.end());
    row.insert(row.end(), q.eta_s.begin(), q.eta_s.end());
    t.rows.push_back(row);
    const std::string where = write_output(t, cfg, "qnd.csv");
    summary_stream(cfg) << "qnd: F_P1,2 = " << pct(q.f_p1) << ", " << pct(q.f_p2) << "; eta_P1,2 = " << pct(q.eta_p1)
                        << ", " << pct(q.eta_p2) << "; F_S1,2,3 = " << pct(q.f_s[0]) << ", " << pct(q.f_s[1]) << ", "
                        << pct(q.f_s[2]) << "; eta_S1,2,3 = " << pct(q.eta_s[0]) << ", " << pct(q.eta_s[1]) << ", "
                        << pct(q.eta_s[2]) << " -> " << where << '\n';
    return 0;
}

int cmd_swap(const RunConfig& cfg) {
    const ReflectionPair refl = reflection_pair(cfg.cavity());
    const SwapPerformance s = swap_performance_max_entangled(refl);
    Table t{{"r_re", "r_im", "r0_re", "r0_im", "F_SWAP", "eta_SWAP"},
            {{refl.r.real(), refl.r.imag(), refl.r0.real(), refl.r0.imag(), s.f_swap, s.eta_swap}}};
    const std::string where = write_output(t, cfg, "swap.csv");
    summary_stream(cfg) << "swap: F_SWAP = " << pct(s.f_swap) << ", eta_SWAP = " << pct(s.eta_swap) << " -> " << where
                        << '\n';
    return 0;
}

int cmd_epp(const RunConfig& cfg) {
    const ReflectionPair refl =
        cfg.mode == InteractionMode::Ideal ? ReflectionPair{} : reflection_pair(cfg.cavity());
    const auto& f = cfg.fidelities;
    const EppReport rep = run_epp(f[0], f[1], f[2], cfg.rounds, cfg.mode, refl);
    Table t;
    t.columns = {"round", "F1_in", "F2_in", "F3_in", "F1_out", "F2_out", "F3_out", "Fprime", "Y1", "Y2", "survival"};
    for (int k = 1; k <= 8; ++k) t.columns.push_back("P_case" + std::to_string(k));
    for (const auto& r : rep.rounds) {
        std::vector<double> row{static_cast<double>(r.round), r.f_in[0], r.f_in[1], r.f_in[2], r.f_out[0], r.f_out[1],
                                r.f_out[2], r.f_out_product, r.y1, r.y2, r.survival};
        row.insert(row.end(), r.case_probabilities.begin(), r.case_probabilities.end());
        t.rows.push_back(std::move(row));
    }
    const std::string where = write_output(t, cfg, "epp.csv");
    const auto& last = rep.last();
    summary_stream(cfg) << "epp (" << to_string(cfg.mode) << "): " << rep.rounds.size()
                        << " round(s), F' = " << num(last.f_out_product) << ", Y1 = " << num(rep.rounds.front().y1)
                        << ", Y2 = " << num(rep.rounds.front().y2) << " -> " << where << '\n';
    return 0;
}

int cmd_figure(const RunConfig& cfg) {
    const FigureId id = parse_figure(cfg.figure);
    const GridSpec grid = cfg.grid.value_or(default_grid(id));
    const Table t = figure_data(id, grid);
    const std::string where = write_output(t, cfg, to_string(id) + ".csv");
    if (!cfg.plot.empty()) {
        std::ofstream out(cfg.plot, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + cfg.plot + "' for writing");
        out << render_svg(t, to_string(id));
    }
    summary_stream(cfg) << "figure " << to_string(id) << ": " << t.rows.size() << " rows -> " << where
                        << (cfg.plot.empty() ? "" : ", plot -> " + cfg.plot) << '\n';
    return 0;
}

int cmd_validate() {
    const ValidationReport rep = run_validation();
    for (const auto& c : rep.checks) {
        std::cout << (c.passed() ? "ok   " : "FAIL ") << c.name << ": max error " << num(c.max_error, "%.3e")
                  << " (tolerance " << num(c.tolerance, "%.0e") << ")\n";
    }
    for (const auto& d : rep.table_flags) {
        std::cout << "flag probability table: case " << d.case_id.id() << ", " << to_string(d.dof) << " "
                  << (d.label == 0 ? "phi+" : "psi+") << " printed " << to_string(d.published) << ", derived "
                  << to_string(d.derived) << '\n';
    }
    for (const auto& k : rep.ket_flags) std::cout << "flag displayed ket " << k.name << ": " << k.reason << '\n';
    std::cout << "validate: " << (rep.passed() ? "passed" : "FAILED") << ", " << rep.checks.size() << " checks, "
              << rep.table_flags.size() << " table flag(s), " << rep.ket_flags.size() << " ket flag(s)\n";
    return rep.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperentanglement purification simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string preset;
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    double cavity_detuning = 0.0;
    double nv_detuning = 0.0;
    std::string mode;
    std::vector<double> fids;
    int rounds = 1;
    std::string figure;
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 0;
    std::string out;
    std::string plot;

    auto* o_config = app.add_option("--config", config_path, "key = value config file; flags override it");
    auto* o_preset = app.add_option("--preset", preset, "cavity preset (barclay)");
    auto* o_g = app.add_option("--g", g, "coupling g/2pi in GHz");
    auto* o_kappa = app.add_option("--kappa", kappa, "cavity decay kappa/2pi in GHz");
    auto* o_gamma = app.add_option("--gamma", gamma, "NV decay gamma/2pi in GHz");
    auto* o_cdet = app.add_option("--cavity-detuning", cavity_detuning, "(omega_c - omega_p)/2pi in GHz");
    auto* o_ndet = app.add_option("--nv-detuning", nv_detuning, "(omega_0 - omega_p)/2pi in GHz");
    auto* o_mode = app.add_option("--mode", mode, "ideal or realistic")->check(CLI::IsMember({"ideal", "realistic"}));
    auto* o_f = app.add_option("--F", fids, "input fidelities F1 F2 F3")->expected(3);
    auto* o_rounds = app.add_option("--rounds", rounds, "purification rounds");
    auto* o_figure = app.add_option("--figure", figure, "figure id");
    auto* o_start = app.add_option("--start", start, "grid start");
    auto* o_stop = app.add_option("--stop", stop, "grid stop");
    auto* o_points = app.add_option("--points", points, "grid points");
    auto* o_out = app.add_option("--out", out, "CSV output path ('-' for stdout)");
    auto* o_plot = app.add_option("--plot", plot, "SVG plot path (figure only)");

    for (const char* name : {"reflection", "qnd", "swap", "epp", "figure", "validate"}) {
        app.add_subcommand(name)->fallthrough();
    }
    app.get_subcommand("reflection")->description("reflection coefficients of the configured cavity");
    app.get_subcommand("qnd")->description("parity-check fidelities and efficiencies");
    app.get_subcommand("swap")->description("P-P SWAP fidelity and efficiency");
    app.get_subcommand("epp")->description("run purification rounds");
    app.get_subcommand("figure")->description("figure data CSV and optional SVG plot");
    app.get_subcommand("validate")->description("self-check circuits against closed forms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        cfg.command = app.get_subcommands().front()->get_name();
        if (o_config->count()) apply_config(read_config_file(config_path), cfg);
        if (o_preset->count()) cfg.preset = preset;
        if (o_g->count()) cfg.g = g;
        if (o_kappa->count()) cfg.kappa = kappa;
        if (o_gamma->count()) cfg.gamma = gamma;
        if (o_cdet->count()) cfg.cavity_detuning = cavity_detuning;
        if (o_ndet->count()) cfg.nv_detuning = nv_detuning;
        if (o_mode->count()) cfg.mode = parse_mode(mode);
        if (o_f->count()) cfg.fidelities = {fids[0], fids[1], fids[2]};
        if (o_rounds->count()) cfg.rounds = rounds;
        if (o_figure->count()) cfg.figure = figure;
        if (o_start->count() || o_stop->count() || o_points->count()) {
            GridSpec gs = cfg.grid.value_or(default_grid(parse_figure(cfg.figure)));
            if (o_start->count()) gs.start = start;
            if (o_stop->count()) gs.stop = stop;
            if (o_points->count()) gs.points = points;
            cfg.grid = gs;
        }
        if (o_out->count()) cfg.out = out;
        if (o_plot->count()) cfg.plot = plot;
        cfg.validate();

        if (cfg.command == "reflection") return cmd_reflection(cfg);
        if (cfg.command == "qnd") return cmd_qnd(cfg);
        if (cfg.command == "swap") return cmd_swap(cfg);
        if (cfg.command == "epp") return cmd_epp(cfg);
        if (cfg.command == "figure") return cmd_figure(cfg);
        return cmd_validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
