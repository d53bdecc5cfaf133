// Copyright 2026 The pstlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line dispatcher. Exit codes: 0 success, 1 usage or configuration
// error, 2 numerical failure.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pstlab/config.hpp"
#include "pstlab/errors.hpp"
#include "pstlab/experiments.hpp"
#include "pstlab/io.hpp"
#include "pstlab/magnus.hpp"
#include "pstlab/pauli.hpp"
#include "pstlab/pst.hpp"

namespace pstlab {

namespace cli_detail {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> output;
    std::optional<std::string> format;
    bool dump_config = false;
    std::optional<int> qubits;
    std::vector<std::string> drive;
    std::optional<double> tau;
    std::vector<std::string> errors;
    bool no_errors = false;
    std::optional<double> delta;
    std::optional<double> delta_max;
    std::optional<int> delta_points;
    std::vector<std::string> noise;
    std::optional<double> zeta;
    std::vector<int> targets;
    std::vector<double> taus;
    std::optional<int> random_sets;
    std::optional<std::uint64_t> seed;
    std::optional<double> max_amplitude;
    std::optional<double> tolerance;
    std::optional<double> theta;
    std::optional<double> sum_h2;
    bool dump_channel = false;
};

inline double parse_number(const std::string &text, const std::string &what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw InputError(what + ": '" + text + "' is not a number");
    }
    return v;
}

/// LABEL or LABEL=VALUE; a bare label takes `fallback`.
inline PauliTerm parse_term(const std::string &text, const char *what, std::optional<double> fallback) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        if (!fallback) throw InputError(std::string(what) + " expects LABEL=AMPLITUDE, got '" + text + "'");
        return PauliTerm{PauliString::from_label(text), *fallback};
    }
    return PauliTerm{PauliString::from_label(text.substr(0, eq)),
                     parse_number(text.substr(eq + 1), what)};
}

inline std::string format_g7(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", x);
    return buf;
}

inline std::string dump(const ordered_json &j) { return j.dump(2) + "\n"; }

inline ordered_json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw InputError("config file " + path + " is not valid JSON: " + e.what());
    }
}

inline void add_common(CLI::App *sub, Flags &f, bool uses_qubits) {
    sub->add_option("--config", f.config, "JSON run configuration; flags override its fields");
    sub->add_option("--output", f.output, "Write the report to this file instead of stdout");
    sub->add_option("--format", f.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--dump-config", f.dump_config, "Print the resolved configuration and exit");
    if (uses_qubits) sub->add_option("--qubits", f.qubits, "Number of qubits");
}

inline void add_drive_and_errors(CLI::App *sub, Flags &f, bool with_tau) {
    sub->add_option("--drive", f.drive, "Drive term LABEL[=COEFF], repeatable (replaces the default)");
    if (with_tau) sub->add_option("--tau", f.tau, "Pulse duration");
    sub->add_option("--error", f.errors, "Coherent error LABEL=AMP, repeatable (replaces the default)");
    sub->add_flag("--no-errors", f.no_errors, "Run with an empty error set");
}

inline RunConfig resolve(const std::string &command, const Flags &f) {
    RunConfig c = f.config ? run_config_from_json(read_json_file(*f.config), command)
                           : RunConfig::defaults(command);
    if (f.qubits) c.n_qubits = *f.qubits;
    if (!f.drive.empty()) {
        c.drive.clear();
        for (const auto &d : f.drive) c.drive.push_back(parse_term(d, "--drive", 1.0));
    }
    if (f.tau) c.tau = *f.tau;
    if (f.no_errors && !f.errors.empty()) {
        throw InputError("--no-errors cannot be combined with --error");
    }
    if (f.no_errors) c.errors.clear();
    if (!f.errors.empty()) {
        c.errors.clear();
        for (const auto &e : f.errors) c.errors.push_back(parse_term(e, "--error", std::nullopt));
    }
    if (f.delta) c.delta = *f.delta;
    if (f.delta_max || f.delta_points) {
        const double max = f.delta_max.value_or(c.delta_grid.empty() ? 1.0 : c.delta_grid.back());
        c.delta_grid = symmetric_grid(max, f.delta_points.value_or(41));
    }
    if (!f.noise.empty()) {
        c.noise_kinds.clear();
        for (const auto &k : f.noise) c.noise_kinds.push_back(noise_kind_from_string(k));
    }
    if (f.zeta) c.noise_rate = *f.zeta;
    if (!f.targets.empty()) c.noise_targets = f.targets;
    if (!f.taus.empty()) c.taus = f.taus;
    if (f.random_sets) c.random_sets = *f.random_sets;
    if (f.seed) c.seed = *f.seed;
    if (f.max_amplitude) c.max_amplitude = *f.max_amplitude;
    if (f.tolerance) c.discrepancy_tolerance = *f.tolerance;
    if (f.theta) c.theta = *f.theta;
    if (f.sum_h2) c.sum_h2 = *f.sum_h2;
    if (f.dump_channel) c.dump_channel = true;
    if (f.output) c.output.path = *f.output;
    if (f.format) c.output.format = *f.format;
    c.validate();
    return c;
}

struct Report {
    std::string text;
    int exit_code = 0;
    std::string diagnostic;
};

inline Report run_table1_command(const RunConfig &c) {
    Table1Config t;
    t.drive = c.drive_spec();
    t.error = c.error_spec();
    const Table1Report r = run_table1(t);
    return {c.output.format == "csv" ? to_csv(r) : dump(to_json(r, c.dump_channel)), 0, {}};
}

inline Report run_parity_command(const RunConfig &c) {
    ParitySweepConfig p;
    p.drive = c.drive_spec();
    p.error = CoherentErrorSpec{c.errors, 1.0};
    p.noise_kinds = c.noise_kinds;
    p.rate = c.noise_rate;
    p.targets = c.noise_targets;
    p.deltas = c.delta_grid;
    const auto rows = run_parity_sweep(p);
    return {c.output.format == "csv" ? to_csv(rows) : dump(to_json(p, rows)), 0, {}};
}

inline Report run_magnus_command(const RunConfig &c) {
    if (c.drive.size() != 1 || c.drive.front().coefficient != 1.0) {
        throw InputError("magnus-check needs a single drive Pauli with coefficient 1");
    }
    MagnusCheckConfig m;
    m.drive = c.drive.front().pauli;
    m.taus = c.taus;
    m.reference = CoherentErrorSpec{c.errors, 1.0};
    m.include_commuting_only = c.include_commuting_only;
    m.random_sets = c.random_sets;
    m.seed = c.seed;
    m.max_amplitude = c.max_amplitude;
    m.quadrature_tolerance = c.quadrature_tolerance;
    m.discrepancy_tolerance = c.discrepancy_tolerance;
    m.omega1_tolerance = c.omega1_tolerance;
    m.reference.validate_against(DriveSpec::single(m.drive, 1.0));
    const MagnusCheckReport r = run_magnus_crosscheck(m);
    Report out{c.output.format == "csv" ? to_csv(r) : dump(to_json(r)), 0, {}};
    if (!r.all_passed()) {
        out.exit_code = 2;
        for (const auto &row : r.rows) {
            if (!row.passed) {
                out.diagnostic += "magnus-check: tau=" + format_double(row.tau) + " set=" +
                                  row.set_name + ": " + row.failure + "\n";
            }
        }
    }
    return out;
}

inline Report run_sign_table_command(const RunConfig &c) {
    if (c.output.format == "csv") return {sign_table_csv(c.n_qubits), 0, {}};
    const auto group = enumerate_group(c.n_qubits);
    const Eigen::MatrixXi s = sign_table(c.n_qubits);
    ordered_json labels = ordered_json::array();
    for (const auto &p : group) labels.push_back(p.label());
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index k = 0; k < s.cols(); ++k) row.push_back(s(i, k));
        rows.push_back(std::move(row));
    }
    return {dump(ordered_json{{"n_qubits", c.n_qubits}, {"labels", labels}, {"signs", rows}}), 0, {}};
}

inline Report run_overrotation_command(const RunConfig &c) {
    const double factor = over_rotation_factor(c.tau, c.sum_h2);
    if (c.output.format == "json") {
        return {dump(ordered_json{{"tau", c.tau}, {"sum_h2", c.sum_h2}, {"factor", factor}}), 0, {}};
    }
    if (c.output.format == "csv") {
        return {"tau,sum_h2,factor\n" + format_double(c.tau) + ',' + format_double(c.sum_h2) + ',' +
                    format_double(factor) + '\n',
                0, {}};
    }
    return {format_g7(factor) + "\n", 0, {}};
}

inline Report run_calibrate_command(const RunConfig &c) {
    const double tau = calibrate_tau(c.theta, c.sum_h2);
    const double residual = tau * over_rotation_factor(tau, c.sum_h2) - c.theta / 2.0;
    if (c.output.format == "json") {
        return {dump(ordered_json{
                    {"theta", c.theta}, {"sum_h2", c.sum_h2}, {"tau", tau}, {"residual", residual}}),
                0, {}};
    }
    if (c.output.format == "csv") {
        return {"theta,sum_h2,tau,residual\n" + format_double(c.theta) + ',' +
                    format_double(c.sum_h2) + ',' + format_double(tau) + ',' +
                    format_double(residual) + '\n',
                0, {}};
    }
    return {format_g7(tau) + "\n", 0, {}};
}

inline Report dispatch(const RunConfig &c) {
    if (c.command == "table1") return run_table1_command(c);
    if (c.command == "parity-sweep") return run_parity_command(c);
    if (c.command == "magnus-check") return run_magnus_command(c);
    if (c.command == "sign-table") return run_sign_table_command(c);
    if (c.command == "overrotation") return run_overrotation_command(c);
    return run_calibrate_command(c);
}

}  // namespace cli_detail

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    using namespace cli_detail;
    CLI::App app{"Pseudo twirling simulations of Pauli rotation gates"};
    app.name("pstlab");
    app.require_subcommand(1, 1);
    Flags f;

    auto *table1 = app.add_subcommand("table1", "Effective Hamiltonian with and without pseudo twirling");
    add_common(table1, f, true);
    add_drive_and_errors(table1, f, true);
    table1->add_option("--delta", f.delta, "Global scale on the error amplitudes");
    table1->add_flag("--dump-channel", f.dump_channel, "Embed the PST channel matrix in JSON output");

    auto *parity = app.add_subcommand("parity-sweep", "Gate error versus error scale under noise");
    add_common(parity, f, true);
    add_drive_and_errors(parity, f, true);
    parity->add_option("--delta-max", f.delta_max, "Half-width of the symmetric delta grid");
    parity->add_option("--delta-points", f.delta_points, "Number of grid points");
    parity->add_option("--noise", f.noise, "Noise kinds (none, pauli_z, amplitude_damping)")
        ->delimiter(',');
    parity->add_option("--zeta", f.zeta, "Dissipation rate per Lindblad operator");
    parity->add_option("--targets", f.targets, "Qubits carrying noise")->delimiter(',');

    auto *magnus = app.add_subcommand("magnus-check", "Second-order Magnus term: quadrature vs closed form");
    add_common(magnus, f, true);
    add_drive_and_errors(magnus, f, false);
    magnus->add_option("--taus", f.taus, "Pulse durations")->delimiter(',');
    magnus->add_option("--random-sets", f.random_sets, "Number of random anticommuting error sets");
    magnus->add_option("--seed", f.seed, "Seed for the random error sets");
    magnus->add_option("--max-amplitude", f.max_amplitude, "Largest random amplitude");
    magnus->add_option("--tolerance", f.tolerance, "Pass threshold on the Frobenius discrepancy");

    auto *signs = app.add_subcommand("sign-table", "Commutation sign table of the Pauli group");
    add_common(signs, f, true);

    auto *over = app.add_subcommand("overrotation", "Drive amplification factor left after pseudo twirling");
    add_common(over, f, false);
    over->add_option("--tau", f.tau, "Pulse duration");
    over->add_option("--sum-h2", f.sum_h2, "Sum of squared anticommuting error amplitudes");

    auto *calib = app.add_subcommand("calibrate", "Pulse duration that realizes a target angle");
    add_common(calib, f, false);
    calib->add_option("--theta", f.theta, "Target rotation angle");
    calib->add_option("--sum-h2", f.sum_h2, "Sum of squared anticommuting error amplitudes");

    if (argc > 1 && argv[1][0] != '-') {
        const auto &names = command_names();
        if (std::find(names.begin(), names.end(), argv[1]) == names.end()) {
            err << "pstlab: unknown subcommand '" << argv[1] << "'\n" << app.help();
            return 1;
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "pstlab: " << e.what() << "\n" << app.help();
        return 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const RunConfig config = resolve(command, f);
        if (f.dump_config) {
            out << dump(to_json(config));
            return 0;
        }
        const Report report = dispatch(config);
        if (config.output.path.empty()) {
            out << report.text;
        } else {
            std::ofstream file(config.output.path, std::ios::binary);
            if (!file) throw InputError("cannot open output file " + config.output.path);
            file << report.text;
            if (!file) throw InputError("failed writing output file " + config.output.path);
        }
        err << report.diagnostic;
        return report.exit_code;
    } catch (const NumericalError &e) {
        err << "pstlab " << command << ": numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "pstlab " << command << ": " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception &e) {
        err << "pstlab " << command << ": bad config value: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pstlab
