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

// Run configuration for the command-line front end.
//
// Schema (every key optional; the set of accepted keys depends on `command`):
//
//   command       "table1" | "parity-sweep" | "magnus-check" | "sign-table" |
//                 "overrotation" | "calibrate"
//   n_qubits      int, every Pauli label must have this length
//   drive         {"LABEL": coefficient, ...}          table1, parity-sweep, magnus-check
//   tau           pulse duration                       table1, parity-sweep, overrotation
//   errors        {"LABEL": amplitude, ...}            table1, parity-sweep, magnus-check
//   delta         error scale                          table1
//   delta_grid    [numbers], symmetric about zero      parity-sweep
//   noise         {"kinds": [...], "rate": r, "targets": [...]}     parity-sweep
//   taus          [numbers]                            magnus-check
//   magnus        {"include_commuting_only", "random_sets", "seed", "max_amplitude"}
//   tolerances    {"quadrature", "discrepancy", "omega1"}           magnus-check
//   theta         target rotation angle                calibrate
//   sum_h2        anticommuting amplitude sum          overrotation, calibrate
//   dump_channel  bool, embed the PST channel          table1
//   output        {"path": "", "format": "json" | "csv" | "text"}

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pstlab/errors.hpp"
#include "pstlab/experiments.hpp"
#include "pstlab/io.hpp"
#include "pstlab/liouville.hpp"
#include "pstlab/magnus.hpp"

namespace pstlab {

inline const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"table1",       "parity-sweep", "magnus-check",
                                                "sign-table",   "overrotation", "calibrate"};
    return names;
}

struct OutputSpec {
    std::string path;
    std::string format;
};

struct RunConfig {
    std::string command;
    int n_qubits = 2;
    std::vector<PauliTerm> drive;
    double tau = 0.0;
    std::vector<PauliTerm> errors;
    double delta = 1.0;
    std::vector<double> delta_grid;
    std::vector<NoiseKind> noise_kinds;
    double noise_rate = 0.0;
    std::vector<int> noise_targets;
    std::vector<double> taus;
    bool include_commuting_only = true;
    int random_sets = 0;
    std::uint64_t seed = 0;
    double max_amplitude = 0.0;
    double quadrature_tolerance = 1e-9;
    double discrepancy_tolerance = 1e-6;
    double omega1_tolerance = 1e-9;
    double theta = 0.0;
    double sum_h2 = 0.0;
    bool dump_channel = false;
    OutputSpec output;

    static RunConfig defaults(const std::string &command);

    DriveSpec drive_spec() const { return DriveSpec{drive, tau}; }
    CoherentErrorSpec error_spec() const { return CoherentErrorSpec{errors, delta}; }

    std::vector<std::string> allowed_formats() const {
        if (command == "overrotation" || command == "calibrate") return {"text", "json", "csv"};
        return {"json", "csv"};
    }

    /// Field-level checks that do not need the numerics.
    void validate() const;
};

namespace detail {

// Keys accepted for each command, in dump order.
inline std::vector<std::string> config_keys(const std::string &command) {
    if (command == "table1") {
        return {"command", "n_qubits", "drive", "tau", "errors", "delta", "dump_channel", "output"};
    }
    if (command == "parity-sweep") {
        return {"command", "n_qubits", "drive", "tau", "errors", "delta_grid", "noise", "output"};
    }
    if (command == "magnus-check") {
        return {"command", "n_qubits", "drive", "errors", "taus", "magnus", "tolerances", "output"};
    }
    if (command == "sign-table") return {"command", "n_qubits", "output"};
    if (command == "overrotation") return {"command", "tau", "sum_h2", "output"};
    if (command == "calibrate") return {"command", "theta", "sum_h2", "output"};
    throw InputError("unknown command '" + command + "'");
}

inline void require_keys(const ordered_json &j, const std::vector<std::string> &allowed,
                         const std::string &where) {
    if (!j.is_object()) throw InputError(where + " must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw InputError("unknown key '" + key + "' in " + where);
        }
    }
}

inline double get_number(const ordered_json &j, const char *key) {
    if (!j.is_number()) throw InputError(std::string(key) + " must be a number");
    return j.get<double>();
}

inline std::int64_t get_integer(const ordered_json &j, const char *key) {
    if (!j.is_number_integer()) throw InputError(std::string(key) + " must be an integer");
    return j.get<std::int64_t>();
}

inline std::vector<double> get_numbers(const ordered_json &j, const char *key) {
    if (!j.is_array()) throw InputError(std::string(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto &v : j) out.push_back(get_number(v, key));
    return out;
}

inline void check_label_width(const PauliString &p, int n, const char *what) {
    if (p.n_qubits() != n) {
        throw InputError(std::string(what) + " label " + p.label() + " has length " +
                         std::to_string(p.n_qubits()) + " but n_qubits = " + std::to_string(n));
    }
}

}  // namespace detail

inline RunConfig RunConfig::defaults(const std::string &command) {
    detail::config_keys(command);
    RunConfig c;
    c.command = command;
    c.output.format = "json";
    if (command == "table1") {
        const Table1Config t;
        c.drive = t.drive.terms;
        c.tau = t.drive.tau;
        c.errors = t.error.terms;
    } else if (command == "parity-sweep") {
        const ParitySweepConfig p;
        c.drive = p.drive.terms;
        c.tau = p.drive.tau;
        c.errors = p.error.terms;
        c.delta_grid = p.deltas;
        c.noise_kinds = p.noise_kinds;
        c.noise_rate = p.rate;
        c.noise_targets = p.targets;
        c.output.format = "csv";
    } else if (command == "magnus-check") {
        const MagnusCheckConfig m;
        c.drive = {PauliTerm{m.drive, 1.0}};
        c.errors = m.reference.terms;
        c.taus = m.taus;
        c.include_commuting_only = m.include_commuting_only;
        c.random_sets = m.random_sets;
        c.seed = m.seed;
        c.max_amplitude = m.max_amplitude;
        c.quadrature_tolerance = m.quadrature_tolerance;
        c.discrepancy_tolerance = m.discrepancy_tolerance;
        c.omega1_tolerance = m.omega1_tolerance;
    } else if (command == "sign-table") {
        c.output.format = "csv";
    } else if (command == "overrotation") {
        c.tau = 0.5;
        c.sum_h2 = 0.24;
        c.output.format = "text";
    } else if (command == "calibrate") {
        c.theta = 1.0;
        c.sum_h2 = 0.24;
        c.output.format = "text";
    }
    return c;
}

inline void RunConfig::validate() const {
    const auto keys = detail::config_keys(command);
    auto uses = [&](const char *k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
    if (uses("n_qubits")) {
        if (n_qubits < 1) throw InputError("n_qubits must be at least 1");
        require_qubits_within_bound(n_qubits);
    }
    if (uses("drive")) {
        if (drive.empty()) throw InputError("drive must have at least one term");
        for (const auto &t : drive) detail::check_label_width(t.pauli, n_qubits, "drive");
    }
    if (uses("errors")) {
        for (const auto &t : errors) detail::check_label_width(t.pauli, n_qubits, "error");
    }
    if (uses("tau") && (!std::isfinite(tau) || tau < 0.0)) {
        throw InputError("tau must be finite and nonnegative");
    }
    if (uses("delta") && !std::isfinite(delta)) throw InputError("delta must be finite");
    if (uses("noise")) {
        if (noise_kinds.empty()) throw InputError("noise.kinds must not be empty");
        NoiseSpec{NoiseKind::pauli_z, noise_rate, noise_targets}.validate(n_qubits);
    }
    if (uses("taus")) {
        if (taus.empty()) throw InputError("taus must not be empty");
        for (double t : taus) {
            if (!(t > 0.0) || !std::isfinite(t)) throw InputError("taus must be positive");
        }
    }
    if (uses("magnus")) {
        if (random_sets < 0) throw InputError("magnus.random_sets must be nonnegative");
        if (!(max_amplitude >= 0.0) || !std::isfinite(max_amplitude)) {
            throw InputError("magnus.max_amplitude must be finite and nonnegative");
        }
    }
    if (uses("tolerances")) {
        for (double t : {quadrature_tolerance, discrepancy_tolerance, omega1_tolerance}) {
            if (!(t >= 0.0) || !std::isfinite(t)) {
                throw InputError("tolerances must be finite and nonnegative");
            }
        }
        if (!(quadrature_tolerance > 0.0)) throw InputError("tolerances.quadrature must be positive");
    }
    if (uses("sum_h2") && (!(sum_h2 >= 0.0) || !std::isfinite(sum_h2))) {
        throw InputError("sum_h2 must be finite and nonnegative");
    }
    const auto formats = allowed_formats();
    if (std::find(formats.begin(), formats.end(), output.format) == formats.end()) {
        throw InputError("output format '" + output.format + "' is not available for " + command);
    }
}

inline ordered_json to_json(const RunConfig &c) {
    ordered_json j = ordered_json::object();
    for (const auto &key : detail::config_keys(c.command)) {
        if (key == "command") j[key] = c.command;
        if (key == "n_qubits") j[key] = c.n_qubits;
        if (key == "drive") j[key] = terms_to_json(c.drive);
        if (key == "tau") j[key] = c.tau;
        if (key == "errors") j[key] = terms_to_json(c.errors);
        if (key == "delta") j[key] = c.delta;
        if (key == "delta_grid") j[key] = c.delta_grid;
        if (key == "noise") {
            ordered_json kinds = ordered_json::array();
            for (auto k : c.noise_kinds) kinds.push_back(std::string(to_string(k)));
            j[key] = ordered_json{{"kinds", kinds}, {"rate", c.noise_rate}, {"targets", c.noise_targets}};
        }
        if (key == "taus") j[key] = c.taus;
        if (key == "magnus") {
            j[key] = ordered_json{{"include_commuting_only", c.include_commuting_only},
                                  {"random_sets", c.random_sets},
                                  {"seed", c.seed},
                                  {"max_amplitude", c.max_amplitude}};
        }
        if (key == "tolerances") {
            j[key] = ordered_json{{"quadrature", c.quadrature_tolerance},
                                  {"discrepancy", c.discrepancy_tolerance},
                                  {"omega1", c.omega1_tolerance}};
        }
        if (key == "theta") j[key] = c.theta;
        if (key == "sum_h2") j[key] = c.sum_h2;
        if (key == "dump_channel") j[key] = c.dump_channel;
        if (key == "output") j[key] = ordered_json{{"path", c.output.path}, {"format", c.output.format}};
    }
    return j;
}

/**
 * Overlays the fields present in `j` onto the defaults for `command`. A
 * "command" key, if present, must name the same command.
 */
inline RunConfig run_config_from_json(const ordered_json &j, const std::string &command) {
    RunConfig c = RunConfig::defaults(command);
    detail::require_keys(j, detail::config_keys(command), "config for " + command);
    if (j.contains("command")) {
        if (!j["command"].is_string() || j["command"].get<std::string>() != command) {
            throw InputError("config file is for command " + j["command"].dump() +
                             ", not " + command);
        }
    }
    // Labels are parsed after n_qubits so width errors name the right count.
    if (j.contains("n_qubits")) {
        c.n_qubits = static_cast<int>(detail::get_integer(j["n_qubits"], "n_qubits"));
    }
    if (j.contains("drive")) c.drive = terms_from_json(j["drive"], "drive");
    if (j.contains("tau")) c.tau = detail::get_number(j["tau"], "tau");
    if (j.contains("errors")) c.errors = terms_from_json(j["errors"], "errors");
    if (j.contains("delta")) c.delta = detail::get_number(j["delta"], "delta");
    if (j.contains("delta_grid")) c.delta_grid = detail::get_numbers(j["delta_grid"], "delta_grid");
    if (j.contains("noise")) {
        const auto &n = j["noise"];
        detail::require_keys(n, {"kinds", "rate", "targets"}, "noise");
        if (n.contains("kinds")) {
            if (!n["kinds"].is_array()) throw InputError("noise.kinds must be an array of names");
            c.noise_kinds.clear();
            for (const auto &k : n["kinds"]) {
                if (!k.is_string()) throw InputError("noise.kinds entries must be strings");
                c.noise_kinds.push_back(noise_kind_from_string(k.get<std::string>()));
            }
        }
        if (n.contains("rate")) c.noise_rate = detail::get_number(n["rate"], "noise.rate");
        if (n.contains("targets")) {
            if (!n["targets"].is_array()) throw InputError("noise.targets must be an array");
            c.noise_targets.clear();
            for (const auto &t : n["targets"]) {
                c.noise_targets.push_back(static_cast<int>(detail::get_integer(t, "noise.targets")));
            }
        }
    }
    if (j.contains("taus")) c.taus = detail::get_numbers(j["taus"], "taus");
    if (j.contains("magnus")) {
        const auto &m = j["magnus"];
        detail::require_keys(m, {"include_commuting_only", "random_sets", "seed", "max_amplitude"},
                             "magnus");
        if (m.contains("include_commuting_only")) {
            if (!m["include_commuting_only"].is_boolean()) {
                throw InputError("magnus.include_commuting_only must be a boolean");
            }
            c.include_commuting_only = m["include_commuting_only"].get<bool>();
        }
        if (m.contains("random_sets")) {
            c.random_sets = static_cast<int>(detail::get_integer(m["random_sets"], "magnus.random_sets"));
        }
        if (m.contains("seed")) {
            if (!m["seed"].is_number_unsigned()) {
                throw InputError("magnus.seed must be a nonnegative integer");
            }
            c.seed = m["seed"].get<std::uint64_t>();
        }
        if (m.contains("max_amplitude")) {
            c.max_amplitude = detail::get_number(m["max_amplitude"], "magnus.max_amplitude");
        }
    }
    if (j.contains("tolerances")) {
        const auto &t = j["tolerances"];
        detail::require_keys(t, {"quadrature", "discrepancy", "omega1"}, "tolerances");
        if (t.contains("quadrature")) {
            c.quadrature_tolerance = detail::get_number(t["quadrature"], "tolerances.quadrature");
        }
        if (t.contains("discrepancy")) {
            c.discrepancy_tolerance = detail::get_number(t["discrepancy"], "tolerances.discrepancy");
        }
        if (t.contains("omega1")) {
            c.omega1_tolerance = detail::get_number(t["omega1"], "tolerances.omega1");
        }
    }
    if (j.contains("theta")) c.theta = detail::get_number(j["theta"], "theta");
    if (j.contains("sum_h2")) c.sum_h2 = detail::get_number(j["sum_h2"], "sum_h2");
    if (j.contains("dump_channel")) {
        if (!j["dump_channel"].is_boolean()) throw InputError("dump_channel must be a boolean");
        c.dump_channel = j["dump_channel"].get<bool>();
    }
    if (j.contains("output")) {
        const auto &o = j["output"];
        detail::require_keys(o, {"path", "format"}, "output");
        if (o.contains("path")) {
            if (!o["path"].is_string()) throw InputError("output.path must be a string");
            c.output.path = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            if (!o["format"].is_string()) throw InputError("output.format must be a string");
            c.output.format = o["format"].get<std::string>();
        }
    }
    return c;
}

}  // namespace pstlab
