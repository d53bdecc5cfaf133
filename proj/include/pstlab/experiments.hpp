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

// Scripted reproductions: effective-Hamiltonian table, noise-parity sweep and
// Magnus cross-check. Every report embeds the resolved inputs.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/io.hpp"
#include "pstlab/liouville.hpp"
#include "pstlab/magnus.hpp"
#include "pstlab/pst.hpp"

namespace pstlab {

/// Error set used for the effective-Hamiltonian table and the parity sweep.
inline CoherentErrorSpec reference_error_set() {
    return CoherentErrorSpec{{{PauliString::from_label("XX"), 0.2},
                              {PauliString::from_label("YY"), 0.6},
                              {PauliString::from_label("ZZ"), 0.2},
                              {PauliString::from_label("YX"), 0.4}},
                             1.0};
}

inline DriveSpec reference_drive(double tau) {
    return DriveSpec::single(PauliString::from_label("ZX"), tau);
}

// ---------------------------------------------------------------------------
// Effective-Hamiltonian table

struct Table1Config {
    DriveSpec drive = reference_drive(0.5);
    CoherentErrorSpec error = reference_error_set();
};

struct Table1Report {
    Table1Config config;
    std::vector<std::pair<std::string, double>> no_pst;
    std::vector<std::pair<std::string, double>> pst;
    double theoretical_zx = 0.0;
    double agreement_pct = 0.0;
    Superoperator pst_channel;

    double pst_coeff(const std::string &label) const { return lookup(pst, label); }
    double no_pst_coeff(const std::string &label) const { return lookup(no_pst, label); }

  private:
    static double lookup(const std::vector<std::pair<std::string, double>> &row,
                         const std::string &label) {
        for (const auto &[l, c] : row) {
            if (l == label) return c;
        }
        throw InputError("label " + label + " not in report");
    }
};

inline Table1Report run_table1(const Table1Config &config) {
    const DriveSpec &drive = config.drive;
    drive.require_unit_single_pauli("run_table1");
    config.error.validate_against(drive);
    if (!(drive.tau > 0.0)) throw InputError("run_table1: tau must be positive");

    Table1Report report;
    report.config = config;
    const NoiseSpec quiet = NoiseSpec::none();
    const EffectiveGenerator bare =
        effective_generator(untwirled_channel(drive, config.error, quiet), drive.tau);
    report.pst_channel = pst_channel(drive, config.error, quiet);
    const EffectiveGenerator twirled = effective_generator(report.pst_channel, drive.tau);

    std::vector<PauliString> labels;
    for (const auto &t : config.error.terms) labels.push_back(t.pauli);
    labels.push_back(drive.pauli());
    for (const auto &p : labels) {
        report.no_pst.emplace_back(p.label(), bare.coeff(p));
        report.pst.emplace_back(p.label(), twirled.coeff(p));
    }
    const double numeric = twirled.coeff(drive.pauli());
    report.theoretical_zx =
        over_rotation_factor(drive.tau, anticommuting_sum_h2(drive, config.error));
    report.agreement_pct = 100.0 * (1.0 - std::abs(numeric - report.theoretical_zx) / numeric);
    return report;
}

inline ordered_json to_json(const Table1Config &c) {
    return ordered_json{{"drive", terms_to_json(c.drive.terms)},
                        {"tau", c.drive.tau},
                        {"errors", terms_to_json(c.error.terms)},
                        {"delta", c.error.scale}};
}

inline ordered_json to_json(const Table1Report &r, bool include_channel = false) {
    auto row_json = [](const std::vector<std::pair<std::string, double>> &row) {
        ordered_json j = ordered_json::object();
        for (const auto &[l, c] : row) j[l] = c;
        return j;
    };
    ordered_json j{{"config", to_json(r.config)},
                   {"no_pst", row_json(r.no_pst)},
                   {"pst", row_json(r.pst)},
                   {"theoretical_zx", r.theoretical_zx},
                   {"agreement_pct", r.agreement_pct}};
    if (include_channel) j["pst_channel"] = matrix_to_json(r.pst_channel.matrix());
    return j;
}

inline std::string to_csv(const Table1Report &r) {
    std::ostringstream os;
    os << "label,no_pst,pst\n";
    for (std::size_t k = 0; k < r.pst.size(); ++k) {
        os << r.pst[k].first << ',' << format_double(r.no_pst[k].second) << ','
           << format_double(r.pst[k].second) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parity sweep

/// `points` values evenly spaced on [-max, max]; entries k and points-1-k are exact negatives.
inline std::vector<double> symmetric_grid(double max, int points) {
    if (points < 2 || !(max > 0.0) || !std::isfinite(max)) {
        throw InputError("symmetric_grid needs points >= 2 and a positive finite range");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    const double denom = static_cast<double>(points - 1);
    for (int k = 0; k < points; ++k) {
        grid.push_back(max * static_cast<double>(2 * k - (points - 1)) / denom);
    }
    return grid;
}

struct ParitySweepConfig {
    DriveSpec drive = reference_drive(2.5);
    CoherentErrorSpec error = reference_error_set();
    std::vector<NoiseKind> noise_kinds{NoiseKind::pauli_z, NoiseKind::amplitude_damping};
    double rate = 3.0;
    std::vector<int> targets{0, 1};
    std::vector<double> deltas = symmetric_grid(1.0, 41);
};

struct ParitySweepRow {
    double delta = 0.0;
    double error = 0.0;
    double symmetrized = 0.0;
    NoiseKind noise_kind = NoiseKind::none;
};

namespace detail {

// Index of -deltas[k] in the sorted grid, for every k.
inline std::vector<std::size_t> partner_indices(const std::vector<double> &sorted) {
    std::vector<std::size_t> partner(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const double want = -sorted[k];
        const double slack = 1e-12 * std::max(1.0, std::abs(want));
        auto it = std::find_if(sorted.begin(), sorted.end(),
                               [&](double d) { return std::abs(d - want) <= slack; });
        if (it == sorted.end()) {
            throw InputError("delta grid is not symmetric: no partner for " +
                             format_double(sorted[k]));
        }
        partner[k] = static_cast<std::size_t>(it - sorted.begin());
    }
    return partner;
}

}  // namespace detail

/// E(delta) = ||K_pst(delta) - U_0||_op per noise kind, rows ordered by kind then delta.
inline std::vector<ParitySweepRow> run_parity_sweep(const ParitySweepConfig &config) {
    const DriveSpec &drive = config.drive;
    config.error.validate_against(drive);
    if (config.deltas.empty()) throw InputError("delta grid is empty");
    std::vector<double> deltas = config.deltas;
    std::sort(deltas.begin(), deltas.end());
    if (std::adjacent_find(deltas.begin(), deltas.end()) != deltas.end()) {
        throw InputError("delta grid contains duplicate values");
    }
    for (double d : deltas) {
        if (!std::isfinite(d)) throw InputError("delta grid contains a non-finite value");
    }
    const auto partner = detail::partner_indices(deltas);
    const Superoperator ideal = ideal_channel(drive);

    std::vector<ParitySweepRow> rows;
    for (NoiseKind kind : config.noise_kinds) {
        const NoiseSpec noise{kind, kind == NoiseKind::none ? 0.0 : config.rate,
                              kind == NoiseKind::none ? std::vector<int>{} : config.targets};
        std::vector<double> errors;
        errors.reserve(deltas.size());
        for (double d : deltas) {
            errors.push_back(op_norm(pst_channel(drive, config.error.with_scale(d), noise) - ideal));
        }
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            rows.push_back(ParitySweepRow{deltas[k], errors[k],
                                          0.5 * (errors[k] + errors[partner[k]]), kind});
        }
    }
    return rows;
}

/// max over delta of |E(delta) - E(-delta)| among rows of one noise kind.
inline double max_parity_asymmetry(const std::vector<ParitySweepRow> &rows, NoiseKind kind) {
    double worst = 0.0;
    for (const auto &r : rows) {
        if (r.noise_kind == kind) worst = std::max(worst, 2.0 * std::abs(r.error - r.symmetrized));
    }
    return worst;
}

inline std::string to_csv(const std::vector<ParitySweepRow> &rows) {
    std::string out = "delta,error,symmetrized,noise_kind\n";
    for (const auto &r : rows) {
        out += format_double(r.delta);
        out += ',';
        out += format_double(r.error);
        out += ',';
        out += format_double(r.symmetrized);
        out += ',';
        out += to_string(r.noise_kind);
        out += '\n';
    }
    return out;
}

inline ordered_json to_json(const ParitySweepConfig &c) {
    ordered_json kinds = ordered_json::array();
    for (auto k : c.noise_kinds) kinds.push_back(std::string(to_string(k)));
    return ordered_json{{"drive", terms_to_json(c.drive.terms)},
                        {"tau", c.drive.tau},
                        {"errors", terms_to_json(c.error.terms)},
                        {"noise", {{"kinds", kinds}, {"rate", c.rate}, {"targets", c.targets}}},
                        {"delta_grid", c.deltas}};
}

inline ordered_json to_json(const ParitySweepConfig &c, const std::vector<ParitySweepRow> &rows) {
    ordered_json out_rows = ordered_json::array();
    for (const auto &r : rows) {
        out_rows.push_back(ordered_json{{"delta", r.delta},
                                        {"error", r.error},
                                        {"symmetrized", r.symmetrized},
                                        {"noise_kind", std::string(to_string(r.noise_kind))}});
    }
    return ordered_json{{"config", to_json(c)}, {"rows", out_rows}};
}

// ---------------------------------------------------------------------------
// Magnus cross-check

struct NamedErrorSet {
    std::string name;
    CoherentErrorSpec error;
};

/// Deterministic draw in [0, 1) from the 53 high bits of a 64-bit Mersenne Twister word.
inline double unit_uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Error sets drawn only from Paulis that anticommute with the drive, amplitudes in [-max, max].
inline std::vector<NamedErrorSet> random_anticommuting_sets(const PauliString &drive, int count,
                                                            std::uint64_t seed,
                                                            double max_amplitude) {
    std::vector<PauliString> pool;
    for (const auto &p : enumerate_group(drive.n_qubits())) {
        if (anticommutes(p, drive)) pool.push_back(p);
    }
    if (pool.empty() && count > 0) {
        throw InputError("no Pauli anticommutes with the drive " + drive.label());
    }
    std::mt19937_64 rng(seed);
    std::vector<NamedErrorSet> sets;
    for (int s = 0; s < count; ++s) {
        std::vector<PauliString> picks = pool;
        // Fisher-Yates with our own uniform draws keeps the sets identical across standard libraries.
        for (std::size_t i = picks.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(i));
            std::swap(picks[i - 1], picks[std::min(j, i - 1)]);
        }
        const std::size_t size =
            1 + static_cast<std::size_t>(unit_uniform(rng) *
                                         static_cast<double>(std::min<std::size_t>(4, pool.size())));
        CoherentErrorSpec err;
        for (std::size_t k = 0; k < std::min(size, picks.size()); ++k) {
            const double amp = max_amplitude * (2.0 * unit_uniform(rng) - 1.0);
            err.terms.push_back(PauliTerm{picks[k], amp});
        }
        std::sort(err.terms.begin(), err.terms.end(),
                  [](const PauliTerm &a, const PauliTerm &b) { return a.pauli < b.pauli; });
        sets.push_back(NamedErrorSet{"random_" + std::to_string(s), std::move(err)});
    }
    return sets;
}

struct MagnusCheckConfig {
    PauliString drive = PauliString::from_label("ZX");
    std::vector<double> taus{0.3, 0.5, 1.0};
    CoherentErrorSpec reference = reference_error_set();
    bool include_commuting_only = true;
    int random_sets = 5;
    std::uint64_t seed = 20240117;
    double max_amplitude = 0.6;
    double quadrature_tolerance = 1e-9;
    double discrepancy_tolerance = 1e-6;
    double omega1_tolerance = 1e-9;

    std::vector<NamedErrorSet> error_sets() const {
        std::vector<NamedErrorSet> sets{{"reference", reference}};
        if (include_commuting_only) {
            CoherentErrorSpec commuting;
            for (const auto &p : enumerate_group(drive.n_qubits())) {
                if (!p.is_identity() && p != drive && !anticommutes(p, drive) &&
                    commuting.terms.size() < 2) {
                    commuting.terms.push_back(PauliTerm{p, commuting.terms.empty() ? 0.6 : 0.3});
                }
            }
            sets.push_back({"commuting_only", commuting});
        }
        for (auto &s : random_anticommuting_sets(drive, random_sets, seed, max_amplitude)) {
            sets.push_back(std::move(s));
        }
        return sets;
    }
};

struct MagnusCheckRow {
    double tau = 0.0;
    std::string set_name;
    CoherentErrorSpec error;
    double omega2_discrepancy = 0.0;
    double omega2_closed_norm = 0.0;
    double omega2_quadrature_norm = 0.0;
    double omega1_norm = 0.0;
    bool passed = false;
    std::string failure;
};

struct MagnusCheckReport {
    MagnusCheckConfig config;
    std::vector<MagnusCheckRow> rows;

    bool all_passed() const {
        return std::all_of(rows.begin(), rows.end(), [](const auto &r) { return r.passed; });
    }
};

/// Quadrature Omega_2 twirl average vs the closed form, plus the Omega_1 average, per (tau, set).
inline MagnusCheckReport run_magnus_crosscheck(const MagnusCheckConfig &config) {
    MagnusCheckReport report{config, {}};
    const QuadratureOptions opts{config.quadrature_tolerance};
    const auto sets = config.error_sets();
    for (double tau : config.taus) {
        const DriveSpec drive = DriveSpec::single(config.drive, tau);
        for (const auto &set : sets) {
            MagnusCheckRow row;
            row.tau = tau;
            row.set_name = set.name;
            row.error = set.error;
            try {
                const ComplexMatrix closed = omega2_avg_closed(drive, set.error);
                const ComplexMatrix quad = omega2_avg(drive, set.error, opts);
                row.omega2_closed_norm = closed.norm();
                row.omega2_quadrature_norm = quad.norm();
                row.omega2_discrepancy = (quad - closed).norm();
                row.omega1_norm = omega1_avg(drive, set.error, opts).norm();
                row.passed = row.omega2_discrepancy <= config.discrepancy_tolerance &&
                             row.omega1_norm <= config.omega1_tolerance;
                if (!row.passed) row.failure = "tolerance exceeded";
            } catch (const NumericalError &e) {
                row.passed = false;
                row.failure = e.what();
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

inline ordered_json to_json(const MagnusCheckConfig &c) {
    return ordered_json{{"drive", c.drive.label()},
                        {"taus", c.taus},
                        {"errors", terms_to_json(c.reference.terms)},
                        {"include_commuting_only", c.include_commuting_only},
                        {"random_sets", c.random_sets},
                        {"seed", c.seed},
                        {"max_amplitude", c.max_amplitude},
                        {"tolerances",
                         {{"quadrature", c.quadrature_tolerance},
                          {"discrepancy", c.discrepancy_tolerance},
                          {"omega1", c.omega1_tolerance}}}};
}

inline ordered_json to_json(const MagnusCheckReport &r) {
    ordered_json rows = ordered_json::array();
    for (const auto &row : r.rows) {
        ordered_json j{{"tau", row.tau},
                       {"set", row.set_name},
                       {"errors", terms_to_json(row.error.terms)},
                       {"omega2_discrepancy", row.omega2_discrepancy},
                       {"omega2_closed_norm", row.omega2_closed_norm},
                       {"omega2_quadrature_norm", row.omega2_quadrature_norm},
                       {"omega1_norm", row.omega1_norm},
                       {"passed", row.passed}};
        if (!row.failure.empty()) j["failure"] = row.failure;
        rows.push_back(std::move(j));
    }
    return ordered_json{{"config", to_json(r.config)}, {"rows", rows}, {"all_passed", r.all_passed()}};
}

inline std::string to_csv(const MagnusCheckReport &r) {
    std::string out =
        "tau,set,omega2_discrepancy,omega2_closed_norm,omega2_quadrature_norm,omega1_norm,passed\n";
    for (const auto &row : r.rows) {
        out += format_double(row.tau) + ',' + row.set_name + ',' +
               format_double(row.omega2_discrepancy) + ',' + format_double(row.omega2_closed_norm) +
               ',' + format_double(row.omega2_quadrature_norm) + ',' +
               format_double(row.omega1_norm) + ',' + (row.passed ? "true" : "false") + '\n';
    }
    return out;
}

}  // namespace pstlab
