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

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pstlab/errors.hpp"
#include "pstlab/liouville.hpp"
#include "pstlab/magnus.hpp"
#include "pstlab/numerics.hpp"
#include "pstlab/pauli.hpp"

namespace pstlab {

/**
 * One member of the pseudo-twirl ensemble.
 *
 * The pulse runs with drive signs flipped wherever alpha anticommutes with a
 * drive Pauli; coherent error and noise act during the pulse; alpha is applied
 * before and after. `gate_generator` is the exponent seen during the pulse,
 * `lab_generator` = P_a gate_generator P_a is the same realization written in
 * the original frame, so channel() == expm(lab_generator).
 */
struct PSTRealization {
    PauliString alpha;
    std::vector<int> sign_pattern;
    Superoperator gate_generator;
    Superoperator lab_generator;

    /// P_a expm(gate_generator) P_a.
    Superoperator channel() const {
        const Superoperator pu = pauli_unitary_superop(alpha);
        return pu * expm(gate_generator) * pu;
    }
};

namespace detail {

inline void require_pst_inputs(const DriveSpec &drive, const CoherentErrorSpec &err,
                               const NoiseSpec &noise) {
    drive.validate();
    err.validate_against(drive);
    noise.validate(drive.n_qubits());
}

}  // namespace detail

/// Ideal noiseless gate channel expm(-i tau sum_k h_k H_k).
inline Superoperator ideal_channel(const DriveSpec &drive) {
    drive.validate();
    return expm(Complex(0.0, -drive.tau) * drive.liouville_hamiltonian());
}

inline PSTRealization pst_realization(const DriveSpec &drive, const CoherentErrorSpec &err,
                                      const NoiseSpec &noise, const PauliString &alpha) {
    detail::require_pst_inputs(drive, err, noise);
    const int n = drive.n_qubits();
    PauliString::require_same_width(alpha, drive.terms.front().pauli);

    PSTRealization r;
    r.alpha = alpha;
    const Eigen::Index d = Eigen::Index{1} << n;
    ComplexMatrix flipped = ComplexMatrix::Zero(d, d);
    for (const auto &term : drive.terms) {
        const int s = commutation_sign(alpha, term.pauli);
        r.sign_pattern.push_back(s);
        flipped += (s * term.coefficient) * matrix_of(term.pauli);
    }
    const double tau = drive.tau;
    r.gate_generator = Complex(0.0, -tau) * hamiltonian_superop(flipped) +
                       Complex(0.0, -tau) * err.liouville_hamiltonian(n) +
                       dissipator_superop(noise, n);
    r.lab_generator = pauli_conjugate(alpha, r.gate_generator);
    return r;
}

/// Exact uniform average over all 4^n twirls.
inline Superoperator pst_channel(const DriveSpec &drive, const CoherentErrorSpec &err,
                                 const NoiseSpec &noise) {
    detail::require_pst_inputs(drive, err, noise);
    const auto group = enumerate_group(drive.n_qubits());
    const Eigen::Index d = Eigen::Index{1} << drive.n_qubits();
    Superoperator sum = Superoperator::zero(d);
    for (const auto &alpha : group) {
        sum += pst_realization(drive, err, noise, alpha).channel();
    }
    return (1.0 / static_cast<double>(group.size())) * sum;
}

/// Channel of the bare pulse, no twirl (the alpha = identity realization alone).
inline Superoperator untwirled_channel(const DriveSpec &drive, const CoherentErrorSpec &err,
                                       const NoiseSpec &noise) {
    detail::require_pst_inputs(drive, err, noise);
    return pst_realization(drive, err, noise, PauliString(drive.n_qubits())).channel();
}

/**
 * log(K) split as -i tau sum_g c_g H_g + remainder.
 *
 * c_g is the Hilbert-Schmidt projection of log(K)/(-i tau) onto H_g, using
 * <H_g, H_g'> = 2 4^n delta_gg' for non-identity Paulis. An ideal gate
 * exp(-i tau H_beta) reads 1 on beta.
 */
struct EffectiveGenerator {
    double tau = 0.0;
    std::vector<std::pair<PauliString, double>> hamiltonian_coeffs;
    Superoperator dissipative_remainder;

    double coeff(const PauliString &p) const {
        for (const auto &[q, c] : hamiltonian_coeffs) {
            if (q == p) return c;
        }
        throw InputError("no coefficient for Pauli " + p.label());
    }

    double coeff(std::string_view label) const { return coeff(PauliString::from_label(label)); }

    double remainder_norm() const { return dissipative_remainder.matrix().norm(); }

    /// Rebuilds -i tau sum_g c_g H_g + remainder.
    Superoperator reconstruct() const {
        Superoperator g = dissipative_remainder;
        for (const auto &[p, c] : hamiltonian_coeffs) {
            g += Complex(0.0, -tau * c) * pauli_hamiltonian(p);
        }
        return g;
    }
};

inline EffectiveGenerator effective_generator(const Superoperator &k, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw InputError("effective_generator: tau must be positive and finite");
    }
    const Eigen::Index d = k.hilbert_dim();
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    if ((Eigen::Index{1} << n) != d) {
        throw DimensionError("effective_generator: Hilbert dimension is not a power of two");
    }
    const Superoperator g = logm_principal(k);
    const ComplexMatrix scaled = g.matrix() / Complex(0.0, -tau);
    const double norm = 2.0 * static_cast<double>(d * d);

    EffectiveGenerator out;
    out.tau = tau;
    Superoperator hamiltonian_part = Superoperator::zero(d);
    for (const auto &p : enumerate_group(n)) {
        if (p.is_identity()) continue;
        const Superoperator h = pauli_hamiltonian(p);
        const double c = (h.matrix().conjugate().cwiseProduct(scaled)).sum().real() / norm;
        out.hamiltonian_coeffs.emplace_back(p, c);
        hamiltonian_part += Complex(0.0, -tau * c) * h;
    }
    out.dissipative_remainder = g - hamiltonian_part;
    return out;
}

inline void to_json(nlohmann::json &j, const EffectiveGenerator &e) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto &[p, c] : e.hamiltonian_coeffs) coeffs[p.label()] = c;
    j = nlohmann::json{{"tau", e.tau}, {"coeffs", coeffs}, {"remainder_norm", e.remainder_norm()}};
}

/**
 * Pulse duration tau with tau * over_rotation_factor(tau, sum_h2) = theta / 2,
 * by bisection on (0, theta/2]. The left side is increasing in tau, so the
 * root is unique.
 */
inline double calibrate_tau(double theta, double sum_h2) {
    if (!(theta > 0.0) || !std::isfinite(theta) || theta / 2.0 > std::numbers::pi / 2.0) {
        throw InputError("calibrate_tau: theta must satisfy 0 < theta/2 <= pi/2, got theta = " +
                         std::to_string(theta));
    }
    if (!(sum_h2 >= 0.0) || !std::isfinite(sum_h2)) {
        throw InputError("calibrate_tau: sum_h2 must be finite and nonnegative");
    }
    const double target = theta / 2.0;
    auto residual = [&](double tau) { return tau * over_rotation_factor(tau, sum_h2) - target; };

    double lo = 0.0;
    double hi = target;
    const double r_hi = residual(hi);
    if (r_hi == 0.0) return hi;
    if (!(residual(lo) < 0.0 && r_hi > 0.0)) {
        throw NumericalError("calibrate_tau: no sign change on the search bracket");
    }
    constexpr int kMaxIterations = 200;
    for (int it = 0; it < kMaxIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double r = residual(mid);
        if (r == 0.0) return mid;
        if (r < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double best = (std::abs(residual(lo)) <= std::abs(residual(hi))) ? lo : hi;
    if (std::abs(residual(best)) > 1e-12) {
        throw NumericalError("calibrate_tau: bisection did not reach residual 1e-12");
    }
    return best;
}

}  // namespace pstlab
