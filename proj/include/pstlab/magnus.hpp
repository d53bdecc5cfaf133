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

// Interaction-picture Magnus terms of a coherent error riding on a Pauli drive,
// their twirl averages, and the closed-form over-rotation they produce.

#pragma once

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/errors.hpp"
#include "pstlab/liouville.hpp"
#include "pstlab/numerics.hpp"
#include "pstlab/pauli.hpp"

namespace pstlab {

struct PauliTerm {
    PauliString pauli;
    double coefficient = 0.0;
};

/// Ideal generator sum_k h_k P_k applied for duration tau.
struct DriveSpec {
    std::vector<PauliTerm> terms;
    double tau = 0.0;

    static DriveSpec single(const PauliString &p, double tau, double coefficient = 1.0) {
        return DriveSpec{{PauliTerm{p, coefficient}}, tau};
    }

    int n_qubits() const {
        if (terms.empty()) throw InputError("drive has no terms");
        return terms.front().pauli.n_qubits();
    }

    bool is_single_pauli() const { return terms.size() == 1; }

    const PauliString &pauli() const {
        require_single_pauli("drive");
        return terms.front().pauli;
    }

    void validate() const {
        if (terms.empty()) throw InputError("drive must have at least one term");
        if (!std::isfinite(tau) || tau < 0.0) {
            throw InputError("drive duration must be finite and nonnegative, got " +
                             std::to_string(tau));
        }
        const int n = terms.front().pauli.n_qubits();
        require_qubits_within_bound(n);
        std::set<PauliString> seen;
        for (const auto &t : terms) {
            if (t.pauli.n_qubits() != n) {
                throw DimensionError("drive terms act on different qubit counts");
            }
            if (!std::isfinite(t.coefficient)) {
                throw InputError("drive coefficient for " + t.pauli.label() + " is not finite");
            }
            if (!seen.insert(t.pauli).second) {
                throw InputError("duplicate drive term " + t.pauli.label());
            }
        }
    }

    void require_single_pauli(const char *what) const {
        if (terms.size() != 1) {
            throw InputError(std::string(what) + " requires a single-Pauli drive, got " +
                             std::to_string(terms.size()) + " terms");
        }
    }

    void require_unit_single_pauli(const char *what) const {
        require_single_pauli(what);
        if (terms.front().coefficient != 1.0) {
            throw InputError(std::string(what) +
                             " requires the drive coefficient to be 1 (tau carries the angle)");
        }
    }

    /// Hilbert-space generator sum_k h_k P_k.
    ComplexMatrix hamiltonian() const {
        ComplexMatrix h = terms.front().coefficient * matrix_of(terms.front().pauli);
        for (std::size_t k = 1; k < terms.size(); ++k) {
            h += terms[k].coefficient * matrix_of(terms[k].pauli);
        }
        return h;
    }

    /// Liouville generator sum_k h_k H_k.
    Superoperator liouville_hamiltonian() const { return hamiltonian_superop(hamiltonian()); }

    /// U(t) = exp(-i t sum_k h_k P_k); closed form cos - i sin P for a single term.
    ComplexMatrix unitary(double t) const {
        using namespace std::complex_literals;
        if (is_single_pauli()) {
            const double angle = terms.front().coefficient * t;
            const ComplexMatrix p = matrix_of(terms.front().pauli);
            return std::cos(angle) * ComplexMatrix::Identity(p.rows(), p.cols()) -
                   1i * std::sin(angle) * p;
        }
        return expm(Complex(0.0, -t) * hamiltonian());
    }
};

/**
 * Coherent error sum_g h_g H_g with a global multiplier. Amplitudes already
 * include any small-parameter prefactor; `scale` is the sweep knob delta.
 */
struct CoherentErrorSpec {
    std::vector<PauliTerm> terms;
    double scale = 1.0;

    bool empty() const { return terms.empty(); }

    void validate(int n_qubits) const {
        if (!std::isfinite(scale)) throw InputError("coherent error scale is not finite");
        std::set<PauliString> seen;
        for (const auto &t : terms) {
            if (t.pauli.n_qubits() != n_qubits) {
                throw DimensionError("error term " + t.pauli.label() + " does not act on " +
                                     std::to_string(n_qubits) + " qubits");
            }
            if (!std::isfinite(t.coefficient)) {
                throw InputError("error amplitude for " + t.pauli.label() + " is not finite");
            }
            if (!seen.insert(t.pauli).second) {
                throw InputError("duplicate error term " + t.pauli.label());
            }
        }
    }

    /// Checks the spec against a drive; drive Paulis (controlled mis-rotations) are rejected.
    void validate_against(const DriveSpec &drive) const {
        drive.validate();
        validate(drive.n_qubits());
        for (const auto &t : terms) {
            for (const auto &d : drive.terms) {
                if (t.pauli == d.pauli) {
                    throw InputError("error term " + t.pauli.label() +
                                     " coincides with a drive Pauli (controlled mis-rotation is "
                                     "not a supported coherent error)");
                }
            }
        }
    }

    /// scale * sum_g h_g H_g on n qubits.
    Superoperator liouville_hamiltonian(int n_qubits) const {
        const Eigen::Index d = Eigen::Index{1} << n_qubits;
        ComplexMatrix h = ComplexMatrix::Zero(d, d);
        for (const auto &t : terms) h += (scale * t.coefficient) * matrix_of(t.pauli);
        return hamiltonian_superop(h);
    }

    CoherentErrorSpec with_scale(double s) const { return CoherentErrorSpec{terms, s}; }
};

/// sum over error terms anticommuting with the drive Pauli of (scale * h)^2.
inline double anticommuting_sum_h2(const DriveSpec &drive, const CoherentErrorSpec &err) {
    const PauliString &beta = drive.pauli();
    double sum = 0.0;
    for (const auto &t : err.terms) {
        if (anticommutes(t.pauli, beta)) {
            const double a = err.scale * t.coefficient;
            sum += a * a;
        }
    }
    return sum;
}

/// sin(x)/x with a series branch near zero.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/// 1 + (1 - sinc(2 tau)) / 2 * sum_h2, the drive amplification left after pseudo twirling.
inline double over_rotation_factor(double tau, double sum_h2) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw InputError("over_rotation_factor: tau must be finite and nonnegative");
    }
    if (!(sum_h2 >= 0.0) || !std::isfinite(sum_h2)) {
        throw InputError("over_rotation_factor: sum_h2 must be finite and nonnegative");
    }
    return 1.0 + 0.5 * (1.0 - sinc(2.0 * tau)) * sum_h2;
}

/// Drive propagator U(t) ⊗ U(t)* in Liouville space.
inline Superoperator drive_propagator(const DriveSpec &drive, double t) {
    return unitary_superop(drive.unitary(t));
}

/// U(t)^† x U(t) with U the Liouville drive propagator.
inline Superoperator to_interaction_frame(const Superoperator &x, const DriveSpec &drive,
                                          double t) {
    const Superoperator u = drive_propagator(drive, t);
    return u.adjoint() * x * u;
}

/// U(t)^† H_g U(t) for a single-Pauli drive.
inline Superoperator interaction_dressed(const PauliString &gamma, const DriveSpec &drive,
                                         double t) {
    drive.require_single_pauli("interaction_dressed");
    PauliString::require_same_width(gamma, drive.pauli());
    return to_interaction_frame(pauli_hamiltonian(gamma), drive, t);
}

namespace detail {

inline void require_magnus_inputs(const DriveSpec &drive, const CoherentErrorSpec &err,
                                  const char *what) {
    drive.validate();
    drive.require_single_pauli(what);
    err.validate_against(drive);
    if (!(drive.tau > 0.0)) {
        throw InputError(std::string(what) + ": drive duration must be positive");
    }
}

}  // namespace detail

/// -i ∫_0^tau U(t)^† P_a H_coh P_a U(t) dt.
inline ComplexMatrix omega1_alpha(const DriveSpec &drive, const CoherentErrorSpec &err,
                                  const PauliString &alpha, const QuadratureOptions &opts = {}) {
    detail::require_magnus_inputs(drive, err, "omega1_alpha");
    const int n = drive.n_qubits();
    PauliString::require_same_width(alpha, drive.pauli());
    const Superoperator twirled = pauli_conjugate(alpha, err.liouville_hamiltonian(n));
    auto integrand = [&](double t) { return to_interaction_frame(twirled, drive, t).matrix(); };
    return Complex(0.0, -1.0) * line_quadrature(integrand, drive.tau, opts).value;
}

/// Twirl average (1/4^n) sum_a omega1_alpha; vanishes for any error.
inline ComplexMatrix omega1_avg(const DriveSpec &drive, const CoherentErrorSpec &err,
                                const QuadratureOptions &opts = {}) {
    detail::require_magnus_inputs(drive, err, "omega1_avg");
    const auto group = enumerate_group(drive.n_qubits());
    ComplexMatrix sum;
    for (const auto &alpha : group) {
        ComplexMatrix term = omega1_alpha(drive, err, alpha, opts);
        if (sum.size() == 0) {
            sum = std::move(term);
        } else {
            sum += term;
        }
    }
    return sum / static_cast<double>(group.size());
}

/// -1/2 ∬_{t2<t1} [A(t1), A(t2)], A(t) = U(t)^† P_a H_coh P_a U(t).
inline ComplexMatrix omega2_alpha(const DriveSpec &drive, const CoherentErrorSpec &err,
                                  const PauliString &alpha, const QuadratureOptions &opts = {}) {
    detail::require_magnus_inputs(drive, err, "omega2_alpha");
    const int n = drive.n_qubits();
    PauliString::require_same_width(alpha, drive.pauli());
    const Superoperator twirled = pauli_conjugate(alpha, err.liouville_hamiltonian(n));

    // The quadrature sweeps t2 with t1 held fixed, so the outer insertion is cached.
    double cached_t1 = std::numeric_limits<double>::quiet_NaN();
    ComplexMatrix cached_a1;
    auto integrand = [&](double t1, double t2) -> ComplexMatrix {
        if (!(t1 == cached_t1)) {
            cached_t1 = t1;
            cached_a1 = to_interaction_frame(twirled, drive, t1).matrix();
        }
        const ComplexMatrix a2 = to_interaction_frame(twirled, drive, t2).matrix();
        return cached_a1 * a2 - a2 * cached_a1;
    };
    return -0.5 * triangle_quadrature(integrand, drive.tau, opts).value;
}

/// Twirl average (1/4^n) sum_a omega2_alpha, each term by quadrature.
inline ComplexMatrix omega2_avg(const DriveSpec &drive, const CoherentErrorSpec &err,
                                const QuadratureOptions &opts = {}) {
    detail::require_magnus_inputs(drive, err, "omega2_avg");
    const auto group = enumerate_group(drive.n_qubits());
    ComplexMatrix sum;
    for (const auto &alpha : group) {
        ComplexMatrix term = omega2_alpha(drive, err, alpha, opts);
        if (sum.size() == 0) {
            sum = std::move(term);
        } else {
            sum += term;
        }
    }
    return sum / static_cast<double>(group.size());
}

/// -i tau (1 - sinc 2tau)/2 (sum over anticommuting g of (scale h_g)^2) H_beta.
inline ComplexMatrix omega2_avg_closed(const DriveSpec &drive, const CoherentErrorSpec &err) {
    drive.validate();
    drive.require_unit_single_pauli("omega2_avg_closed");
    err.validate_against(drive);
    const double tau = drive.tau;
    const double prefactor = tau * 0.5 * (1.0 - sinc(2.0 * tau)) * anticommuting_sum_h2(drive, err);
    return Complex(0.0, -prefactor) * pauli_hamiltonian(drive.pauli()).matrix();
}

}  // namespace pstlab
