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

// Liouville-space constructions. Density matrices are vectorized by row-major
// stacking, vec(rho)[i * d + j] = rho(i, j), so that rho -> A rho B becomes
// (A ⊗ B^T) vec(rho). Every superoperator in the library uses this convention.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pstlab/errors.hpp"
#include "pstlab/numerics.hpp"
#include "pstlab/pauli.hpp"

namespace pstlab {

/// A linear map on vectorized 2^n x 2^n density matrices, stored as a dense 4^n x 4^n matrix.
class Superoperator {
  public:
    Superoperator() = default;

    explicit Superoperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols()) {
            throw DimensionError("superoperator matrix must be square");
        }
        const auto d = static_cast<Eigen::Index>(
            std::llround(std::sqrt(static_cast<double>(matrix_.rows()))));
        if (d * d != matrix_.rows() || d == 0) {
            throw DimensionError("superoperator dimension " + std::to_string(matrix_.rows()) +
                                 " is not a perfect square");
        }
        hilbert_dim_ = d;
    }

    static Superoperator zero(Eigen::Index hilbert_dim) {
        const auto d2 = hilbert_dim * hilbert_dim;
        return Superoperator(ComplexMatrix::Zero(d2, d2));
    }

    static Superoperator identity(Eigen::Index hilbert_dim) {
        const auto d2 = hilbert_dim * hilbert_dim;
        return Superoperator(ComplexMatrix::Identity(d2, d2));
    }

    Eigen::Index hilbert_dim() const { return hilbert_dim_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }

    Superoperator adjoint() const { return Superoperator(matrix_.adjoint()); }

    /// Applies the map to a density matrix.
    ComplexMatrix apply(const ComplexMatrix &rho) const;

    Superoperator &operator+=(const Superoperator &o) {
        require_same(o);
        matrix_ += o.matrix_;
        return *this;
    }
    Superoperator &operator-=(const Superoperator &o) {
        require_same(o);
        matrix_ -= o.matrix_;
        return *this;
    }
    Superoperator &operator*=(Complex s) {
        matrix_ *= s;
        return *this;
    }

    friend Superoperator operator+(Superoperator a, const Superoperator &b) { return a += b; }
    friend Superoperator operator-(Superoperator a, const Superoperator &b) { return a -= b; }
    friend Superoperator operator-(Superoperator a) { return a *= Complex(-1.0); }
    friend Superoperator operator*(Complex s, Superoperator a) { return a *= s; }
    friend Superoperator operator*(double s, Superoperator a) { return a *= Complex(s); }
    friend Superoperator operator*(const Superoperator &a, const Superoperator &b) {
        a.require_same(b);
        return Superoperator(a.matrix_ * b.matrix_);
    }

  private:
    void require_same(const Superoperator &o) const {
        if (o.matrix_.rows() != matrix_.rows()) {
            throw DimensionError("superoperator dimensions differ: " +
                                 std::to_string(matrix_.rows()) + " vs " +
                                 std::to_string(o.matrix_.rows()));
        }
    }

    ComplexMatrix matrix_;
    Eigen::Index hilbert_dim_ = 0;
};

/// [a, b] = ab - ba.
inline Superoperator commutator(const Superoperator &a, const Superoperator &b) {
    return a * b - b * a;
}

inline Superoperator expm(const Superoperator &s) { return Superoperator(expm(s.matrix())); }
inline Superoperator logm_principal(const Superoperator &s) {
    return Superoperator(logm_principal(s.matrix()));
}
inline double op_norm(const Superoperator &s) { return op_norm(s.matrix()); }

// ---------------------------------------------------------------------------
// Vectorization

inline Eigen::VectorXcd vectorize(const ComplexMatrix &rho) {
    detail::require_square(rho, "vectorize");
    const auto d = rho.rows();
    Eigen::VectorXcd v(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
    }
    return v;
}

inline ComplexMatrix devectorize(const Eigen::VectorXcd &v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) {
        throw DimensionError("devectorize: length " + std::to_string(v.size()) +
                             " is not a perfect square");
    }
    ComplexMatrix rho(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
    }
    return rho;
}

inline ComplexMatrix Superoperator::apply(const ComplexMatrix &rho) const {
    if (rho.rows() != hilbert_dim_) {
        throw DimensionError("state dimension does not match superoperator");
    }
    return devectorize(matrix_ * vectorize(rho));
}

// ---------------------------------------------------------------------------
// Constructors

namespace detail {

inline double max_abs_entry(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_hermitian(const ComplexMatrix &h, const char *what) {
    require_square(h, what);
    const double scale = std::max(1.0, max_abs_entry(h));
    if (max_abs_entry(h - h.adjoint()) > 1e-12 * scale) {
        throw InputError(std::string(what) + ": matrix is not Hermitian");
    }
}

inline void require_unitary(const ComplexMatrix &u, const char *what) {
    require_square(u, what);
    const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
    if (max_abs_entry(u.adjoint() * u - id) > 1e-10) {
        throw InputError(std::string(what) + ": matrix is not unitary");
    }
}

}  // namespace detail

/// H ⊗ I - I ⊗ H^T for a Hermitian H.
inline Superoperator hamiltonian_superop(const ComplexMatrix &h) {
    detail::require_hermitian(h, "hamiltonian_superop");
    const ComplexMatrix id = ComplexMatrix::Identity(h.rows(), h.cols());
    return Superoperator(kron(h, id) - kron(id, h.transpose()));
}

/// Liouville Pauli Hamiltonian P ⊗ I - I ⊗ P^T.
inline Superoperator pauli_hamiltonian(const PauliString &p) {
    return hamiltonian_superop(matrix_of(p));
}

/// U ⊗ U* for a unitary U.
inline Superoperator unitary_superop(const ComplexMatrix &u) {
    detail::require_unitary(u, "unitary_superop");
    return Superoperator(kron(u, u.conjugate()));
}

/// Liouville Pauli unitary P ⊗ P*; an involution.
inline Superoperator pauli_unitary_superop(const PauliString &p) {
    const ComplexMatrix m = matrix_of(p);
    return Superoperator(kron(m, m.conjugate()));
}

/// Conjugation by a Pauli unitary, P s P.
inline Superoperator pauli_conjugate(const PauliString &p, const Superoperator &s) {
    const Superoperator pu = pauli_unitary_superop(p);
    return pu * s * pu;
}

// ---------------------------------------------------------------------------
// Noise

enum class NoiseKind { none, pauli_z, amplitude_damping };

inline std::string_view to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::none: return "none";
        case NoiseKind::pauli_z: return "pauli_z";
        case NoiseKind::amplitude_damping: return "amplitude_damping";
    }
    return "none";
}

inline NoiseKind noise_kind_from_string(std::string_view s) {
    if (s == "none") return NoiseKind::none;
    if (s == "pauli_z") return NoiseKind::pauli_z;
    if (s == "amplitude_damping") return NoiseKind::amplitude_damping;
    throw InputError("unknown noise kind '" + std::string(s) +
                     "' (expected none, pauli_z or amplitude_damping)");
}

/**
 * One Lindblad operator per target qubit, all with the same rate. The rate is
 * dimensionless: the pulse duration is already absorbed into it.
 * pauli_z uses sqrt(rate) sigma_z, amplitude_damping uses sqrt(rate) |0><1|.
 */
struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double rate = 0.0;
    std::vector<int> targets;

    static NoiseSpec none() { return {}; }

    static NoiseSpec on_all_qubits(NoiseKind kind, double rate, int n_qubits) {
        NoiseSpec spec{kind, rate, {}};
        for (int q = 0; q < n_qubits; ++q) spec.targets.push_back(q);
        return spec;
    }

    void validate(int n_qubits) const {
        if (!std::isfinite(rate) || rate < 0.0) {
            throw InputError("noise rate must be finite and nonnegative, got " +
                             std::to_string(rate));
        }
        std::set<int> seen;
        for (int t : targets) {
            if (t < 0 || t >= n_qubits) {
                throw InputError("noise target " + std::to_string(t) + " out of range for " +
                                 std::to_string(n_qubits) + " qubits");
            }
            if (!seen.insert(t).second) {
                throw InputError("duplicate noise target " + std::to_string(t));
            }
        }
    }
};

/// Single-qubit operator embedded at `qubit` of an n-qubit register (qubit 0 leftmost).
inline ComplexMatrix embed_single_qubit(const ComplexMatrix &op, int qubit, int n_qubits) {
    ComplexMatrix out = (qubit == 0) ? op : ComplexMatrix::Identity(2, 2);
    for (int k = 1; k < n_qubits; ++k) {
        out = kron(out, (k == qubit) ? op : ComplexMatrix(ComplexMatrix::Identity(2, 2)));
    }
    return out;
}

/// Vectorized Lindblad dissipator from explicit jump operators.
inline Superoperator lindblad_dissipator(const std::vector<ComplexMatrix> &jumps, Eigen::Index d) {
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
    for (const auto &l : jumps) {
        if (l.rows() != d || l.cols() != d) {
            throw DimensionError("jump operator dimension mismatch");
        }
        const ComplexMatrix ldl = l.adjoint() * l;
        out += kron(l, l.conjugate()) - 0.5 * (kron(ldl, id) + kron(id, ldl.transpose()));
    }
    return Superoperator(std::move(out));
}

inline Superoperator dissipator_superop(const NoiseSpec &spec, int n_qubits) {
    require_qubits_within_bound(n_qubits);
    spec.validate(n_qubits);
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    if (spec.kind == NoiseKind::none || spec.rate == 0.0) {
        return Superoperator::zero(d);
    }
    ComplexMatrix local(2, 2);
    if (spec.kind == NoiseKind::pauli_z) {
        local = single_qubit_matrix(Pauli::Z);
    } else {
        local << 0.0, 1.0, 0.0, 0.0;
    }
    local *= std::sqrt(spec.rate);
    std::vector<ComplexMatrix> jumps;
    for (int t : spec.targets) jumps.push_back(embed_single_qubit(local, t, n_qubits));
    return lindblad_dissipator(jumps, d);
}

}  // namespace pstlab
