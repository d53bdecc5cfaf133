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

#include <bit>
#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pstlab/errors.hpp"

namespace pstlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Symbols for the single-qubit Pauli operators (and identity).
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * An n-qubit Pauli word in symplectic form.
 *
 * Qubit k carries sigma_x iff bit k of x_bits is set, sigma_z iff bit k of
 * z_bits is set, and sigma_y iff both are set. Qubit 0 is the leftmost
 * character of the label and the leftmost (most significant) Kronecker factor.
 * Products and conjugations never track the global phase.
 */
class PauliString {
  public:
    static constexpr int kMaxWidth = 64;

    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(int n_qubits) : n_qubits_(n_qubits) { check_width(n_qubits); }

    PauliString(int n_qubits, std::uint64_t x_bits, std::uint64_t z_bits)
        : n_qubits_(n_qubits), x_bits_(x_bits), z_bits_(z_bits) {
        check_width(n_qubits);
        const std::uint64_t mask = width_mask(n_qubits);
        if ((x_bits & ~mask) != 0 || (z_bits & ~mask) != 0) {
            throw InputError("Pauli bit-vector has bits set beyond qubit count " +
                             std::to_string(n_qubits));
        }
    }

    static PauliString from_label(std::string_view label) {
        if (label.empty()) {
            throw ParseError("empty Pauli label", 0);
        }
        if (label.size() > static_cast<std::size_t>(kMaxWidth)) {
            throw ParseError("Pauli label longer than " + std::to_string(kMaxWidth) + " qubits",
                             kMaxWidth);
        }
        PauliString p(static_cast<int>(label.size()));
        for (std::size_t k = 0; k < label.size(); ++k) {
            switch (label[k]) {
                case 'I': break;
                case 'X': p.set(static_cast<int>(k), Pauli::X); break;
                case 'Y': p.set(static_cast<int>(k), Pauli::Y); break;
                case 'Z': p.set(static_cast<int>(k), Pauli::Z); break;
                default:
                    throw ParseError("invalid character '" + std::string(1, label[k]) +
                                         "' at position " + std::to_string(k) +
                                         " in Pauli label \"" + std::string(label) + "\"",
                                     k);
            }
        }
        return p;
    }

    int n_qubits() const { return n_qubits_; }
    std::uint64_t x_bits() const { return x_bits_; }
    std::uint64_t z_bits() const { return z_bits_; }

    Pauli at(int qubit) const {
        const bool x = (x_bits_ >> qubit) & 1U;
        const bool z = (z_bits_ >> qubit) & 1U;
        if (x && z) return Pauli::Y;
        if (x) return Pauli::X;
        if (z) return Pauli::Z;
        return Pauli::I;
    }

    void set(int qubit, Pauli p) {
        const std::uint64_t bit = std::uint64_t{1} << qubit;
        x_bits_ &= ~bit;
        z_bits_ &= ~bit;
        if (p == Pauli::X || p == Pauli::Y) x_bits_ |= bit;
        if (p == Pauli::Z || p == Pauli::Y) z_bits_ |= bit;
    }

    bool is_identity() const { return x_bits_ == 0 && z_bits_ == 0; }

    /// Number of non-identity factors.
    int weight() const { return std::popcount(x_bits_ | z_bits_); }

    std::string label() const {
        static constexpr char kSymbols[] = {'I', 'X', 'Y', 'Z'};
        std::string out(static_cast<std::size_t>(n_qubits_), 'I');
        for (int k = 0; k < n_qubits_; ++k) {
            out[static_cast<std::size_t>(k)] = kSymbols[static_cast<int>(at(k))];
        }
        return out;
    }

    /// Position in enumerate_group order (base-4 digits I<X<Y<Z, qubit 0 most significant).
    std::uint64_t group_index() const {
        std::uint64_t idx = 0;
        for (int k = 0; k < n_qubits_; ++k) {
            idx = idx * 4 + static_cast<std::uint64_t>(at(k));
        }
        return idx;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

    /// Orders like enumerate_group for equal widths.
    friend bool operator<(const PauliString &a, const PauliString &b) {
        if (a.n_qubits_ != b.n_qubits_) return a.n_qubits_ < b.n_qubits_;
        return a.group_index() < b.group_index();
    }

    /// Phase-free product: the Pauli word proportional to a*b.
    friend PauliString operator*(const PauliString &a, const PauliString &b) {
        require_same_width(a, b);
        return PauliString(a.n_qubits_, a.x_bits_ ^ b.x_bits_, a.z_bits_ ^ b.z_bits_);
    }

    friend std::ostream &operator<<(std::ostream &os, const PauliString &p) {
        return os << p.label();
    }

    static void require_same_width(const PauliString &a, const PauliString &b) {
        if (a.n_qubits_ != b.n_qubits_) {
            throw DimensionError("Pauli strings act on different qubit counts: " + a.label() +
                                 " vs " + b.label());
        }
    }

  private:
    static std::uint64_t width_mask(int n) {
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

    static void check_width(int n) {
        if (n < 1 || n > kMaxWidth) {
            throw InputError("Pauli string width must be in [1, 64], got " + std::to_string(n));
        }
    }

    int n_qubits_ = 1;
    std::uint64_t x_bits_ = 0;
    std::uint64_t z_bits_ = 0;
};

/// +1 if the strings commute, -1 if they anticommute; symplectic, no matrices.
inline int commutation_sign(const PauliString &a, const PauliString &b) {
    PauliString::require_same_width(a, b);
    const std::uint64_t overlap = (a.x_bits() & b.z_bits()) ^ (a.z_bits() & b.x_bits());
    return (std::popcount(overlap) % 2 == 0) ? 1 : -1;
}

inline bool anticommutes(const PauliString &a, const PauliString &b) {
    return commutation_sign(a, b) < 0;
}

/// All 4^n Pauli strings in lexicographic order (I<X<Y<Z, leftmost qubit most significant).
inline std::vector<PauliString> enumerate_group(int n) {
    require_qubits_within_bound(n);
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    std::vector<PauliString> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        PauliString p(n);
        std::uint64_t rest = idx;
        for (int k = n - 1; k >= 0; --k) {
            p.set(k, static_cast<Pauli>(rest % 4));
            rest /= 4;
        }
        out.push_back(p);
    }
    return out;
}

inline ComplexMatrix single_qubit_matrix(Pauli p) {
    using namespace std::complex_literals;
    ComplexMatrix m(2, 2);
    switch (p) {
        case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
        case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
        case Pauli::Y: m << 0.0, -1i, 1i, 0.0; break;
        case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

/// Dense Kronecker product, a's index most significant.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// 2^n x 2^n matrix of the word, sigma_(qubit 0) ⊗ sigma_(qubit 1) ⊗ ...
inline ComplexMatrix matrix_of(const PauliString &p) {
    require_qubits_within_bound(p.n_qubits());
    ComplexMatrix m = single_qubit_matrix(p.at(0));
    for (int k = 1; k < p.n_qubits(); ++k) {
        m = kron(m, single_qubit_matrix(p.at(k)));
    }
    return m;
}

/// S[a][g] = commutation_sign(P_a, P_g), rows and columns in enumerate_group order.
inline Eigen::MatrixXi sign_table(int n) {
    const auto group = enumerate_group(n);
    const auto size = static_cast<Eigen::Index>(group.size());
    Eigen::MatrixXi s(size, size);
    for (Eigen::Index a = 0; a < size; ++a) {
        for (Eigen::Index g = 0; g < size; ++g) {
            s(a, g) = commutation_sign(group[static_cast<std::size_t>(a)],
                                       group[static_cast<std::size_t>(g)]);
        }
    }
    return s;
}

/// CSV with a header row of labels; the first column carries the row label.
inline std::string sign_table_csv(int n) {
    const auto group = enumerate_group(n);
    const Eigen::MatrixXi s = sign_table(n);
    std::ostringstream os;
    os << "alpha";
    for (const auto &p : group) os << ',' << p.label();
    os << '\n';
    for (Eigen::Index a = 0; a < s.rows(); ++a) {
        os << group[static_cast<std::size_t>(a)].label();
        for (Eigen::Index g = 0; g < s.cols(); ++g) os << ',' << s(a, g);
        os << '\n';
    }
    return os.str();
}

}  // namespace pstlab
