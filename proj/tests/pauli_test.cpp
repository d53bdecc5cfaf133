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

#include "pstlab/pauli.hpp"

#include <cstdlib>
#include <set>

#include "gtest/gtest.h"

using namespace pstlab;

namespace {

PauliString P(const char *label) { return PauliString::from_label(label); }

// tr(A B A B) / 2^n, straight from the matrices.
int matrix_commutation_sign(const PauliString &a, const PauliString &b) {
    const ComplexMatrix ma = matrix_of(a);
    const ComplexMatrix mb = matrix_of(b);
    const Complex tr = (ma * mb * ma * mb).trace();
    return static_cast<int>(std::lround(tr.real() / static_cast<double>(ma.rows())));
}

}  // namespace

TEST(PauliString, parses_labels_into_symplectic_bits) {
    const PauliString zx = P("ZX");
    EXPECT_EQ(zx.n_qubits(), 2);
    EXPECT_EQ(zx.x_bits(), 0b10u);  // qubit 1 carries X
    EXPECT_EQ(zx.z_bits(), 0b01u);  // qubit 0 carries Z

    EXPECT_TRUE(P("II").is_identity());

    const PauliString y = P("Y");
    EXPECT_EQ(y.x_bits(), 1u);
    EXPECT_EQ(y.z_bits(), 1u);
}

TEST(PauliString, label_round_trips) {
    for (const auto &p : enumerate_group(3)) {
        EXPECT_EQ(PauliString::from_label(p.label()), p);
    }
}

TEST(PauliString, parse_error_names_position) {
    try {
        P("XQZ");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 1u);
        EXPECT_NE(std::string(e.what()).find("position 1"), std::string::npos);
    }
    EXPECT_THROW(P(""), ParseError);
    EXPECT_THROW(P("xz"), ParseError);
}

TEST(PauliString, phase_free_product) {
    EXPECT_EQ(P("XZ") * P("ZZ"), P("YI"));
    EXPECT_EQ(P("XY") * P("XY"), P("II"));
    EXPECT_THROW(P("X") * P("XX"), DimensionError);
}

TEST(CommutationSign, examples) {
    EXPECT_EQ(commutation_sign(P("XX"), P("ZZ")), 1);
    EXPECT_EQ(commutation_sign(P("XZ"), P("ZZ")), -1);
    EXPECT_EQ(commutation_sign(P("II"), P("ZX")), 1);
    EXPECT_THROW(commutation_sign(P("X"), P("XX")), DimensionError);
}

TEST(CommutationSign, matches_trace_formula_exhaustively) {
    for (int n = 1; n <= 2; ++n) {
        const auto group = enumerate_group(n);
        for (const auto &a : group) {
            for (const auto &b : group) {
                ASSERT_EQ(commutation_sign(a, b), matrix_commutation_sign(a, b))
                    << a << " " << b;
                ASSERT_EQ(commutation_sign(a, b), commutation_sign(b, a));
            }
        }
    }
}

TEST(CommutationSign, multiplicative_over_qubits) {
    // Sign is (-1)^(number of anticommuting single-qubit factor pairs).
    for (const auto &a : enumerate_group(3)) {
        for (const auto &b : enumerate_group(3)) {
            int anticommuting_pairs = 0;
            for (int k = 0; k < 3; ++k) {
                PauliString ak(1), bk(1);
                ak.set(0, a.at(k));
                bk.set(0, b.at(k));
                if (commutation_sign(ak, bk) < 0) ++anticommuting_pairs;
            }
            ASSERT_EQ(commutation_sign(a, b), anticommuting_pairs % 2 == 0 ? 1 : -1);
        }
    }
}

TEST(EnumerateGroup, order_and_uniqueness) {
    const auto one = enumerate_group(1);
    ASSERT_EQ(one.size(), 4u);
    EXPECT_EQ(one[0].label(), "I");
    EXPECT_EQ(one[1].label(), "X");
    EXPECT_EQ(one[2].label(), "Y");
    EXPECT_EQ(one[3].label(), "Z");

    const auto two = enumerate_group(2);
    ASSERT_EQ(two.size(), 16u);
    const char *head[] = {"II", "IX", "IY", "IZ", "XI"};
    for (int k = 0; k < 5; ++k) EXPECT_EQ(two[static_cast<std::size_t>(k)].label(), head[k]);
    std::set<std::string> labels;
    for (std::size_t k = 0; k < two.size(); ++k) {
        labels.insert(two[k].label());
        EXPECT_EQ(two[k].group_index(), k);
    }
    EXPECT_EQ(labels.size(), 16u);
}

TEST(EnumerateGroup, respects_resource_bound) {
    EXPECT_THROW(enumerate_group(0), InputError);
    EXPECT_THROW(enumerate_group(max_qubits() + 1), ResourceError);
}

TEST(MatrixOf, examples) {
    const ComplexMatrix z = matrix_of(P("Z"));
    EXPECT_EQ(z(0, 0), Complex(1.0));
    EXPECT_EQ(z(1, 1), Complex(-1.0));
    EXPECT_EQ(z(0, 1), Complex(0.0));

    const ComplexMatrix zx = matrix_of(P("ZX"));
    ComplexMatrix expected(4, 4);
    expected << 0, 1, 0, 0,  //
        1, 0, 0, 0,          //
        0, 0, 0, -1,         //
        0, 0, -1, 0;
    EXPECT_EQ(zx, expected);
}

TEST(MatrixOf, hermitian_involutions) {
    for (const auto &p : enumerate_group(2)) {
        const ComplexMatrix m = matrix_of(p);
        EXPECT_EQ(m, m.adjoint()) << p;
        EXPECT_LE((m * m - ComplexMatrix::Identity(4, 4)).norm(), 0.0) << p;
    }
}

TEST(MatrixOf, product_consistent_with_commutation_sign) {
    const auto group = enumerate_group(2);
    for (const auto &a : group) {
        for (const auto &b : group) {
            const ComplexMatrix ab = matrix_of(a) * matrix_of(b);
            const ComplexMatrix ba = matrix_of(b) * matrix_of(a);
            ASSERT_LE((ab - static_cast<double>(commutation_sign(a, b)) * ba).norm(), 1e-15);
            // ab is a unit phase times the phase-free product.
            const ComplexMatrix prod = matrix_of(a * b);
            const Complex phase = (prod.adjoint() * ab).trace() / 4.0;
            ASSERT_NEAR(std::abs(phase), 1.0, 1e-15);
            ASSERT_LE((ab - phase * prod).norm(), 1e-14);
        }
    }
}

TEST(SignTable, single_qubit_rows) {
    const Eigen::MatrixXi s = sign_table(1);
    ASSERT_EQ(s.rows(), 4);
    Eigen::RowVector4i x_row;
    x_row << 1, 1, -1, -1;
    EXPECT_EQ(Eigen::RowVector4i(s.row(1)), x_row);
}

TEST(SignTable, symmetric_with_trivial_first_row) {
    for (int n = 1; n <= 2; ++n) {
        const Eigen::MatrixXi s = sign_table(n);
        EXPECT_EQ(s, s.transpose());
        EXPECT_TRUE((s.row(0).array() == 1).all());
        EXPECT_TRUE((s.col(0).array() == 1).all());
    }
}

TEST(SignTable, orthogonality) {
    for (int n = 1; n <= 2; ++n) {
        const Eigen::MatrixXi s = sign_table(n);
        const Eigen::MatrixXi gram = s.transpose() * s;
        const int size = static_cast<int>(s.rows());
        for (int g = 0; g < size; ++g) {
            for (int h = 0; h < size; ++h) {
                ASSERT_EQ(gram(g, h), g == h ? size : 0) << "n=" << n << " g=" << g << " h=" << h;
            }
        }
    }
}

TEST(SignTable, csv_header_and_rows) {
    const std::string csv = sign_table_csv(1);
    EXPECT_EQ(csv,
              "alpha,I,X,Y,Z\n"
              "I,1,1,1,1\n"
              "X,1,1,-1,-1\n"
              "Y,1,-1,1,-1\n"
              "Z,1,-1,-1,1\n");
}
