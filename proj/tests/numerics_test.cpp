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

#include "pstlab/numerics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "pstlab/liouville.hpp"

using namespace pstlab;
using namespace std::complex_literals;

namespace {

ComplexMatrix random_matrix(std::mt19937_64 &rng, Eigen::Index n, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
    }
    return scale * m;
}

// Anti-Hermitian with spectral radius exactly `radius`.
ComplexMatrix random_anti_hermitian(std::mt19937_64 &rng, Eigen::Index n, double radius) {
    const ComplexMatrix a = random_matrix(rng, n);
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    return Complex(0.0, radius / rho) * h;
}

// exp(i H) for Hermitian H via its spectral decomposition; independent of expm.
ComplexMatrix exp_i_hermitian(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::exp(1i * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double rel_err(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace

TEST(Expm, zero_gives_identity) {
    const ComplexMatrix z = ComplexMatrix::Zero(5, 5);
    EXPECT_EQ(expm(z), ComplexMatrix::Identity(5, 5));
}

TEST(Expm, diagonal_pauli_rotation) {
    const double tau = 0.5;
    const ComplexMatrix sz = single_qubit_matrix(Pauli::Z);
    const ComplexMatrix u = expm(Complex(0.0, -tau) * sz);
    EXPECT_LE(std::abs(u(0, 0) - std::exp(-1i * tau)), 1e-15);
    EXPECT_LE(std::abs(u(1, 1) - std::exp(1i * tau)), 1e-15);
    EXPECT_LE(std::abs(u(0, 1)), 1e-16);
}

TEST(Expm, squaring_identity_on_random_inputs) {
    std::mt19937_64 rng(11);
    // Norms spanning every Pade branch and the scaled degree-13 path.
    for (double scale : {1e-3, 0.05, 0.2, 0.5, 1.5, 4.0, 10.0}) {
        for (int trial = 0; trial < 4; ++trial) {
            const ComplexMatrix m = random_matrix(rng, 6, scale / 6.0);
            const ComplexMatrix half = expm(0.5 * m);
            EXPECT_LE(rel_err(expm(m), half * half), 1e-12) << "scale " << scale;
        }
    }
}

TEST(Expm, matches_spectral_oracle_for_hermitian_generators) {
    std::mt19937_64 rng(12);
    for (double radius : {0.01, 0.7, 3.0, 12.0}) {
        const ComplexMatrix a = random_anti_hermitian(rng, 8, radius);  // a = i H
        const ComplexMatrix h = Complex(0.0, -1.0) * a;
        EXPECT_LE(rel_err(expm(a), exp_i_hermitian(h)), 1e-12) << "radius " << radius;
    }
}

TEST(Expm, rejects_bad_input) {
    EXPECT_THROW(expm(ComplexMatrix::Zero(2, 3)), DimensionError);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(expm(bad), NumericalError);
}

TEST(Logm, identity_and_diagonal) {
    EXPECT_LE(logm_principal(ComplexMatrix::Identity(4, 4)).norm(), 1e-15);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = std::exp(0.3i);
    d(1, 1) = std::exp(-0.3i);
    const ComplexMatrix l = logm_principal(d);
    EXPECT_LE(std::abs(l(0, 0) - 0.3i), 1e-15);
    EXPECT_LE(std::abs(l(1, 1) + 0.3i), 1e-15);
    EXPECT_LE(std::abs(l(0, 1)) + std::abs(l(1, 0)), 1e-15);
}

TEST(Logm, recovers_pauli_hamiltonian_generator) {
    // Spectrum of H_zx is {0, +-2}, so tau = 0.5 keeps every phase at most 1 < pi.
    const double tau = 0.5;
    const ComplexMatrix gen = Complex(0.0, -tau) * pauli_hamiltonian(PauliString::from_label("ZX")).matrix();
    EXPECT_LE(rel_err(logm_principal(expm(gen)), gen), 1e-12);
}

TEST(Logm, round_trip_on_random_anti_hermitian) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const double radius = 0.1 + 0.19 * trial;  // up to 1.81 < 2
        const ComplexMatrix a = random_anti_hermitian(rng, 8, radius);
        const ComplexMatrix l = logm_principal(expm(a));
        EXPECT_LE(rel_err(l, a), 1e-10) << "radius " << radius;
        EXPECT_LE(rel_err(expm(l), expm(a)), 1e-9);
    }
}

TEST(Logm, principal_arguments) {
    std::mt19937_64 rng(14);
    // Phases beyond pi wrap back into (-pi, pi).
    const ComplexMatrix a = random_anti_hermitian(rng, 6, 4.0);
    const ComplexMatrix m = expm(a);
    const ComplexMatrix l = logm_principal(m);
    EXPECT_LE(rel_err(expm(l), m), 1e-9);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(l);
    for (Eigen::Index k = 0; k < l.rows(); ++k) {
        EXPECT_LT(std::abs(es.eigenvalues()(k).imag()), std::numbers::pi);
    }
}

TEST(Logm, branch_cut_error) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 0) = -1.0;
    EXPECT_THROW(logm_principal(m), BranchCutError);
    m(0, 0) = std::exp(Complex(0.0, std::numbers::pi - 1e-10));
    EXPECT_THROW(logm_principal(m), BranchCutError);
    m(0, 0) = std::exp(Complex(0.0, std::numbers::pi - 1e-3));
    EXPECT_NO_THROW(logm_principal(m));
}

TEST(Logm, singular_and_defective_inputs) {
    ComplexMatrix singular = ComplexMatrix::Identity(2, 2);
    singular(1, 1) = 0.0;
    EXPECT_THROW(logm_principal(singular), NumericalError);

    ComplexMatrix jordan(2, 2);
    jordan << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(logm_principal(jordan), NumericalError);
}

TEST(OpNorm, examples) {
    EXPECT_NEAR(op_norm(ComplexMatrix::Identity(7, 7)), 1.0, 1e-15);
    std::mt19937_64 rng(15);
    const ComplexMatrix u = expm(random_anti_hermitian(rng, 5, 2.0));
    EXPECT_NEAR(op_norm(u), 1.0, 1e-12);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -4.0;
    EXPECT_NEAR(op_norm(d), 4.0, 1e-14);
}

TEST(OpNorm, matches_gram_spectrum_and_is_multiplicative_under_kron) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 8; ++trial) {
        const ComplexMatrix a = random_matrix(rng, 3);
        const ComplexMatrix b = random_matrix(rng, 4);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> gram(a.adjoint() * a);
        const double oracle = std::sqrt(gram.eigenvalues().maxCoeff());
        EXPECT_NEAR(op_norm(a), oracle, 1e-10 * oracle);
        const double lhs = op_norm(kron(a, b));
        EXPECT_NEAR(lhs, op_norm(a) * op_norm(b), 1e-10 * lhs);
    }
}

TEST(OpNorm, rejects_non_finite) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 0) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(op_norm(m), NumericalError);
}

namespace {

ComplexMatrix scalar(Complex v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

}  // namespace

TEST(TriangleQuadrature, constant_gives_triangle_area) {
    const auto r = triangle_quadrature([](double, double) { return scalar(1.0); }, 0.7);
    EXPECT_NEAR(r.value(0, 0).real(), 0.7 * 0.7 / 2.0, 1e-14);
    EXPECT_GT(r.evaluations, 0);
    EXPECT_LE(r.estimated_error, 1e-9);
}

TEST(TriangleQuadrature, oscillatory_kernel) {
    // ∫_0^tau dt1 ∫_0^t1 sin(2 (t2 - t1)) dt2 = (sin 2tau - 2tau) / 4, by hand.
    auto f = [](double t1, double t2) { return scalar(std::sin(2.0 * (t2 - t1))); };
    const auto r = triangle_quadrature(f, 0.5);
    EXPECT_NEAR(r.value(0, 0).real(), -0.039632253798025875, 1e-12);
    for (double tau : {0.3, 1.0, 2.5}) {
        const auto rt = triangle_quadrature(f, tau);
        EXPECT_NEAR(rt.value(0, 0).real(), (std::sin(2.0 * tau) - 2.0 * tau) / 4.0, 1e-10) << tau;
    }
}

TEST(TriangleQuadrature, polynomial_kernel) {
    const double tau = 1.3;
    const auto r = triangle_quadrature([](double t1, double t2) { return scalar(t1 * t2); }, tau);
    EXPECT_NEAR(r.value(0, 0).real(), std::pow(tau, 4) / 8.0, 1e-13);
}

TEST(TriangleQuadrature, matrix_valued_integrand) {
    auto f = [](double t1, double t2) {
        ComplexMatrix m(2, 2);
        m << 1.0, Complex(0.0, t1), t2, t1 * t2;
        return m;
    };
    const double tau = 0.9;
    const auto r = triangle_quadrature(f, tau);
    EXPECT_NEAR(r.value(0, 0).real(), tau * tau / 2.0, 1e-13);
    EXPECT_NEAR(r.value(0, 1).imag(), std::pow(tau, 3) / 3.0, 1e-13);
    EXPECT_NEAR(r.value(1, 0).real(), std::pow(tau, 3) / 6.0, 1e-13);
    EXPECT_NEAR(r.value(1, 1).real(), std::pow(tau, 4) / 8.0, 1e-13);
}

TEST(TriangleQuadrature, trapezoid_base_rule_is_second_order) {
    auto f = [](double t1, double t2) { return scalar(std::sin(2.0 * (t2 - t1))); };
    const double tau = 0.5;
    const double exact = (std::sin(1.0) - 1.0) / 4.0;
    double previous = std::abs(triangle_trapezoid(f, tau, 3)(0, 0).real() - exact);
    for (int level = 4; level <= 7; ++level) {
        const double err = std::abs(triangle_trapezoid(f, tau, level)(0, 0).real() - exact);
        EXPECT_NEAR(previous / err, 4.0, 0.1) << "level " << level;
        previous = err;
    }
}

TEST(TriangleQuadrature, error_estimate_bounds_actual_error) {
    auto f = [](double t1, double t2) { return scalar(std::exp(t1 - 3.0 * t2) * std::cos(5.0 * t1)); };
    // Reference: same integrand at a much tighter tolerance.
    const double ref = triangle_quadrature(f, 1.0, QuadratureOptions{1e-14}).value(0, 0).real();
    const auto r = triangle_quadrature(f, 1.0, QuadratureOptions{1e-6});
    EXPECT_LE(r.estimated_error, 1e-6);
    EXPECT_LE(std::abs(r.value(0, 0).real() - ref), r.estimated_error + 1e-12);
}

TEST(TriangleQuadrature, convergence_failure_carries_best_estimate) {
    auto f = [](double t1, double t2) { return scalar(std::sin(40.0 * t1 * t2)); };
    QuadratureOptions opts;
    opts.tolerance = 1e-14;
    opts.max_evaluations = 200;
    try {
        triangle_quadrature(f, 3.0, opts);
        FAIL() << "expected convergence failure";
    } catch (const QuadratureConvergenceError &e) {
        EXPECT_EQ(e.best_estimate().value.rows(), 1);
        EXPECT_GT(e.best_estimate().evaluations, 0);
        EXPECT_LE(e.best_estimate().evaluations, 200);
        EXPECT_TRUE(std::isfinite(e.best_estimate().estimated_error));
    }
}

TEST(TriangleQuadrature, rejects_bad_duration) {
    auto f = [](double, double) { return scalar(1.0); };
    EXPECT_THROW(triangle_quadrature(f, 0.0), InputError);
    EXPECT_THROW(triangle_quadrature(f, -1.0), InputError);
}

TEST(TriangleQuadrature, bit_reproducible) {
    auto f = [](double t1, double t2) { return scalar(std::exp(Complex(0.0, 3.0 * t1 - t2))); };
    const auto a = triangle_quadrature(f, 0.8);
    const auto b = triangle_quadrature(f, 0.8);
    EXPECT_EQ(a.value(0, 0), b.value(0, 0));
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(LineQuadrature, cosine) {
    const auto r = line_quadrature([](double t) { return scalar(std::cos(3.0 * t)); }, 1.2);
    EXPECT_NEAR(r.value(0, 0).real(), std::sin(3.6) / 3.0, 1e-12);
}
