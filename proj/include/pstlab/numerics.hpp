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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "pstlab/errors.hpp"
#include "pstlab/pauli.hpp"

namespace pstlab {

inline bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
        }
    }
    return true;
}

namespace detail {

inline void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_finite(const ComplexMatrix &m, const char *what) {
    if (!all_finite(m)) {
        throw NumericalError(std::string(what) + ": matrix has non-finite entries");
    }
}

inline double one_norm(const ComplexMatrix &m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator pieces: exp(A) ~ (V - U)^{-1} (V + U).
template <std::size_t N>
std::pair<ComplexMatrix, ComplexMatrix> pade_low(const ComplexMatrix &a,
                                                 const std::array<double, N> &b) {
    const auto n = a.rows();
    const ComplexMatrix a2 = a * a;
    // Even coefficients b[0], b[2], ... build V; odd ones build U / A.
    ComplexMatrix u_sum = ComplexMatrix::Zero(n, n);
    ComplexMatrix v_sum = ComplexMatrix::Zero(n, n);
    ComplexMatrix power = ComplexMatrix::Identity(n, n);
    for (std::size_t k = 0; k < N; k += 2) {
        v_sum += b[k] * power;
        if (k + 1 < N) u_sum += b[k + 1] * power;
        power = power * a2;
    }
    return {a * u_sum, v_sum};
}

}  // namespace detail

/**
 * Matrix exponential by scaling and squaring with a diagonal Pade approximant
 * of degree 3, 5, 7, 9 or 13 chosen from the 1-norm (Higham 2005 thresholds).
 */
inline ComplexMatrix expm(const ComplexMatrix &m) {
    detail::require_square(m, "expm");
    detail::require_finite(m, "expm");
    const auto n = m.rows();
    if (n == 0) return m;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const double norm = detail::one_norm(m);

    static constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
    static constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                                     25200.0,    1512.0,    56.0,      1.0};
    static constexpr std::array<double, 10> kPade9 = {
        17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0,     110880.0,     3960.0,       90.0,        1.0};
    static constexpr std::array<double, 14> kPade13 = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};

    auto solve = [&](const ComplexMatrix &u, const ComplexMatrix &v) -> ComplexMatrix {
        return (v - u).partialPivLu().solve(v + u);
    };

    if (norm <= 1.495585217958292e-2) {
        auto [u, v] = detail::pade_low(m, kPade3);
        return solve(u, v);
    }
    if (norm <= 2.539398330063230e-1) {
        auto [u, v] = detail::pade_low(m, kPade5);
        return solve(u, v);
    }
    if (norm <= 9.504178996162932e-1) {
        auto [u, v] = detail::pade_low(m, kPade7);
        return solve(u, v);
    }
    if (norm <= 2.097847961257068) {
        auto [u, v] = detail::pade_low(m, kPade9);
        return solve(u, v);
    }

    constexpr double kTheta13 = 5.371920351148152;
    int squarings = 0;
    if (norm > kTheta13) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    }
    const ComplexMatrix a = m / std::ldexp(1.0, squarings);
    const auto &b = kPade13;
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                            b[2] * a2 + b[0] * id;
    ComplexMatrix result = solve(u, v);
    for (int k = 0; k < squarings; ++k) {
        result = result * result;
    }
    return result;
}

/**
 * Principal logarithm through an eigendecomposition m = V diag(l) V^-1.
 *
 * Throws BranchCutError when an eigenvalue sits within 1e-8 (relative) of the
 * closed negative real axis, and NumericalError when m is singular or not
 * diagonalizable to working accuracy.
 */
inline ComplexMatrix logm_principal(const ComplexMatrix &m) {
    detail::require_square(m, "logm_principal");
    detail::require_finite(m, "logm_principal");
    const auto n = m.rows();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("logm_principal: eigendecomposition did not converge");
    }
    const Eigen::VectorXcd &lambda = solver.eigenvalues();
    const ComplexMatrix &vecs = solver.eigenvectors();

    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    Eigen::VectorXcd log_lambda(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex l = lambda(k);
        if (std::abs(l) <= 1e-14 * scale) {
            throw NumericalError("logm_principal: matrix is singular (eigenvalue " +
                                 std::to_string(std::abs(l)) + ")");
        }
        if (l.real() < 0.0 && std::abs(l.imag()) <= 1e-8 * std::abs(l)) {
            throw BranchCutError(
                "logm_principal: eigenvalue on the negative real axis (phase " +
                std::to_string(std::arg(l)) +
                "); the principal branch is ambiguous, reduce the pulse duration tau");
        }
        log_lambda(k) = std::log(l);
    }

    Eigen::PartialPivLU<ComplexMatrix> lu(vecs);
    if (!(lu.rcond() > 1e-12)) {
        throw NumericalError("logm_principal: eigenvector basis is singular (defective matrix)");
    }
    const ComplexMatrix inv = lu.inverse();
    const ComplexMatrix rebuilt = vecs * lambda.asDiagonal() * inv;
    if ((rebuilt - m).norm() > 1e-9 * std::max(1.0, m.norm())) {
        throw NumericalError("logm_principal: matrix is not diagonalizable to working accuracy");
    }
    return vecs * log_lambda.asDiagonal() * inv;
}

/// Largest singular value.
inline double op_norm(const ComplexMatrix &m) {
    detail::require_finite(m, "op_norm");
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureResult {
    ComplexMatrix value;
    double estimated_error = 0.0;
    std::int64_t evaluations = 0;
};

struct QuadratureOptions {
    double tolerance = 1e-9;
    std::int64_t max_evaluations = std::int64_t{1} << 20;
    int min_level = 3;
};

/// Thrown when the tolerance is not met within the evaluation budget; carries the best estimate.
class QuadratureConvergenceError : public NumericalError {
  public:
    QuadratureConvergenceError(const std::string &msg, QuadratureResult best)
        : NumericalError(msg), best_(std::move(best)) {}

    const QuadratureResult &best_estimate() const { return best_; }

  private:
    QuadratureResult best_;
};

template <typename F>
concept MatrixIntegrand2 = requires(F f, double a, double b) {
    { f(a, b) } -> std::convertible_to<ComplexMatrix>;
};

template <typename F>
concept MatrixIntegrand1 = requires(F f, double a) {
    { f(a) } -> std::convertible_to<ComplexMatrix>;
};

namespace detail {

// One Romberg row from the previous row and a fresh trapezoid estimate.
inline std::vector<ComplexMatrix> romberg_row(const std::vector<ComplexMatrix> &prev,
                                              ComplexMatrix trapezoid) {
    std::vector<ComplexMatrix> row;
    row.reserve(prev.size() + 1);
    row.push_back(std::move(trapezoid));
    double factor = 1.0;
    for (std::size_t m = 1; m <= prev.size(); ++m) {
        factor *= 4.0;
        row.push_back(row[m - 1] + (row[m - 1] - prev[m - 1]) / (factor - 1.0));
    }
    return row;
}

inline void require_positive_duration(double tau, const char *what) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw InputError(std::string(what) + ": duration must be positive and finite, got " +
                         std::to_string(tau));
    }
}

// Integrand on the unit square after t1 = tau*u, t2 = tau*u*v (Jacobian tau^2 u).
template <MatrixIntegrand2 F>
ComplexMatrix mapped_triangle_point(F &f, double tau, double u, double v) {
    return (tau * tau * u) * ComplexMatrix(f(tau * u, tau * u * v));
}

}  // namespace detail

/**
 * Tensor-product trapezoid estimate of the time-ordered triangle integral at a
 * fixed level (2^level panels per axis). Order 2 in the step; exposed for
 * convergence-order checks. Every call evaluates from scratch.
 */
template <MatrixIntegrand2 F>
ComplexMatrix triangle_trapezoid(F &&f, double tau, int level) {
    detail::require_positive_duration(tau, "triangle_trapezoid");
    const std::int64_t panels = std::int64_t{1} << level;
    const double h = 1.0 / static_cast<double>(panels);
    ComplexMatrix sum;
    for (std::int64_t i = 1; i <= panels; ++i) {  // u = 0 row has zero Jacobian
        const double ci = (i == panels) ? 0.5 : 1.0;
        for (std::int64_t j = 0; j <= panels; ++j) {
            const double cj = (j == 0 || j == panels) ? 0.5 : 1.0;
            ComplexMatrix term = (ci * cj) * detail::mapped_triangle_point(
                                                 f, tau, static_cast<double>(i) * h,
                                                 static_cast<double>(j) * h);
            if (sum.size() == 0) {
                sum = std::move(term);
            } else {
                sum += term;
            }
        }
    }
    return h * h * sum;
}

/**
 * Integral of f(t1, t2) over 0 <= t2 <= t1 <= tau.
 *
 * Nested tensor trapezoid rules on the mapped unit square are refined by
 * doubling and extrapolated Romberg-style; the error estimate is the Frobenius
 * distance between successive diagonal extrapolants. Evaluation order is fixed,
 * so results are bit-reproducible.
 */
template <MatrixIntegrand2 F>
QuadratureResult triangle_quadrature(F &&f, double tau, const QuadratureOptions &opts = {}) {
    detail::require_positive_duration(tau, "triangle_quadrature");
    if (!(opts.tolerance > 0.0)) {
        throw InputError("triangle_quadrature: tolerance must be positive");
    }
    std::int64_t evaluations = 0;
    auto point = [&](std::int64_t i, std::int64_t j, double h) {
        ++evaluations;
        return detail::mapped_triangle_point(f, tau, static_cast<double>(i) * h,
                                             static_cast<double>(j) * h);
    };

    // Level 0: single panel; only the u = 1 corners carry weight.
    ComplexMatrix trap = 0.25 * (point(1, 0, 1.0) + point(1, 1, 1.0));
    std::vector<ComplexMatrix> row{trap};
    QuadratureResult best{row.back(), std::numeric_limits<double>::infinity(), evaluations};

    for (int level = 1;; ++level) {
        const std::int64_t panels = std::int64_t{1} << level;
        // Next level adds roughly panels * (panels + 1) - (panels/2) * (panels/2 + 1) points.
        if (panels * (panels + 1) > opts.max_evaluations) {
            throw QuadratureConvergenceError(
                "triangle_quadrature: tolerance " + std::to_string(opts.tolerance) +
                    " not reached within " + std::to_string(opts.max_evaluations) +
                    " evaluations (estimate " + std::to_string(best.estimated_error) + ")",
                best);
        }
        const double h = 1.0 / static_cast<double>(panels);
        ComplexMatrix fresh = ComplexMatrix::Zero(trap.rows(), trap.cols());
        for (std::int64_t i = 1; i <= panels; ++i) {
            const double ci = (i == panels) ? 0.5 : 1.0;
            const bool odd_i = (i % 2) == 1;
            for (std::int64_t j = odd_i ? 0 : 1; j <= panels; j += odd_i ? 1 : 2) {
                const double cj = (j == 0 || j == panels) ? 0.5 : 1.0;
                fresh += (ci * cj) * point(i, j, h);
            }
        }
        trap = 0.25 * trap + (h * h) * fresh;
        std::vector<ComplexMatrix> next = detail::romberg_row(row, trap);
        const double estimate = (next.back() - row.back()).norm();
        best = QuadratureResult{next.back(), estimate, evaluations};
        row = std::move(next);
        if (level >= opts.min_level && estimate <= opts.tolerance) {
            return best;
        }
    }
}

/// Romberg integral of f(t) over [0, tau]; same error model as triangle_quadrature.
template <MatrixIntegrand1 F>
QuadratureResult line_quadrature(F &&f, double tau, const QuadratureOptions &opts = {}) {
    detail::require_positive_duration(tau, "line_quadrature");
    std::int64_t evaluations = 0;
    auto eval = [&](double t) {
        ++evaluations;
        return ComplexMatrix(f(t));
    };
    ComplexMatrix trap = 0.5 * tau * (eval(0.0) + eval(tau));
    std::vector<ComplexMatrix> row{trap};
    QuadratureResult best{row.back(), std::numeric_limits<double>::infinity(), evaluations};
    for (int level = 1;; ++level) {
        const std::int64_t panels = std::int64_t{1} << level;
        if (panels + 1 > opts.max_evaluations) {
            throw QuadratureConvergenceError(
                "line_quadrature: tolerance not reached within evaluation budget", best);
        }
        const double h = tau / static_cast<double>(panels);
        ComplexMatrix fresh = ComplexMatrix::Zero(trap.rows(), trap.cols());
        for (std::int64_t i = 1; i < panels; i += 2) {
            fresh += eval(static_cast<double>(i) * h);
        }
        trap = 0.5 * trap + h * fresh;
        std::vector<ComplexMatrix> next = detail::romberg_row(row, trap);
        const double estimate = (next.back() - row.back()).norm();
        best = QuadratureResult{next.back(), estimate, evaluations};
        row = std::move(next);
        if (level >= opts.min_level && estimate <= opts.tolerance) {
            return best;
        }
    }
}

}  // namespace pstlab
