#pragma once

// Dense complex linear algebra used by every other header: adjoints, SVD,
// Schatten norms, the trace inner product on C_2, Hermitian spectral calculus
// and the Moore-Penrose pseudoinverse.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "hsframe/errors.hpp"

namespace hsframe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance on ||M - M*||_F for accepting M as Hermitian.
inline constexpr double kHermiticityTol = 1e-10;
/// Eigenvalues at or below this fraction of lambda_max count as zero for inversion.
inline constexpr double kPdRelThreshold = 1e-10;
/// Singular values at or below this fraction of s_1 count as zero for rank and pseudoinverse.
inline constexpr double kRankRelThreshold = 1e-10;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
    if (!all_finite(m)) {
        throw InvalidInput(std::string(what) + ": non-finite entry");
    }
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + ": matrix is not square");
    }
}

inline ComplexMatrix identity(Eigen::Index n) {
    return ComplexMatrix::Identity(n, n);
}

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    return m.adjoint();
}

inline double frobenius_norm(const ComplexMatrix& m) {
    return m.norm();
}

/// <x, y> = sum_i x_i conj(y_i): linear in the first slot, conjugate-linear in the second.
inline Complex inner(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) {
        throw DimensionError("inner: length mismatch");
    }
    return y.dot(x);  // Eigen's dot conjugates its left operand
}

/// Full SVD M = U diag(s) V* with s sorted nonincreasing.
struct SVDResult {
    ComplexMatrix U;
    RealVector singular_values;
    ComplexMatrix V;

    /// Number of singular values strictly above `threshold`.
    Eigen::Index rank(double threshold) const {
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
            if (singular_values[i] > threshold) {
                ++r;
            }
        }
        return r;
    }

    /// Rank under the default relative threshold kRankRelThreshold * s_1.
    Eigen::Index rank() const {
        if (singular_values.size() == 0) {
            return 0;
        }
        return rank(kRankRelThreshold * singular_values[0]);
    }

    ComplexMatrix reconstruct() const {
        ComplexMatrix sigma = ComplexMatrix::Zero(U.cols(), V.cols());
        for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
            sigma(i, i) = singular_values[i];
        }
        return U * sigma * V.adjoint();
    }
};

inline SVDResult svd(const ComplexMatrix& m) {
    require_finite(m, "svd");
    if (m.size() == 0) {
        return {ComplexMatrix::Identity(m.rows(), m.rows()), RealVector(0), ComplexMatrix::Identity(m.cols(), m.cols())};
    }
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (solver.info() != Eigen::Success) {
        throw DecompositionError("svd: solver did not converge");
    }
    SVDResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
    if (!out.U.allFinite() || !out.V.allFinite() || !out.singular_values.allFinite()) {
        throw DecompositionError("svd: non-finite factor");
    }
    return out;
}

/// Schatten p-norm (sum_j s_j^p)^(1/p); p = kInfinity gives s_1.
inline double schatten_norm(const ComplexMatrix& m, double p) {
    if (!(p >= 1.0)) {
        throw InvalidParameter("schatten_norm: p must satisfy p >= 1 (got " + std::to_string(p) + ")");
    }
    if (m.size() == 0) {
        return 0.0;
    }
    if (p == 2.0) {
        return frobenius_norm(m);
    }
    const RealVector s = svd(m).singular_values;
    const double s1 = s[0];
    if (s1 == 0.0) {
        return 0.0;
    }
    if (std::isinf(p)) {
        return s1;
    }
    if (p == 1.0) {
        return s.sum();
    }
    // Factor out s_1 so that s^p cannot overflow.
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        acc += std::pow(s[i] / s1, p);
    }
    return s1 * std::pow(acc, 1.0 / p);
}

/// [T, S]_tau = tau(S* T) = sum_{a,b} conj(S_ab) T_ab.
inline Complex trace_inner(const ComplexMatrix& t, const ComplexMatrix& s) {
    require_same_shape(t, s, "trace_inner");
    return s.conjugate().cwiseProduct(t).sum();
}

inline double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).norm();
}

inline bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermiticityTol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= rel_tol * std::max(1.0, m.norm());
}

/// Validates Hermiticity and returns (M + M*)/2.
inline ComplexMatrix symmetrized(const ComplexMatrix& m, const char* what) {
    require_square(m, what);
    require_finite(m, what);
    if (!is_hermitian(m)) {
        throw InvalidInput(std::string(what) + ": matrix is not Hermitian (defect " +
                           std::to_string(hermiticity_defect(m)) + ")");
    }
    return (m + m.adjoint()) * 0.5;
}

/// Spectral decomposition M = V diag(eigenvalues) V*, eigenvalues ascending.
struct HermitianEig {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    double min() const { return eigenvalues.size() ? eigenvalues[0] : 0.0; }
    double max() const { return eigenvalues.size() ? eigenvalues[eigenvalues.size() - 1] : 0.0; }
};

inline HermitianEig hermitian_eig(const ComplexMatrix& m) {
    const ComplexMatrix h = symmetrized(m, "hermitian_eig");
    if (h.size() == 0) {
        return {RealVector(0), ComplexMatrix(0, 0)};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw DecompositionError("hermitian_eig: solver did not converge");
    }
    HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
    if (!out.eigenvalues.allFinite() || !out.eigenvectors.allFinite()) {
        throw DecompositionError("hermitian_eig: non-finite factor");
    }
    return out;
}

enum class HermitianFunction { inverse, sqrt, inv_sqrt };

inline const char* to_string(HermitianFunction fn) {
    switch (fn) {
        case HermitianFunction::inverse: return "inverse";
        case HermitianFunction::sqrt: return "sqrt";
        case HermitianFunction::inv_sqrt: return "inv_sqrt";
    }
    return "?";
}

/// Applies `fn` to the spectrum of a Hermitian matrix.
///
/// inverse and inv_sqrt require every eigenvalue above kPdRelThreshold * lambda_max and
/// raise SingularityError otherwise; sqrt requires positive semidefiniteness up to the
/// same threshold and clamps eigenvalues inside it to zero.
inline ComplexMatrix hermitian_fn(const ComplexMatrix& m, HermitianFunction fn) {
    const HermitianEig eig = hermitian_eig(m);
    const Eigen::Index n = eig.eigenvalues.size();
    const double threshold = kPdRelThreshold * std::max(0.0, eig.max());
    RealVector mapped(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lam = eig.eigenvalues[i];
        if (fn == HermitianFunction::sqrt) {
            if (lam < -threshold) {
                throw SingularityError("hermitian_fn(sqrt): matrix is not positive semidefinite", lam);
            }
            mapped[i] = std::sqrt(std::max(lam, 0.0));
            continue;
        }
        if (!(lam > threshold)) {
            throw SingularityError(std::string("hermitian_fn(") + to_string(fn) +
                                       "): matrix is not positive definite",
                                   lam);
        }
        mapped[i] = fn == HermitianFunction::inverse ? 1.0 / lam : 1.0 / std::sqrt(lam);
    }
    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix out = v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
    return (out + out.adjoint()) * 0.5;
}

namespace detail {

inline ComplexMatrix pseudoinverse_from(const SVDResult& d, Eigen::Index rows, Eigen::Index cols, double threshold) {
    ComplexMatrix out = ComplexMatrix::Zero(cols, rows);
    for (Eigen::Index i = 0; i < d.singular_values.size(); ++i) {
        const double s = d.singular_values[i];
        if (s > threshold) {
            out += (d.V.col(i) / s) * d.U.col(i).adjoint();
        }
    }
    return out;
}

} // namespace detail

/// Moore-Penrose pseudoinverse keeping singular values strictly above `rank_threshold`.
inline ComplexMatrix pseudoinverse(const ComplexMatrix& m, double rank_threshold) {
    if (!(rank_threshold > 0.0)) {
        throw InvalidParameter("pseudoinverse: rank_threshold must be positive");
    }
    return detail::pseudoinverse_from(svd(m), m.rows(), m.cols(), rank_threshold);
}

/// Pseudoinverse under the default threshold kRankRelThreshold * s_1.
inline ComplexMatrix pseudoinverse(const ComplexMatrix& m) {
    const SVDResult d = svd(m);
    if (d.singular_values.size() == 0 || d.singular_values[0] == 0.0) {
        return ComplexMatrix::Zero(m.cols(), m.rows());
    }
    return detail::pseudoinverse_from(d, m.rows(), m.cols(), kRankRelThreshold * d.singular_values[0]);
}

} // namespace hsframe
