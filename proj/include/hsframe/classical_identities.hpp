#pragma once

// The classical vector-frame identities, written directly in terms of the
// coefficients <f, f_j>. They are the m = 1 specializations of the HS-frame
// verifiers and serve as an independent second route for them.

#include <algorithm>
#include <cmath>

#include "hsframe/identity_suite.hpp"
#include "hsframe/vector_frame.hpp"

namespace hsframe {

namespace detail {

inline double coefficient_energy(const ComplexVector& c, const SubsetMask& k) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        if (k.contains(static_cast<std::size_t>(j))) {
            s += std::norm(c[j]);
        }
    }
    return s;
}

/// sum_{j in K} c_j f_j
inline ComplexVector masked_synthesis(const VectorFrame& frame, const ComplexVector& c, const SubsetMask& k) {
    ComplexVector out = ComplexVector::Zero(frame.dim());
    for (std::size_t j = 0; j < frame.size(); ++j) {
        if (k.contains(j)) {
            out += c[static_cast<Eigen::Index>(j)] * frame[j];
        }
    }
    return out;
}

/// sum_{j in K} <f, g_j> conj(<f, f_j>)
inline Complex mixed_coefficients(const ComplexVector& cg, const ComplexVector& cf, const SubsetMask& k) {
    Complex s = 0.0;
    for (Eigen::Index j = 0; j < cf.size(); ++j) {
        if (k.contains(static_cast<std::size_t>(j))) {
            s += cg[j] * std::conj(cf[j]);
        }
    }
    return s;
}

inline void require_parseval(const VectorFrame& frame) {
    const FrameBounds b = frame_bounds(frame);
    if (std::abs(b.lower - 1.0) > kParsevalBoundTol || std::abs(b.upper - 1.0) > kParsevalBoundTol) {
        throw NotParsevalError("vector frame is not Parseval");
    }
}

inline void require_subset(const VectorFrame& frame, const SubsetMask& k) {
    if (k.universe() != frame.size()) {
        throw DimensionError("classical verifier: subset universe does not match frame size");
    }
}

inline double classical_scale(const ComplexVector& f, const ComplexVector& c) {
    return std::max({1.0, f.squaredNorm(), c.squaredNorm()});
}

} // namespace detail

/// Parseval frame: sum_K |<f,f_j>|^2 - ||sum_K <f,f_j> f_j||^2 = (same over K^c).
inline CheckReport classical_parseval_identity(const VectorFrame& frame, const SubsetMask& k, const ComplexVector& f,
                                               const ToleranceConfig& tol = {}) {
    detail::require_subset(frame, k);
    detail::require_parseval(frame);
    const ComplexVector c = analysis(frame, f);
    const SubsetMask kc = k.complement();
    const double lhs = detail::coefficient_energy(c, k) - detail::masked_synthesis(frame, c, k).squaredNorm();
    const double rhs = detail::coefficient_energy(c, kc) - detail::masked_synthesis(frame, c, kc).squaredNorm();
    return detail::finish("classical_parseval_identity", lhs, rhs, std::abs(lhs - rhs), std::nullopt, std::nullopt,
                          detail::classical_scale(f, c), tol);
}

/// Parseval frame: sum_K |<f,f_j>|^2 + ||sum_{K^c} <f,f_j> f_j||^2 >= (3/4)||f||^2.
inline CheckReport classical_parseval_inequality(const VectorFrame& frame, const SubsetMask& k,
                                                 const ComplexVector& f, const ToleranceConfig& tol = {}) {
    detail::require_subset(frame, k);
    detail::require_parseval(frame);
    const ComplexVector c = analysis(frame, f);
    const SubsetMask kc = k.complement();
    const double lhs = detail::coefficient_energy(c, k) + detail::masked_synthesis(frame, c, kc).squaredNorm();
    const double rhs = detail::coefficient_energy(c, kc) + detail::masked_synthesis(frame, c, k).squaredNorm();
    const double bound = 0.75 * f.squaredNorm();
    return detail::finish("classical_parseval_inequality", lhs, rhs, std::abs(lhs - rhs), bound, lhs - bound,
                          detail::classical_scale(f, c), tol);
}

/// Canonical dual {f~_j}:
/// sum_K |<f,f_j>|^2 - sum_J |<S_K f, f~_j>|^2 = sum_{K^c} |<f,f_j>|^2 - sum_J |<S_{K^c} f, f~_j>|^2.
/// The dual sums run over all of J, not just K.
inline CheckReport classical_canonical_identity(const VectorFrame& frame, const SubsetMask& k, const ComplexVector& f,
                                                const ToleranceConfig& tol = {}) {
    detail::require_subset(frame, k);
    const VectorFrame dual = canonical_dual(frame);
    const ComplexVector c = analysis(frame, f);
    const SubsetMask kc = k.complement();
    const double dk = analysis(dual, partial_operator(frame, k) * f).squaredNorm();
    const double dkc = analysis(dual, partial_operator(frame, kc) * f).squaredNorm();
    const double lhs = detail::coefficient_energy(c, k) - dk;
    const double rhs = detail::coefficient_energy(c, kc) - dkc;
    return detail::finish("classical_canonical_identity", lhs, rhs, std::abs(lhs - rhs), std::nullopt, std::nullopt,
                          detail::classical_scale(f, c), tol);
}

/// Canonical dual {f~_j}:
/// sum_K |<f,f_j>|^2 + sum_J |<S_{K^c} f, f~_j>|^2 = sum_{K^c} |<f,f_j>|^2 + sum_J |<S_K f, f~_j>|^2
///   >= (3/4) sum_J |<f,f_j>|^2.
inline CheckReport classical_canonical_inequality(const VectorFrame& frame, const SubsetMask& k,
                                                  const ComplexVector& f, const ToleranceConfig& tol = {}) {
    detail::require_subset(frame, k);
    const VectorFrame dual = canonical_dual(frame);
    const ComplexVector c = analysis(frame, f);
    const SubsetMask kc = k.complement();
    const double dk = analysis(dual, partial_operator(frame, k) * f).squaredNorm();
    const double dkc = analysis(dual, partial_operator(frame, kc) * f).squaredNorm();
    const double lhs = detail::coefficient_energy(c, k) + dkc;
    const double rhs = detail::coefficient_energy(c, kc) + dk;
    const double bound = 0.75 * c.squaredNorm();
    return detail::finish("classical_canonical_inequality", lhs, rhs, std::abs(lhs - rhs), bound, lhs - bound,
                          detail::classical_scale(f, c), tol);
}

namespace detail {

inline void require_vector_dual(const VectorFrame& frame, const VectorFrame& dual) {
    const DualityCheck d = is_alternate_dual(dual, frame);
    if (!d.ok) {
        throw InvalidDualError("classical verifier: second family is not an alternate dual (residual " +
                               std::to_string(d.residual) + ")");
    }
}

} // namespace detail

/// Alternate dual {g_j}:
/// Re sum_K <f,g_j> conj<f,f_j> + ||sum_{K^c} <f,g_j> f_j||^2
///   = Re sum_{K^c} <f,g_j> conj<f,f_j> + ||sum_K <f,g_j> f_j||^2 >= (3/4)||f||^2.
inline CheckReport classical_alternate_dual(const VectorFrame& frame, const VectorFrame& dual, const SubsetMask& k,
                                            const ComplexVector& f, const ToleranceConfig& tol = {}) {
    detail::require_subset(frame, k);
    detail::require_vector_dual(frame, dual);
    const ComplexVector cf = analysis(frame, f);
    const ComplexVector cg = analysis(dual, f);
    const SubsetMask kc = k.complement();
    const double lhs = detail::mixed_coefficients(cg, cf, k).real() + detail::masked_synthesis(frame, cg, kc).squaredNorm();
    const double rhs = detail::mixed_coefficients(cg, cf, kc).real() + detail::masked_synthesis(frame, cg, k).squaredNorm();
    const double bound = 0.75 * f.squaredNorm();
    return detail::finish("classical_alternate_dual", lhs, rhs, std::abs(lhs - rhs), bound, lhs - bound,
                          detail::classical_scale(f, cf), tol);
}

/// Alternate dual {g_j}:
/// sum_K <f,g_j> conj<f,f_j> - ||sum_K <f,g_j> f_j||^2
///   = conj(sum_{K^c} <f,g_j> conj<f,f_j>) - ||sum_{K^c} <f,g_j> f_j||^2.
inline CheckReport classical_complex_identity(const VectorFrame& frame, const VectorFrame& dual, const SubsetMask& k,
                                              const ComplexVector& f, const ToleranceConfig& tol = {}) {
    detail::require_subset(frame, k);
    detail::require_vector_dual(frame, dual);
    const ComplexVector cf = analysis(frame, f);
    const ComplexVector cg = analysis(dual, f);
    const SubsetMask kc = k.complement();
    const Complex lhs = detail::mixed_coefficients(cg, cf, k) - detail::masked_synthesis(frame, cg, k).squaredNorm();
    const Complex rhs =
        std::conj(detail::mixed_coefficients(cg, cf, kc)) - detail::masked_synthesis(frame, cg, kc).squaredNorm();
    return detail::finish("classical_complex_identity", lhs, rhs, std::abs(lhs - rhs), std::nullopt, std::nullopt,
                          detail::classical_scale(f, cf), tol);
}

} // namespace hsframe
