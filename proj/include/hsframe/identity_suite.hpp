#pragma once

// Verifiers for the Parseval / dual HS-frame identities and inequalities and
// the operator lemmas they rest on. Each verifier returns both sides of the
// identity, the residual |lhs - rhs|, and for inequalities the signed margin
// of the common value over the bound. Residuals and margins are judged
// relative to a scale, since every statement is homogeneous of degree two.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsframe/hs_frame.hpp"
#include "hsframe/operator_core.hpp"
#include "hsframe/subset.hpp"

namespace hsframe {

struct ToleranceConfig {
    double tol_eq = 1e-9;
    double tol_ineq = 1e-10;

    void validate() const {
        if (!(tol_eq > 0.0) || !(tol_ineq > 0.0)) {
            throw InvalidParameter("ToleranceConfig: tolerances must be positive");
        }
    }
};

/// Bounds A, B must both lie within this distance of 1 for a Parseval-only verifier.
inline constexpr double kParsevalBoundTol = 1e-8;

struct CheckReport {
    std::string theorem;
    Complex lhs;
    Complex rhs;
    double residual = 0.0;
    std::optional<double> bound;
    std::optional<double> margin;
    bool pass = false;
    double scale = 1.0;
    /// Secondary identity checked alongside the main one (e.g. the S^{-1} chain); folded into `pass`.
    std::optional<double> auxiliary_residual;

    double relative_residual() const { return residual / scale; }
    std::optional<double> relative_margin() const {
        return margin ? std::optional<double>(*margin / scale) : std::nullopt;
    }
};

struct CheckRequest {
    std::shared_ptr<const HSFrame> frame;
    std::shared_ptr<const HSFrame> dual;
    SubsetMask subset;
    std::optional<double> lambda;
    std::optional<std::vector<Complex>> weights;
    ComplexVector f;
    ToleranceConfig tolerances;
};

namespace detail {

inline CheckReport finish(std::string theorem, Complex lhs, Complex rhs, double residual,
                          std::optional<double> bound, std::optional<double> margin, double scale,
                          const ToleranceConfig& tol, std::optional<double> auxiliary = std::nullopt) {
    CheckReport r;
    r.theorem = std::move(theorem);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = residual;
    r.bound = bound;
    r.margin = margin;
    r.scale = scale;
    r.auxiliary_residual = auxiliary;
    r.pass = residual <= tol.tol_eq * scale;
    if (margin) {
        r.pass = r.pass && *margin >= -tol.tol_ineq * scale;
    }
    if (auxiliary) {
        r.pass = r.pass && *auxiliary <= tol.tol_eq * scale;
    }
    return r;
}

inline void require_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw InvalidParameter("lambda must lie in [0, 1] (got " + std::to_string(lambda) + ")");
    }
}

inline double lambda_of(const CheckRequest& req) {
    if (!req.lambda) {
        throw InvalidParameter("this theorem requires lambda");
    }
    require_lambda(*req.lambda);
    return *req.lambda;
}

inline void require_resolution_of_identity(const ComplexMatrix& p, const ComplexMatrix& q, const char* what) {
    require_square(p, what);
    require_same_shape(p, q, what);
    require_finite(p, what);
    require_finite(q, what);
    const double defect = (p + q - identity(p.rows())).norm();
    if (defect > kHermiticityTol * std::max(1.0, p.norm() + q.norm())) {
        throw InvalidInput(std::string(what) + ": P + Q != I (defect " + std::to_string(defect) + ")");
    }
}

inline double operator_scale(const ComplexMatrix& p, const ComplexMatrix& q) {
    return std::max({1.0, p.squaredNorm(), q.squaredNorm()});
}

} // namespace detail

// ---------------------------------------------------------------------------
// Operator lemmas. For matrix identities lhs/rhs carry the traces of the two
// sides and residual is the Frobenius norm of their difference.

/// P - P*P = Q* - Q*Q whenever P + Q = I.
inline CheckReport lemma_pp(const ComplexMatrix& p, const ComplexMatrix& q, const ToleranceConfig& tol = {}) {
    detail::require_resolution_of_identity(p, q, "lemma_pp");
    const ComplexMatrix l = p - p.adjoint() * p;
    const ComplexMatrix r = q.adjoint() - q.adjoint() * q;
    return detail::finish("lemma_pp", l.trace(), r.trace(), (l - r).norm(), std::nullopt, std::nullopt,
                          detail::operator_scale(p, q), tol);
}

/// P + Q*Q = Q* + P*P whenever P + Q = I.
inline CheckReport lemma_pq(const ComplexMatrix& p, const ComplexMatrix& q, const ToleranceConfig& tol = {}) {
    detail::require_resolution_of_identity(p, q, "lemma_pq");
    const ComplexMatrix l = p + q.adjoint() * q;
    const ComplexMatrix r = q.adjoint() + p.adjoint() * p;
    return detail::finish("lemma_pq", l.trace(), r.trace(), (l - r).norm(), std::nullopt, std::nullopt,
                          detail::operator_scale(p, q), tol);
}

/// For Hermitian P + Q = I:
/// ||Pf||^2 + 2 lambda <Qf,f> = ||Qf||^2 + 2(1-lambda)<Pf,f> + (2 lambda - 1)||f||^2 >= (2 lambda - lambda^2)||f||^2.
inline CheckReport prop_selfadjoint(const ComplexMatrix& p, const ComplexMatrix& q, double lambda,
                                    const ComplexVector& f, const ToleranceConfig& tol = {}) {
    detail::require_resolution_of_identity(p, q, "prop_selfadjoint");
    if (!is_hermitian(p) || !is_hermitian(q)) {
        throw InvalidInput("prop_selfadjoint: P and Q must be self-adjoint");
    }
    detail::require_lambda(lambda);
    if (f.size() != p.rows()) {
        throw DimensionError("prop_selfadjoint: vector dimension mismatch");
    }
    const ComplexVector pf = p * f;
    const ComplexVector qf = q * f;
    const double ff = f.squaredNorm();
    const Complex lhs = pf.squaredNorm() + 2.0 * lambda * inner(qf, f);
    const Complex rhs = qf.squaredNorm() + 2.0 * (1.0 - lambda) * inner(pf, f) + (2.0 * lambda - 1.0) * ff;
    const double bound = (2.0 * lambda - lambda * lambda) * ff;
    const double scale = std::max({1.0, ff, pf.squaredNorm(), qf.squaredNorm()});
    return detail::finish("prop_selfadjoint", lhs, rhs, std::abs(lhs - rhs), bound, lhs.real() - bound, scale,
                          tol);
}

/// For P + Q = I:
/// P*P + lambda(Q* + Q) = Q*Q + (1-lambda)(P* + P) + (2 lambda - 1)I >= (2 lambda - lambda^2) I.
/// The margin is the smallest eigenvalue of the left side minus the bound.
inline CheckReport prop_operator(const ComplexMatrix& p, const ComplexMatrix& q, double lambda,
                                 const ToleranceConfig& tol = {}) {
    detail::require_resolution_of_identity(p, q, "prop_operator");
    detail::require_lambda(lambda);
    const Eigen::Index n = p.rows();
    const ComplexMatrix l = p.adjoint() * p + lambda * (q.adjoint() + q);
    const ComplexMatrix r = q.adjoint() * q + (1.0 - lambda) * (p.adjoint() + p) + (2.0 * lambda - 1.0) * identity(n);
    const double bound = 2.0 * lambda - lambda * lambda;
    const ComplexMatrix lh = (l + l.adjoint()) * 0.5;
    const double margin = hermitian_eig(lh - bound * identity(n)).min();
    return detail::finish("prop_operator", l.trace(), r.trace(), (l - r).norm(), bound, margin,
                          detail::operator_scale(p, q), tol);
}

// ---------------------------------------------------------------------------
// Frame identities

/// Per-index quantities for one (frame, dual, f); every subset sum is read off these.
class FrameTerms {
public:
    FrameTerms(const HSFrame& frame, const HSFrame* dual, const ComplexVector& f) : frame_(&frame), dual_(dual), f_(f) {
        if (f.size() != frame.dim()) {
            throw DimensionError("frame verifier: test vector dimension does not match frame");
        }
        if (dual) {
            require_same_layout(frame, *dual, "frame verifier");
        }
        const std::size_t count = frame.size();
        energy_.resize(count);
        frame_image_.resize(count);
        if (dual) {
            bracket_.resize(count);
            dual_image_.resize(count);
        }
        total_energy_ = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            const ComplexMatrix& c = frame[j].coeff();
            const ComplexVector gf = c * f;  // vec(G_j f)
            energy_[j] = gf.squaredNorm();
            total_energy_ += energy_[j];
            frame_image_[j] = c.adjoint() * gf;  // G_j* G_j f
            if (dual) {
                const ComplexVector df = (*dual)[j].coeff() * f;  // vec(Gamma_j f)
                bracket_[j] = gf.dot(df);                          // [Gamma_j f, G_j f]_tau = tau((G_j f)* Gamma_j f)
                dual_image_[j] = c.adjoint() * df;                 // G_j* Gamma_j f
            }
        }
        scale_ = std::max({1.0, f.squaredNorm(), total_energy_});
    }

    const HSFrame& frame() const { return *frame_; }
    const HSFrame* dual() const { return dual_; }
    const ComplexVector& f() const { return f_; }
    double scale() const { return scale_; }
    double total_energy() const { return total_energy_; }

    /// sum_{j in K} ||G_j f||_2^2
    double energy(const SubsetMask& k) const {
        check(k);
        double s = 0.0;
        for (std::size_t j = 0; j < energy_.size(); ++j) {
            if (k.contains(j)) {
                s += energy_[j];
            }
        }
        return s;
    }

    /// S_K f = sum_{j in K} G_j* G_j f
    ComplexVector frame_image(const SubsetMask& k) const { return masked_sum(frame_image_, k); }

    /// sum_{j in K} [Gamma_j f, G_j f]_tau
    Complex bracket(const SubsetMask& k) const {
        check(k);
        require_dual();
        Complex s = 0.0;
        for (std::size_t j = 0; j < bracket_.size(); ++j) {
            if (k.contains(j)) {
                s += bracket_[j];
            }
        }
        return s;
    }

    /// sum_j w_j [Gamma_j f, G_j f]_tau
    Complex weighted_bracket(const std::vector<Complex>& w) const {
        require_dual();
        Complex s = 0.0;
        for (std::size_t j = 0; j < bracket_.size(); ++j) {
            s += w[j] * bracket_[j];
        }
        return s;
    }

    /// F_K f = sum_{j in K} G_j* Gamma_j f
    ComplexVector dual_image(const SubsetMask& k) const {
        require_dual();
        return masked_sum(dual_image_, k);
    }

    /// sum_j w_j G_j* Gamma_j f
    ComplexVector weighted_dual_image(const std::vector<Complex>& w) const {
        require_dual();
        ComplexVector s = ComplexVector::Zero(f_.size());
        for (std::size_t j = 0; j < dual_image_.size(); ++j) {
            s += w[j] * dual_image_[j];
        }
        return s;
    }

private:
    void check(const SubsetMask& k) const {
        if (k.universe() != energy_.size()) {
            throw DimensionError("frame verifier: subset universe does not match frame size");
        }
    }

    void require_dual() const {
        if (!dual_) {
            throw InvalidDualError("frame verifier: this theorem requires a dual frame");
        }
    }

    ComplexVector masked_sum(const std::vector<ComplexVector>& v, const SubsetMask& k) const {
        check(k);
        ComplexVector s = ComplexVector::Zero(f_.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (k.contains(j)) {
                s += v[j];
            }
        }
        return s;
    }

    const HSFrame* frame_;
    const HSFrame* dual_;
    ComplexVector f_;
    std::vector<double> energy_;
    std::vector<ComplexVector> frame_image_;
    std::vector<Complex> bracket_;
    std::vector<ComplexVector> dual_image_;
    double total_energy_ = 0.0;
    double scale_ = 1.0;
};

/// Frame-level data shared by all canonical-dual checks on one frame.
struct CanonicalContext {
    ComplexMatrix dual_stacked;   // stacked coefficients of G~_j = G_j S^{-1}
    ComplexMatrix frame_inverse;  // S^{-1}
};

inline CanonicalContext make_canonical_context(const HSFrame& frame, const HSFrame& canonical_dual) {
    return {canonical_dual.stacked(), hermitian_fn(frame.frame_operator(), HermitianFunction::inverse)};
}

inline void require_parseval(const HSFrame& frame) {
    const FrameBounds b = hs_frame_bounds(frame);
    if (std::abs(b.lower - 1.0) > kParsevalBoundTol || std::abs(b.upper - 1.0) > kParsevalBoundTol) {
        throw NotParsevalError("frame is not Parseval: bounds (" + std::to_string(b.lower) + ", " +
                               std::to_string(b.upper) + ")");
    }
}

inline void require_valid_dual(const HSFrame& frame, const HSFrame* dual) {
    if (!dual) {
        throw InvalidDualError("a dual frame is required");
    }
    const DualityCheck d = is_alternate_dual_hs(frame, *dual);
    if (!d.ok) {
        throw InvalidDualError("second frame is not an alternate dual: duality residual " +
                               std::to_string(std::max(d.residual, d.adjoint_residual)) + ", tolerance " +
                               std::to_string(duality_tolerance(frame.dim())));
    }
}

namespace eval {

// These assume the frame-level preconditions were already validated.

inline CheckReport parseval_identity(const FrameTerms& t, const SubsetMask& k, const ToleranceConfig& tol) {
    const SubsetMask kc = k.complement();
    const double lhs = t.energy(k) - t.frame_image(k).squaredNorm();
    const double rhs = t.energy(kc) - t.frame_image(kc).squaredNorm();
    return detail::finish("parseval_identity", lhs, rhs, std::abs(lhs - rhs), std::nullopt, std::nullopt, t.scale(),
                          tol);
}

inline CheckReport parseval_inequality(const FrameTerms& t, const SubsetMask& k, const ToleranceConfig& tol) {
    const SubsetMask kc = k.complement();
    // Companion form from the identity: sum_{K^c} ||G_j f||^2 + ||S_K f||^2.
    const double lhs = t.energy(k) + t.frame_image(kc).squaredNorm();
    const double rhs = t.energy(kc) + t.frame_image(k).squaredNorm();
    const double bound = 0.75 * t.f().squaredNorm();
    return detail::finish("parseval_inequality", lhs, rhs, std::abs(lhs - rhs), bound, lhs - bound, t.scale(), tol);
}

/// Returns reports for each lambda in `lambdas`, sharing the lambda-independent sums.
inline std::vector<CheckReport> canonical_dual(const FrameTerms& t, const CanonicalContext& ctx, const SubsetMask& k,
                                               const std::vector<double>& lambdas, const ToleranceConfig& tol) {
    const SubsetMask kc = k.complement();
    const ComplexVector sk = t.frame_image(k);
    const ComplexVector skc = t.frame_image(kc);
    // sum_J ||G~_j x||^2 evaluated directly from the dual coefficients.
    const double dual_k = (ctx.dual_stacked * sk).squaredNorm();
    const double dual_kc = (ctx.dual_stacked * skc).squaredNorm();
    const double chain_k = inner(ctx.frame_inverse * sk, sk).real();
    const double chain_kc = inner(ctx.frame_inverse * skc, skc).real();
    const double chain = std::max(std::abs(dual_k - chain_k), std::abs(dual_kc - chain_kc));
    const double ek = t.energy(k);
    const double ekc = t.energy(kc);
    const double lhs = dual_k + ekc;
    const double rhs = dual_kc + ek;
    std::vector<CheckReport> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        detail::require_lambda(lambda);
        const double bound = (2.0 * lambda - lambda * lambda) * ek + (1.0 - lambda * lambda) * ekc;
        out.push_back(detail::finish("canonical_dual", lhs, rhs, std::abs(lhs - rhs), bound, lhs - bound, t.scale(),
                                     tol, chain));
    }
    return out;
}

inline std::vector<CheckReport> alternate_dual(const FrameTerms& t, const SubsetMask& k,
                                               const std::vector<double>& lambdas, const ToleranceConfig& tol) {
    const SubsetMask kc = k.complement();
    const double re_k = t.bracket(k).real();
    const double re_kc = t.bracket(kc).real();
    const double lhs = re_kc + t.dual_image(k).squaredNorm();
    const double rhs = re_k + t.dual_image(kc).squaredNorm();
    std::vector<CheckReport> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        detail::require_lambda(lambda);
        const double bound = (2.0 * lambda - lambda * lambda) * re_k + (1.0 - lambda * lambda) * re_kc;
        out.push_back(
            detail::finish("alternate_dual", lhs, rhs, std::abs(lhs - rhs), bound, lhs - bound, t.scale(), tol));
    }
    return out;
}

inline CheckReport complex_identity(const FrameTerms& t, const SubsetMask& k, const ToleranceConfig& tol) {
    const SubsetMask kc = k.complement();
    const Complex lhs = t.bracket(kc) + t.dual_image(k).squaredNorm();
    const Complex rhs = std::conj(t.bracket(k)) + t.dual_image(kc).squaredNorm();
    return detail::finish("complex_identity", lhs, rhs, std::abs(lhs - rhs), std::nullopt, std::nullopt, t.scale(),
                          tol);
}

inline CheckReport weighted_identity(const FrameTerms& t, const std::vector<Complex>& w, const ToleranceConfig& tol) {
    if (w.size() != t.frame().size()) {
        throw DimensionError("weighted_identity: weight count does not match frame size");
    }
    std::vector<Complex> rest(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!std::isfinite(w[j].real()) || !std::isfinite(w[j].imag())) {
            throw InvalidInput("weighted_identity: weights must be finite");
        }
        rest[j] = 1.0 - w[j];
    }
    const Complex lhs = t.weighted_bracket(w) + t.weighted_dual_image(rest).squaredNorm();
    const Complex rhs = std::conj(t.weighted_bracket(rest)) + t.weighted_dual_image(w).squaredNorm();
    return detail::finish("weighted_identity", lhs, rhs, std::abs(lhs - rhs), std::nullopt, std::nullopt, t.scale(),
                          tol);
}

} // namespace eval

// ---------------------------------------------------------------------------
// One-shot verifiers on a CheckRequest

namespace detail {

inline const HSFrame& frame_of(const CheckRequest& req) {
    if (!req.frame) {
        throw InvalidInput("CheckRequest: frame is required");
    }
    req.tolerances.validate();
    return *req.frame;
}

} // namespace detail

/// Parseval frames: sum_K ||G_j f||^2 - ||S_K f||^2 = sum_{K^c} ||G_j f||^2 - ||S_{K^c} f||^2.
inline CheckReport parseval_identity(const CheckRequest& req) {
    const HSFrame& frame = detail::frame_of(req);
    require_parseval(frame);
    return eval::parseval_identity(FrameTerms(frame, nullptr, req.f), req.subset, req.tolerances);
}

/// Parseval frames: sum_K ||G_j f||^2 + ||S_{K^c} f||^2 >= (3/4)||f||^2.
inline CheckReport parseval_inequality(const CheckRequest& req) {
    const HSFrame& frame = detail::frame_of(req);
    require_parseval(frame);
    return eval::parseval_inequality(FrameTerms(frame, nullptr, req.f), req.subset, req.tolerances);
}

/// Canonical dual G~:
/// sum_J ||G~_j S_K f||^2 + sum_{K^c} ||G_j f||^2 = sum_J ||G~_j S_{K^c} f||^2 + sum_K ||G_j f||^2
///   >= (2 lambda - lambda^2) sum_K ||G_j f||^2 + (1 - lambda^2) sum_{K^c} ||G_j f||^2.
/// Uses req.dual as G~ when given (it must be the canonical dual), otherwise computes it.
inline CheckReport canonical_dual_check(const CheckRequest& req) {
    const HSFrame& frame = detail::frame_of(req);
    const double lambda = detail::lambda_of(req);
    const HSDualPair pair = canonical_dual_hs(frame);
    const CanonicalContext ctx = make_canonical_context(frame, pair.dual);
    if (req.dual) {
        require_same_layout(frame, *req.dual, "canonical_dual_check");
        const double diff = (req.dual->stacked() - ctx.dual_stacked).norm();
        if (diff > 1e-9 * std::max(1.0, ctx.dual_stacked.norm())) {
            throw InvalidDualError("canonical_dual_check: supplied dual is not the canonical dual (difference " +
                                   std::to_string(diff) + ")");
        }
    }
    return eval::canonical_dual(FrameTerms(frame, nullptr, req.f), ctx, req.subset, {lambda}, req.tolerances).front();
}

/// Alternate dual Gamma:
/// Re sum_{K^c}[Gamma_j f, G_j f] + ||F_K f||^2 = Re sum_K[Gamma_j f, G_j f] + ||F_{K^c} f||^2
///   >= (2 lambda - lambda^2) Re sum_K[...] + (1 - lambda^2) Re sum_{K^c}[...].
inline CheckReport alternate_dual_check(const CheckRequest& req) {
    const HSFrame& frame = detail::frame_of(req);
    const double lambda = detail::lambda_of(req);
    require_valid_dual(frame, req.dual.get());
    return eval::alternate_dual(FrameTerms(frame, req.dual.get(), req.f), req.subset, {lambda}, req.tolerances)
        .front();
}

/// sum_{K^c}[Gamma_j f, G_j f] + ||F_K f||^2 = conj(sum_K[Gamma_j f, G_j f]) + ||F_{K^c} f||^2.
inline CheckReport complex_identity_check(const CheckRequest& req) {
    const HSFrame& frame = detail::frame_of(req);
    require_valid_dual(frame, req.dual.get());
    return eval::complex_identity(FrameTerms(frame, req.dual.get(), req.f), req.subset, req.tolerances);
}

/// sum_J w_j[Gamma_j f, G_j f] + ||sum_J (1-w_j) G_j* Gamma_j f||^2
///   = conj(sum_J (1-w_j)[Gamma_j f, G_j f]) + ||sum_J w_j G_j* Gamma_j f||^2.
inline CheckReport weighted_identity_check(const CheckRequest& req) {
    const HSFrame& frame = detail::frame_of(req);
    if (!req.weights) {
        throw InvalidParameter("weighted_identity_check: weights are required");
    }
    require_valid_dual(frame, req.dual.get());
    return eval::weighted_identity(FrameTerms(frame, req.dual.get(), req.f), *req.weights, req.tolerances);
}

/// w_j = 0 on K and 1 on K^c; reduces the weighted identity to the complex one.
inline std::vector<Complex> indicator_weights(const SubsetMask& k) {
    std::vector<Complex> w(k.universe());
    for (std::size_t j = 0; j < w.size(); ++j) {
        w[j] = k.contains(j) ? 0.0 : 1.0;
    }
    return w;
}

} // namespace hsframe
