#pragma once

// Classical frames {f_j} in C^n: analysis, synthesis, frame operator,
// bounds, canonical and alternate duals, and partial operators S_K.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "hsframe/operator_core.hpp"
#include "hsframe/subset.hpp"

namespace hsframe {

struct FrameBounds {
    double lower;  // A
    double upper;  // B
};

/// Default tolerance on ||sum_j G_j* Gamma_j - I||_F for an n-dimensional domain.
inline double duality_tolerance(Eigen::Index n) {
    return 1e-9 * std::sqrt(static_cast<double>(n));
}

/// Outcome of a duality test: pass flag plus the measured identity residual.
struct DualityCheck {
    bool ok = false;
    double residual = 0.0;
    double adjoint_residual = 0.0;
    double dual_lower_bound = 0.0;
};

inline FrameBounds bounds_of(const ComplexMatrix& frame_op) {
    const HermitianEig eig = hermitian_eig(frame_op);
    return {eig.min(), eig.max()};
}

inline bool bounds_are_frame(const FrameBounds& b) {
    return b.upper > 0.0 && b.lower > kPdRelThreshold * b.upper;
}

/// A finite family of vectors in C^n indexed by J = {0, ..., N-1}.
///
/// The frame operator is computed once at construction. Families with A = 0
/// (Bessel-only) are representable; operations that need S^{-1} raise.
class VectorFrame {
public:
    VectorFrame(Eigen::Index n, std::vector<ComplexVector> vectors) : n_(n), vectors_(std::move(vectors)) {
        if (n_ < 1) {
            throw InvalidInput("VectorFrame: ambient dimension must be positive");
        }
        if (vectors_.empty()) {
            throw InvalidInput("VectorFrame: at least one vector is required");
        }
        frame_op_ = ComplexMatrix::Zero(n_, n_);
        for (const auto& v : vectors_) {
            if (v.size() != n_) {
                throw DimensionError("VectorFrame: vector of dimension " + std::to_string(v.size()) +
                                     " in C^" + std::to_string(n_));
            }
            require_finite(v, "VectorFrame");
            frame_op_.noalias() += v * v.adjoint();
        }
        frame_op_ = (frame_op_ + frame_op_.adjoint()) * 0.5;
    }

    explicit VectorFrame(std::vector<ComplexVector> vectors)
        : VectorFrame(vectors.empty() ? 0 : vectors.front().size(), std::move(vectors)) {}

    Eigen::Index dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    const ComplexVector& operator[](std::size_t j) const { return vectors_.at(j); }
    const std::vector<ComplexVector>& vectors() const noexcept { return vectors_; }
    const ComplexMatrix& frame_operator() const noexcept { return frame_op_; }

    /// n x N matrix whose columns are the frame vectors.
    ComplexMatrix synthesis_matrix() const {
        ComplexMatrix t(n_, static_cast<Eigen::Index>(vectors_.size()));
        for (std::size_t j = 0; j < vectors_.size(); ++j) {
            t.col(static_cast<Eigen::Index>(j)) = vectors_[j];
        }
        return t;
    }

private:
    Eigen::Index n_;
    std::vector<ComplexVector> vectors_;
    ComplexMatrix frame_op_;
};

/// c_j = <f, f_j>.
inline ComplexVector analysis(const VectorFrame& frame, const ComplexVector& f) {
    if (f.size() != frame.dim()) {
        throw DimensionError("analysis: vector dimension does not match frame");
    }
    ComplexVector c(static_cast<Eigen::Index>(frame.size()));
    for (std::size_t j = 0; j < frame.size(); ++j) {
        c[static_cast<Eigen::Index>(j)] = inner(f, frame[j]);
    }
    return c;
}

/// sum_j c_j f_j.
inline ComplexVector synthesis(const VectorFrame& frame, const ComplexVector& c) {
    if (c.size() != static_cast<Eigen::Index>(frame.size())) {
        throw DimensionError("synthesis: coefficient length does not match frame size");
    }
    ComplexVector out = ComplexVector::Zero(frame.dim());
    for (std::size_t j = 0; j < frame.size(); ++j) {
        out += c[static_cast<Eigen::Index>(j)] * frame[j];
    }
    return out;
}

inline const ComplexMatrix& frame_operator(const VectorFrame& frame) {
    return frame.frame_operator();
}

inline FrameBounds frame_bounds(const VectorFrame& frame) {
    return bounds_of(frame.frame_operator());
}

inline bool is_frame(const VectorFrame& frame) {
    return bounds_are_frame(frame_bounds(frame));
}

/// {S^{-1} f_j}.
inline VectorFrame canonical_dual(const VectorFrame& frame) {
    const ComplexMatrix s_inv = hermitian_fn(frame.frame_operator(), HermitianFunction::inverse);
    std::vector<ComplexVector> dual;
    dual.reserve(frame.size());
    for (const auto& v : frame.vectors()) {
        dual.emplace_back(s_inv * v);
    }
    return VectorFrame(frame.dim(), std::move(dual));
}

/// S_K = sum_{j in K} f_j f_j*.
inline ComplexMatrix partial_operator(const VectorFrame& frame, const SubsetMask& k) {
    if (k.universe() != frame.size()) {
        throw DimensionError("partial_operator: subset universe does not match frame size");
    }
    ComplexMatrix s = ComplexMatrix::Zero(frame.dim(), frame.dim());
    for (std::size_t j = 0; j < frame.size(); ++j) {
        if (k.contains(j)) {
            s.noalias() += frame[j] * frame[j].adjoint();
        }
    }
    return s;
}

/// Tests f = sum_j <f, g_j> f_j, i.e. sum_j f_j g_j* = I.
inline DualityCheck is_alternate_dual(const VectorFrame& g, const VectorFrame& f, double tol) {
    if (g.dim() != f.dim() || g.size() != f.size()) {
        throw DimensionError("is_alternate_dual: frames differ in dimension or size");
    }
    ComplexMatrix acc = ComplexMatrix::Zero(f.dim(), f.dim());
    for (std::size_t j = 0; j < f.size(); ++j) {
        acc.noalias() += f[j] * g[j].adjoint();
    }
    const ComplexMatrix id = identity(f.dim());
    DualityCheck out;
    out.residual = (acc - id).norm();
    out.adjoint_residual = (acc.adjoint() - id).norm();
    out.dual_lower_bound = frame_bounds(g).lower;
    out.ok = out.residual <= tol && out.adjoint_residual <= tol && bounds_are_frame(frame_bounds(g));
    return out;
}

inline DualityCheck is_alternate_dual(const VectorFrame& g, const VectorFrame& f) {
    return is_alternate_dual(g, f, duality_tolerance(f.dim()));
}

} // namespace hsframe
