#pragma once

// Hilbert-Schmidt frames {G_j : C^n -> C_2(C^m)} and the g-frames and vector
// frames that embed into them.
//
// Each G_j is stored as an m^2 x n coefficient matrix acting on the
// column-major vectorization: vec(T)[a + b*m] = T(a, b). With that fixed,
// G_j* is exactly coeff_j^* acting on vec(T), and G_j* G_j = coeff_j^* coeff_j.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hsframe/operator_core.hpp"
#include "hsframe/random.hpp"
#include "hsframe/subset.hpp"
#include "hsframe/vector_frame.hpp"

namespace hsframe {

/// A linear map C^n -> m x m complex matrices, f |-> unvec(coeff * f).
class HSOperatorMap {
public:
    HSOperatorMap(Eigen::Index n, Eigen::Index m, ComplexMatrix coeff) : n_(n), m_(m), coeff_(std::move(coeff)) {
        if (n_ < 1 || m_ < 1) {
            throw InvalidInput("HSOperatorMap: dimensions must be positive");
        }
        if (coeff_.rows() != m_ * m_ || coeff_.cols() != n_) {
            throw DimensionError("HSOperatorMap: coefficient matrix must be m^2 x n");
        }
        require_finite(coeff_, "HSOperatorMap");
    }

    Eigen::Index domain_dim() const noexcept { return n_; }
    Eigen::Index side() const noexcept { return m_; }
    const ComplexMatrix& coeff() const noexcept { return coeff_; }

    ComplexMatrix apply(const ComplexVector& f) const {
        if (f.size() != n_) {
            throw DimensionError("HSOperatorMap::apply: vector dimension mismatch");
        }
        const ComplexVector v = coeff_ * f;
        return Eigen::Map<const ComplexMatrix>(v.data(), m_, m_);
    }

    /// The vector x with <x, f> = [T, G(f)]_tau for all f.
    ComplexVector adjoint_apply(const ComplexMatrix& t) const {
        if (t.rows() != m_ || t.cols() != m_) {
            throw DimensionError("HSOperatorMap::adjoint_apply: operand must be m x m");
        }
        return coeff_.adjoint() * Eigen::Map<const ComplexVector>(t.data(), m_ * m_);
    }

    /// Operator norm s_1(coeff); ||apply(f)||_2 <= op_norm() * ||f||.
    double op_norm() const { return schatten_norm(coeff_, kInfinity); }

private:
    Eigen::Index n_;
    Eigen::Index m_;
    ComplexMatrix coeff_;
};

inline ComplexMatrix apply(const HSOperatorMap& g, const ComplexVector& f) {
    return g.apply(f);
}

inline ComplexVector adjoint_apply(const HSOperatorMap& g, const ComplexMatrix& t) {
    return g.adjoint_apply(t);
}

/// A finite family of HS maps sharing (n, m). The frame operator is computed at construction.
class HSFrame {
public:
    HSFrame(Eigen::Index n, Eigen::Index m, std::vector<HSOperatorMap> maps)
        : n_(n), m_(m), maps_(std::move(maps)) {
        if (maps_.empty()) {
            throw InvalidInput("HSFrame: at least one map is required");
        }
        frame_op_ = ComplexMatrix::Zero(n_, n_);
        for (const auto& g : maps_) {
            if (g.domain_dim() != n_ || g.side() != m_) {
                throw DimensionError("HSFrame: every map must share (n, m)");
            }
            frame_op_.noalias() += g.coeff().adjoint() * g.coeff();
        }
        frame_op_ = (frame_op_ + frame_op_.adjoint()) * 0.5;
    }

    /// Builds a frame from raw m^2 x n coefficient blocks.
    static HSFrame from_coefficients(Eigen::Index n, Eigen::Index m, const std::vector<ComplexMatrix>& blocks) {
        std::vector<HSOperatorMap> maps;
        maps.reserve(blocks.size());
        for (const auto& c : blocks) {
            maps.emplace_back(n, m, c);
        }
        return HSFrame(n, m, std::move(maps));
    }

    Eigen::Index dim() const noexcept { return n_; }
    Eigen::Index side() const noexcept { return m_; }
    std::size_t size() const noexcept { return maps_.size(); }
    const HSOperatorMap& operator[](std::size_t j) const { return maps_.at(j); }
    const std::vector<HSOperatorMap>& maps() const noexcept { return maps_; }
    const ComplexMatrix& frame_operator() const noexcept { return frame_op_; }

    /// All coefficient blocks stacked vertically: (N m^2) x n.
    ComplexMatrix stacked() const {
        const Eigen::Index block = m_ * m_;
        ComplexMatrix c(block * static_cast<Eigen::Index>(maps_.size()), n_);
        for (std::size_t j = 0; j < maps_.size(); ++j) {
            c.middleRows(block * static_cast<Eigen::Index>(j), block) = maps_[j].coeff();
        }
        return c;
    }

    /// Inverse of stacked().
    static HSFrame from_stacked(Eigen::Index n, Eigen::Index m, const ComplexMatrix& c) {
        const Eigen::Index block = m * m;
        if (c.cols() != n || c.rows() % block != 0 || c.rows() == 0) {
            throw DimensionError("HSFrame::from_stacked: shape is not (N m^2) x n");
        }
        std::vector<ComplexMatrix> blocks;
        for (Eigen::Index r = 0; r < c.rows(); r += block) {
            blocks.emplace_back(c.middleRows(r, block));
        }
        return from_coefficients(n, m, blocks);
    }

    /// Each G_j composed on the right with an n x n operator: G_j o A.
    HSFrame compose_right(const ComplexMatrix& a) const {
        if (a.rows() != n_ || a.cols() != n_) {
            throw DimensionError("HSFrame::compose_right: operand must be n x n");
        }
        std::vector<ComplexMatrix> blocks;
        blocks.reserve(maps_.size());
        for (const auto& g : maps_) {
            blocks.emplace_back(g.coeff() * a);
        }
        return from_coefficients(n_, m_, blocks);
    }

    HSFrame scaled(Complex c) const {
        std::vector<ComplexMatrix> blocks;
        blocks.reserve(maps_.size());
        for (const auto& g : maps_) {
            blocks.emplace_back(g.coeff() * c);
        }
        return from_coefficients(n_, m_, blocks);
    }

private:
    Eigen::Index n_;
    Eigen::Index m_;
    std::vector<HSOperatorMap> maps_;
    ComplexMatrix frame_op_;
};

inline void require_same_layout(const HSFrame& a, const HSFrame& b, const char* what) {
    if (a.dim() != b.dim() || a.side() != b.side() || a.size() != b.size()) {
        throw DimensionError(std::string(what) + ": frames differ in (n, m, N)");
    }
}

inline const ComplexMatrix& hs_frame_operator(const HSFrame& frame) {
    return frame.frame_operator();
}

inline FrameBounds hs_frame_bounds(const HSFrame& frame) {
    return bounds_of(frame.frame_operator());
}

inline bool is_frame(const HSFrame& frame) {
    return bounds_are_frame(hs_frame_bounds(frame));
}

/// S_K = sum_{j in K} G_j* G_j.
inline ComplexMatrix partial_operator_hs(const HSFrame& frame, const SubsetMask& k) {
    if (k.universe() != frame.size()) {
        throw DimensionError("partial_operator_hs: subset universe does not match frame size");
    }
    ComplexMatrix s = ComplexMatrix::Zero(frame.dim(), frame.dim());
    for (std::size_t j = 0; j < frame.size(); ++j) {
        if (k.contains(j)) {
            s.noalias() += frame[j].coeff().adjoint() * frame[j].coeff();
        }
    }
    return s;
}

/// F_K = sum_{j in K} G_j* Gamma_j for a pair (G, Gamma) of equal layout.
inline ComplexMatrix mixed_partial_operator(const HSFrame& frame, const HSFrame& dual, const SubsetMask& k) {
    require_same_layout(frame, dual, "mixed_partial_operator");
    if (k.universe() != frame.size()) {
        throw DimensionError("mixed_partial_operator: subset universe does not match frame size");
    }
    ComplexMatrix s = ComplexMatrix::Zero(frame.dim(), frame.dim());
    for (std::size_t j = 0; j < frame.size(); ++j) {
        if (k.contains(j)) {
            s.noalias() += frame[j].coeff().adjoint() * dual[j].coeff();
        }
    }
    return s;
}

enum class DualKind { canonical, alternate };

struct HSDualPair {
    HSFrame frame;
    HSFrame dual;
    DualKind kind;
    /// False when an alternate dual was requested but none other than the canonical one exists.
    bool perturbed = false;
};

/// G~_j = G_j S^{-1}.
inline HSDualPair canonical_dual_hs(const HSFrame& frame) {
    const ComplexMatrix s_inv = hermitian_fn(frame.frame_operator(), HermitianFunction::inverse);
    return {frame, frame.compose_right(s_inv), DualKind::canonical, false};
}

/// Tests both equalities f = sum_j G_j* Gamma_j f = sum_j Gamma_j* G_j f, and that Gamma is itself a frame.
inline DualityCheck is_alternate_dual_hs(const HSFrame& frame, const HSFrame& dual, double tol) {
    require_same_layout(frame, dual, "is_alternate_dual_hs");
    const ComplexMatrix forward = mixed_partial_operator(frame, dual, SubsetMask::full(frame.size()));
    ComplexMatrix backward = ComplexMatrix::Zero(frame.dim(), frame.dim());
    for (std::size_t j = 0; j < frame.size(); ++j) {
        backward.noalias() += dual[j].coeff().adjoint() * frame[j].coeff();
    }
    const ComplexMatrix id = identity(frame.dim());
    DualityCheck out;
    out.residual = (forward - id).norm();
    out.adjoint_residual = (backward - id).norm();
    const FrameBounds db = hs_frame_bounds(dual);
    out.dual_lower_bound = db.lower;
    out.ok = out.residual <= tol && out.adjoint_residual <= tol && bounds_are_frame(db);
    return out;
}

inline DualityCheck is_alternate_dual_hs(const HSFrame& frame, const HSFrame& dual) {
    return is_alternate_dual_hs(frame, dual, duality_tolerance(frame.dim()));
}

/// Gamma_j = G~_j + U_j where the stacked U is a seeded Gaussian family projected
/// onto {U : sum_j G_j* U_j = 0} and rescaled to scale * ||G~||_F (stacked).
///
/// When that null space is trivial the canonical dual is the only dual; it is
/// returned with `perturbed == false`.
inline HSDualPair make_alternate_dual(const HSFrame& frame, std::uint64_t seed, double scale) {
    if (!(scale >= 0.0)) {
        throw InvalidParameter("make_alternate_dual: scale must be nonnegative");
    }
    HSDualPair canonical = canonical_dual_hs(frame);
    if (scale == 0.0) {
        return canonical;
    }
    const ComplexMatrix c = frame.stacked();
    const ComplexMatrix base = canonical.dual.stacked();

    RandomStream rng(seed, 0x616c742d6475616cULL);
    const ComplexMatrix u = rng.complex_normal_matrix(c.rows(), c.cols());
    // Remove the component in range(C): sum_j G_j* U_j = C* U vanishes iff U is orthogonal to range(C).
    const ComplexMatrix projected = u - c * (pseudoinverse(c) * u);
    const double pnorm = projected.norm();
    const SVDResult cs = svd(c);
    const bool has_null_space = cs.rank() < c.rows();
    if (!has_null_space || !(pnorm > 1e-12 * u.norm())) {
        return canonical;
    }
    const ComplexMatrix gamma = base + projected * (scale * base.norm() / pnorm);
    return {frame, HSFrame::from_stacked(frame.dim(), frame.side(), gamma), DualKind::alternate, true};
}

// ---------------------------------------------------------------------------
// g-frames

/// A family of maps Lambda_j : C^n -> C^{d_j}, stored as d_j x n matrices.
class GFrame {
public:
    GFrame(Eigen::Index n, std::vector<ComplexMatrix> maps) : n_(n), maps_(std::move(maps)) {
        if (n_ < 1) {
            throw InvalidInput("GFrame: ambient dimension must be positive");
        }
        if (maps_.empty()) {
            throw InvalidInput("GFrame: at least one map is required");
        }
        frame_op_ = ComplexMatrix::Zero(n_, n_);
        for (const auto& l : maps_) {
            if (l.cols() != n_ || l.rows() < 1) {
                throw DimensionError("GFrame: every map must be d_j x n with d_j >= 1");
            }
            require_finite(l, "GFrame");
            frame_op_.noalias() += l.adjoint() * l;
        }
        frame_op_ = (frame_op_ + frame_op_.adjoint()) * 0.5;
    }

    Eigen::Index dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return maps_.size(); }
    const ComplexMatrix& operator[](std::size_t j) const { return maps_.at(j); }
    const std::vector<ComplexMatrix>& maps() const noexcept { return maps_; }
    const ComplexMatrix& frame_operator() const noexcept { return frame_op_; }

    std::vector<Eigen::Index> dims() const {
        std::vector<Eigen::Index> d;
        d.reserve(maps_.size());
        for (const auto& l : maps_) {
            d.push_back(l.rows());
        }
        return d;
    }

    Eigen::Index max_dim() const {
        Eigen::Index d = 0;
        for (const auto& l : maps_) {
            d = std::max(d, l.rows());
        }
        return d;
    }

private:
    Eigen::Index n_;
    std::vector<ComplexMatrix> maps_;
    ComplexMatrix frame_op_;
};

inline FrameBounds g_frame_bounds(const GFrame& frame) {
    return bounds_of(frame.frame_operator());
}

// ---------------------------------------------------------------------------
// Embeddings

/// m = 1: G_j(f) = [[<f, f_j>]], i.e. coeff_j = f_j*.
inline HSFrame embed_vector_frame(const VectorFrame& frame) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(frame.size());
    for (const auto& v : frame.vectors()) {
        blocks.emplace_back(v.adjoint());
    }
    return HSFrame::from_coefficients(frame.dim(), 1, blocks);
}

/// Inverse of embed_vector_frame for frames with m = 1.
inline VectorFrame extract_vector_frame(const HSFrame& frame) {
    if (frame.side() != 1) {
        throw DimensionError("extract_vector_frame: frame is not scalar-valued (m != 1)");
    }
    std::vector<ComplexVector> vectors;
    vectors.reserve(frame.size());
    for (const auto& g : frame.maps()) {
        vectors.emplace_back(g.coeff().adjoint());
    }
    return VectorFrame(frame.dim(), std::move(vectors));
}

/// m = max_j d_j: G_j(f) carries Lambda_j(f), zero-padded, in its first column.
inline HSFrame embed_g_frame(const GFrame& frame) {
    const Eigen::Index m = frame.max_dim();
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(frame.size());
    for (const auto& l : frame.maps()) {
        ComplexMatrix c = ComplexMatrix::Zero(m * m, frame.dim());
        c.topRows(l.rows()) = l;  // column 0 of unvec occupies vec indices 0..m-1
        blocks.push_back(std::move(c));
    }
    return HSFrame::from_coefficients(frame.dim(), m, blocks);
}

/// Alternate dual of a vector frame, built through the scalar HS embedding.
inline VectorFrame make_alternate_dual(const VectorFrame& frame, std::uint64_t seed, double scale) {
    return extract_vector_frame(make_alternate_dual(embed_vector_frame(frame), seed, scale).dual);
}

} // namespace hsframe
