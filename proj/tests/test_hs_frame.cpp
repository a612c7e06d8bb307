#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace hsframe;
using hsframe::testing::masked_sum_oracle;
using hsframe::testing::random_matrix;
using hsframe::testing::random_vector;
using hsframe::testing::trace_inner_oracle;
using hsframe::testing::unvec_oracle;

namespace {

HSFrame direct_sum(const HSFrame& a, const HSFrame& b) {
    std::vector<HSOperatorMap> maps = a.maps();
    maps.insert(maps.end(), b.maps().begin(), b.maps().end());
    return HSFrame(a.dim(), a.side(), maps);
}

} // namespace

TEST(HSOperatorMap, ConstructionErrors) {
    EXPECT_THROW(HSOperatorMap(2, 2, ComplexMatrix::Zero(3, 2)), DimensionError);
    EXPECT_THROW(HSOperatorMap(0, 1, ComplexMatrix::Zero(1, 0)), InvalidInput);
    EXPECT_THROW(HSFrame(2, 1, {}), InvalidInput);
    EXPECT_THROW(HSFrame(2, 1, {HSOperatorMap(2, 2, ComplexMatrix::Zero(4, 2))}), DimensionError);
}

TEST(Apply, Examples) {
    const HSOperatorMap zero(3, 2, ComplexMatrix::Zero(4, 3));
    EXPECT_EQ(hsframe::apply(zero, random_vector(3, 1)), ComplexMatrix::Zero(2, 2));

    const ComplexVector fj = random_vector(3, 2);
    const HSFrame scalar = embed_vector_frame(VectorFrame(3, {fj}));
    const ComplexVector f = random_vector(3, 3);
    const ComplexMatrix out = hsframe::apply(scalar[0], f);
    ASSERT_EQ(out.rows(), 1);
    EXPECT_NEAR(std::abs(out(0, 0) - inner(f, fj)), 0.0, 1e-14);

    EXPECT_THROW(hsframe::apply(zero, random_vector(2, 1)), DimensionError);
}

TEST(Apply, MatchesUnvecOracle) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(s % 4);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(s % 3);
        const HSOperatorMap g(n, m, random_matrix(m * m, n, 100 + s));
        const ComplexVector f = random_vector(n, 200 + s);
        EXPECT_LE((hsframe::apply(g, f) - unvec_oracle(g.coeff(), m, f)).norm(), 1e-13 * (1 + f.norm()));
    }
}

TEST(Apply, LinearAndBoundedByOpNorm) {
    const HSOperatorMap g(4, 2, random_matrix(4, 4, 7));
    const Complex alpha{0.3, -1.7};
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexVector f = random_vector(4, 300 + s);
        const ComplexVector h = random_vector(4, 400 + s);
        EXPECT_LE((hsframe::apply(g, alpha * f + h) - (alpha * hsframe::apply(g, f) + hsframe::apply(g, h))).norm(), 1e-12);
        EXPECT_LE(schatten_norm(hsframe::apply(g, f), 2.0), g.op_norm() * f.norm() * (1 + 1e-12));
    }
}

TEST(AdjointApply, Examples) {
    const HSOperatorMap g(3, 2, random_matrix(4, 3, 9));
    EXPECT_EQ(adjoint_apply(g, ComplexMatrix::Zero(2, 2)), ComplexVector::Zero(3));

    const ComplexVector fj = random_vector(3, 10);
    const HSFrame scalar = embed_vector_frame(VectorFrame(3, {fj}));
    ComplexMatrix t(1, 1);
    const Complex c{2.0, -0.5};
    t(0, 0) = c;
    EXPECT_LE((adjoint_apply(scalar[0], t) - c * fj).norm(), 1e-14);
    EXPECT_THROW(adjoint_apply(g, ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST(AdjointApply, DualityPairing) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const HSOperatorMap g(4, 3, random_matrix(9, 4, 500 + s));
        const ComplexMatrix t = random_matrix(3, 3, 600 + s);
        const ComplexVector f = random_vector(4, 700 + s);
        const Complex lhs = inner(adjoint_apply(g, t), f);
        const Complex rhs = trace_inner_oracle(t, hsframe::apply(g, f));
        const double scale = std::max(1.0, t.norm() * g.op_norm() * f.norm());
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * scale);
    }
}

TEST(HSFrameOperator, Examples) {
    const HSFrame onb = embed_vector_frame(gen_harmonic(3, 3));
    EXPECT_LE((hs_frame_operator(onb) - identity(3)).norm(), 1e-12);

    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 11);
    const Complex c{1.5, -2.0};
    EXPECT_LE((hs_frame_operator(frame.scaled(c)) - std::norm(c) * hs_frame_operator(frame)).norm(),
              1e-12 * std::norm(c) * hs_frame_operator(frame).norm());

    for (std::uint64_t s = 0; s < 10; ++s) {
        const HSFrame f = gen_gaussian_hs(4, 2, 5, 20 + s);
        const ComplexMatrix oracle = masked_sum_oracle(f, SubsetMask::full(f.size()));
        EXPECT_LE((hs_frame_operator(f) - oracle).norm(), 1e-12 * oracle.norm());
        EXPECT_TRUE(is_hermitian(hs_frame_operator(f)));
        EXPECT_GE(hs_frame_bounds(f).lower, 0.0);
    }
}

TEST(HSFrameBounds, Examples) {
    const HSFrame p = parsevalize(gen_gaussian_hs(3, 2, 3, 31));
    FrameBounds b = hs_frame_bounds(p);
    EXPECT_NEAR(b.lower, 1.0, 1e-10);
    EXPECT_NEAR(b.upper, 1.0, 1e-10);

    const HSFrame q = parsevalize(gen_gaussian_hs(3, 2, 2, 32));
    b = hs_frame_bounds(direct_sum(p, q));
    EXPECT_NEAR(b.lower, 2.0, 1e-10);
    EXPECT_NEAR(b.upper, 2.0, 1e-10);

    const HSFrame frame = gen_gaussian_hs(4, 2, 3, 33);
    b = hs_frame_bounds(frame);
    for (std::uint64_t s = 0; s < 100; ++s) {
        const ComplexVector f = random_vector(4, 800 + s);
        double energy = 0.0;
        for (const auto& g : frame.maps()) {
            energy += std::pow(schatten_norm(hsframe::apply(g, f), 2.0), 2);
        }
        const double ff = f.squaredNorm();
        EXPECT_LE(b.lower * ff, energy * (1 + 1e-12));
        EXPECT_LE(energy, b.upper * ff * (1 + 1e-12));
    }
}

TEST(CanonicalDualHS, Examples) {
    const HSFrame p = parsevalize(gen_gaussian_hs(3, 2, 3, 41));
    const HSDualPair pd = canonical_dual_hs(p);
    EXPECT_EQ(pd.kind, DualKind::canonical);
    EXPECT_LE((pd.dual.stacked() - p.stacked()).norm(), 1e-12 * p.stacked().norm());

    const HSFrame tight = direct_sum(p, p);
    const HSDualPair td = canonical_dual_hs(tight);
    EXPECT_LE((td.dual.stacked() - tight.stacked() / 2.0).norm(), 1e-12 * tight.stacked().norm());

    for (std::uint64_t s = 0; s < 10; ++s) {
        const HSFrame frame = gen_gaussian_hs(4, 2, 3, 50 + s);
        const HSDualPair d = canonical_dual_hs(frame);
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (std::size_t j = 0; j < frame.size(); ++j) {
            sum += frame[j].coeff().adjoint() * d.dual[j].coeff();
        }
        EXPECT_LE((sum - identity(4)).norm(), 1e-10);
        const ComplexVector f = random_vector(4, 60 + s);
        ComplexVector rec = ComplexVector::Zero(4);
        for (std::size_t j = 0; j < frame.size(); ++j) {
            rec += adjoint_apply(frame[j], hsframe::apply(d.dual[j], f));
        }
        EXPECT_LE((rec - f).norm(), 1e-10 * f.norm());
    }
}

TEST(CanonicalDualHS, SingularFrameThrows) {
    const HSFrame degenerate = gen_gaussian_hs(5, 1, 2, 3);
    EXPECT_FALSE(is_frame(degenerate));
    EXPECT_THROW(canonical_dual_hs(degenerate), SingularityError);
}

TEST(PartialOperatorHS, ExamplesAndComplementInvariant) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 6, 71);
    const ComplexMatrix& s = hs_frame_operator(frame);
    EXPECT_EQ(partial_operator_hs(frame, SubsetMask::empty(6)), ComplexMatrix::Zero(3, 3));
    EXPECT_LE((partial_operator_hs(frame, SubsetMask::full(6)) - s).norm(), 1e-13 * s.norm());
    for (std::uint64_t code = 0; code < 64; ++code) {
        const SubsetMask k = SubsetMask::from_code(6, code);
        const ComplexMatrix sk = partial_operator_hs(frame, k);
        EXPECT_TRUE(is_hermitian(sk));
        EXPECT_LE((sk + partial_operator_hs(frame, k.complement()) - s).norm(), 1e-13 * s.norm());
        EXPECT_LE((sk - masked_sum_oracle(frame, k)).norm(), 1e-12 * s.norm());
    }
    EXPECT_THROW(partial_operator_hs(frame, SubsetMask::full(5)), DimensionError);
}

TEST(EmbedVectorFrame, Examples) {
    const HSFrame onb = embed_vector_frame(gen_harmonic(4, 4));
    FrameBounds b = hs_frame_bounds(onb);
    EXPECT_NEAR(b.lower, 1.0, 1e-12);
    EXPECT_NEAR(b.upper, 1.0, 1e-12);

    for (std::uint64_t s = 0; s < 10; ++s) {
        const VectorFrame vf = gen_gaussian_vector(4, 7, 80 + s);
        const HSFrame hf = embed_vector_frame(vf);
        const FrameBounds vb = frame_bounds(vf);
        b = hs_frame_bounds(hf);
        EXPECT_NEAR(b.lower, vb.lower, 1e-12 * vb.upper);
        EXPECT_NEAR(b.upper, vb.upper, 1e-12 * vb.upper);

        const ComplexVector f = random_vector(4, 90 + s);
        const ComplexVector c = analysis(vf, f);
        double energy = 0.0;
        for (std::size_t j = 0; j < hf.size(); ++j) {
            const ComplexMatrix gf = hsframe::apply(hf[j], f);
            EXPECT_NEAR(std::abs(gf(0, 0) - c[static_cast<Eigen::Index>(j)]), 0.0, 1e-13);
            energy += gf.squaredNorm();
        }
        EXPECT_NEAR(energy, c.squaredNorm(), 1e-12 * c.squaredNorm());

        const VectorFrame back = extract_vector_frame(hf);
        for (std::size_t j = 0; j < vf.size(); ++j) {
            EXPECT_EQ(back[j], vf[j]);
        }
    }
    EXPECT_THROW(extract_vector_frame(gen_gaussian_hs(2, 2, 2, 1)), DimensionError);
}

TEST(EmbedGFrame, Examples) {
    // d_j = 1: Lambda_j = f_j* reproduces the scalar embedding.
    const VectorFrame vf = gen_gaussian_vector(3, 5, 101);
    std::vector<ComplexMatrix> rows;
    for (const auto& v : vf.vectors()) {
        rows.emplace_back(v.adjoint());
    }
    const HSFrame ge = embed_g_frame(GFrame(3, rows));
    const HSFrame ve = embed_vector_frame(vf);
    EXPECT_EQ(ge.side(), 1);
    EXPECT_LE((ge.stacked() - ve.stacked()).norm(), 0.0);

    const HSFrame single = embed_g_frame(GFrame(2, {identity(2)}));
    const FrameBounds b = hs_frame_bounds(single);
    EXPECT_NEAR(b.lower, 1.0, 1e-15);
    EXPECT_NEAR(b.upper, 1.0, 1e-15);
}

TEST(EmbedGFrame, IsometryAndBounds) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const GFrame g = gen_gaussian_g(4, {1, 3, 2, 4}, 110 + s);
        const HSFrame h = embed_g_frame(g);
        EXPECT_EQ(h.side(), 4);
        const FrameBounds gb = g_frame_bounds(g);
        const FrameBounds hb = hs_frame_bounds(h);
        EXPECT_NEAR(hb.lower, gb.lower, 1e-10);
        EXPECT_NEAR(hb.upper, gb.upper, 1e-10);
        for (std::uint64_t t = 0; t < 50; ++t) {
            const ComplexVector f = random_vector(4, 1000 * s + t);
            double lhs = 0.0;
            double rhs = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j) {
                const ComplexVector lf = g[j] * f;
                const ComplexMatrix gf = hsframe::apply(h[j], f);
                lhs += lf.squaredNorm();
                rhs += gf.squaredNorm();
                EXPECT_LE((gf.col(0).head(lf.size()) - lf).norm(), 1e-13 * (1 + lf.norm()));
                EXPECT_EQ(gf.rightCols(3).norm(), 0.0);
            }
            EXPECT_NEAR(lhs, rhs, 1e-12 * lhs);
        }
    }
}

TEST(MakeAlternateDual, Examples) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 3, 121);  // N m^2 = 12 > n = 3
    const HSDualPair canon = canonical_dual_hs(frame);
    const HSDualPair zero = make_alternate_dual(frame, 5, 0.0);
    EXPECT_EQ(zero.kind, DualKind::canonical);
    EXPECT_FALSE(zero.perturbed);
    EXPECT_EQ(zero.dual.stacked(), canon.dual.stacked());

    for (double scale : {0.1, 0.5, 1.0, 3.0}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const HSDualPair alt = make_alternate_dual(frame, seed, scale);
            EXPECT_TRUE(alt.perturbed);
            EXPECT_EQ(alt.kind, DualKind::alternate);
            const DualityCheck d = is_alternate_dual_hs(frame, alt.dual);
            EXPECT_TRUE(d.ok);
            EXPECT_LT(d.residual, 1e-10);
            EXPECT_LT(d.adjoint_residual, 1e-10);
            // Perturbation is measured relative to ||G~|| (stacked Frobenius norm).
            const double diff = (alt.dual.stacked() - canon.dual.stacked()).norm();
            EXPECT_GE(diff, 0.5 * scale * canon.dual.stacked().norm());
        }
    }

    EXPECT_EQ(make_alternate_dual(frame, 1, 1.0).dual.stacked(), make_alternate_dual(frame, 1, 1.0).dual.stacked());
    EXPECT_THROW(make_alternate_dual(frame, 1, -1.0), InvalidParameter);
    EXPECT_THROW(make_alternate_dual(gen_gaussian_hs(5, 1, 2, 3), 1, 1.0), SingularityError);
}

TEST(MakeAlternateDual, TrivialNullSpaceFallsBackToCanonical) {
    // N m^2 = n: the synthesis map is square and invertible, so the dual is unique.
    const HSFrame frame = gen_gaussian_hs(4, 2, 1, 131);
    const HSDualPair alt = make_alternate_dual(frame, 9, 1.0);
    EXPECT_FALSE(alt.perturbed);
    EXPECT_EQ(alt.kind, DualKind::canonical);
    EXPECT_TRUE(is_alternate_dual_hs(frame, alt.dual).ok);
}

TEST(IsAlternateDualHS, Examples) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 141);
    const HSDualPair canon = canonical_dual_hs(frame);
    EXPECT_TRUE(is_alternate_dual_hs(frame, canon.dual).ok);
    const DualityCheck doubled = is_alternate_dual_hs(frame, canon.dual.scaled(2.0));
    EXPECT_FALSE(doubled.ok);
    EXPECT_NEAR(doubled.residual, std::sqrt(3.0), 1e-9);
    EXPECT_TRUE(is_alternate_dual_hs(frame, make_alternate_dual(frame, 3, 1.0).dual).ok);
    EXPECT_THROW(is_alternate_dual_hs(frame, gen_gaussian_hs(3, 2, 3, 1)), DimensionError);
}

TEST(IsAlternateDualHS, BothSumsAreAdjoints) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const HSFrame frame = gen_gaussian_hs(3, 2, 3, 150 + s);
        const HSFrame dual = make_alternate_dual(frame, s, 1.0).dual;
        const SubsetMask all = SubsetMask::full(frame.size());
        const ComplexMatrix forward = mixed_partial_operator(frame, dual, all);
        const ComplexMatrix backward = mixed_partial_operator(dual, frame, all);
        EXPECT_LE((forward - identity(3)).norm(), 1e-10);
        EXPECT_LE((backward - identity(3)).norm(), 1e-10);
        EXPECT_LE((forward.adjoint() - backward).norm(), 1e-13);
        EXPECT_GT(hs_frame_bounds(dual).lower, 0.0);
    }
}

TEST(HSFrame, StackedRoundTripAndComposeRight) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 161);
    const HSFrame back = HSFrame::from_stacked(3, 2, frame.stacked());
    EXPECT_EQ(back.stacked(), frame.stacked());
    const ComplexMatrix a = random_matrix(3, 3, 162);
    EXPECT_LE((frame.compose_right(a).frame_operator() - a.adjoint() * frame.frame_operator() * a).norm(),
              1e-12 * frame.frame_operator().norm() * a.squaredNorm());
    EXPECT_THROW(HSFrame::from_stacked(3, 2, ComplexMatrix::Zero(5, 3)), DimensionError);
}
