#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace hsframe;
using hsframe::testing::random_hermitian;
using hsframe::testing::random_matrix;
using hsframe::testing::random_vector;
using hsframe::testing::share;

namespace {

CheckRequest request(const HSFrame& frame, const SubsetMask& k, const ComplexVector& f,
                     std::optional<double> lambda = std::nullopt) {
    CheckRequest req;
    req.frame = share(frame);
    req.subset = k;
    req.f = f;
    req.lambda = lambda;
    return req;
}

CheckRequest with_dual(CheckRequest req, const HSFrame& dual) {
    req.dual = share(dual);
    return req;
}

double energy_oracle(const HSFrame& frame, const SubsetMask& k, const ComplexVector& f) {
    double s = 0.0;
    for (std::size_t j = 0; j < frame.size(); ++j) {
        if (k.contains(j)) {
            s += hsframe::apply(frame[j], f).squaredNorm();
        }
    }
    return s;
}

/// Orthogonal projection onto the span of the first r columns of a random matrix.
ComplexMatrix random_projection(Eigen::Index n, Eigen::Index r, std::uint64_t seed) {
    const Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, n, seed));
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, r);
    return q * q.adjoint();
}

} // namespace

TEST(CheckReport, PassRuleCombinesResidualMarginAndAuxiliary) {
    const ToleranceConfig tol;
    EXPECT_TRUE(detail::finish("t", 1.0, 1.0, 5e-10, std::nullopt, std::nullopt, 1.0, tol).pass);
    EXPECT_FALSE(detail::finish("t", 1.0, 1.0, 2e-9, std::nullopt, std::nullopt, 1.0, tol).pass);
    EXPECT_TRUE(detail::finish("t", 1.0, 1.0, 2e-9, std::nullopt, std::nullopt, 10.0, tol).pass);
    EXPECT_TRUE(detail::finish("t", 1.0, 1.0, 0.0, 1.0, -5e-11, 1.0, tol).pass);
    EXPECT_FALSE(detail::finish("t", 1.0, 1.0, 0.0, 1.0, -2e-10, 1.0, tol).pass);
    EXPECT_FALSE(detail::finish("t", 1.0, 1.0, 0.0, std::nullopt, std::nullopt, 1.0, tol, 2e-9).pass);
    ToleranceConfig bad;
    bad.tol_eq = 0.0;
    EXPECT_THROW(bad.validate(), InvalidParameter);
}

TEST(LemmaPP, Examples) {
    const Eigen::Index n = 4;
    CheckReport r = lemma_pp(ComplexMatrix::Zero(n, n), identity(n));
    EXPECT_EQ(r.lhs, Complex(0.0));
    EXPECT_EQ(r.rhs, Complex(0.0));
    EXPECT_TRUE(r.pass);

    const ComplexMatrix p = random_projection(n, 2, 3);
    r = lemma_pp(p, identity(n) - p);
    EXPECT_LT(std::abs(r.lhs), 1e-13);
    EXPECT_LT(std::abs(r.rhs), 1e-13);
    EXPECT_LT(r.residual, 1e-13);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexMatrix q = random_matrix(n, n, 10 + s) / std::sqrt(double(n));
        r = lemma_pp(q, identity(n) - q);
        EXPECT_LT(r.residual, 1e-12);
        EXPECT_TRUE(r.pass);
    }
    EXPECT_THROW(lemma_pp(identity(n), identity(n)), InvalidInput);
    EXPECT_THROW(lemma_pp(identity(n), identity(n + 1)), DimensionError);
}

TEST(LemmaPQ, Examples) {
    const Eigen::Index n = 3;
    CheckReport r = lemma_pq(identity(n), ComplexMatrix::Zero(n, n));
    EXPECT_EQ(r.lhs, Complex(3.0));
    EXPECT_EQ(r.rhs, Complex(3.0));
    r = lemma_pq(identity(n) * 0.5, identity(n) * 0.5);
    EXPECT_NEAR(std::abs(r.lhs - 0.75 * 3.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.rhs - 0.75 * 3.0), 0.0, 1e-15);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexMatrix p = random_matrix(n, n, 40 + s) / std::sqrt(double(n));
        EXPECT_LT(lemma_pq(p, identity(n) - p).residual, 1e-12);
    }
    EXPECT_THROW(lemma_pq(identity(n), identity(n)), InvalidInput);
}

TEST(PropSelfadjoint, Examples) {
    const Eigen::Index n = 3;
    const ComplexMatrix half = identity(n) * 0.5;
    const ComplexVector f = random_vector(n, 1);
    CheckReport r = prop_selfadjoint(half, half, 0.5, f);
    EXPECT_NEAR(r.lhs.real(), 0.75 * f.squaredNorm(), 1e-14);
    EXPECT_NEAR(r.rhs.real(), 0.75 * f.squaredNorm(), 1e-14);
    EXPECT_NEAR(*r.margin, 0.0, 1e-14);
    EXPECT_TRUE(r.pass);

    const ComplexMatrix p = random_hermitian(n, 2);
    r = prop_selfadjoint(p, identity(n) - p, 0.0, f);
    EXPECT_EQ(*r.bound, 0.0);
    EXPECT_NEAR(r.lhs.real(), (p * f).squaredNorm(), 1e-12);
    EXPECT_GE(*r.margin, 0.0);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexMatrix h = random_hermitian(n, 50 + s);
        const ComplexVector g = random_vector(n, 60 + s);
        for (double lambda : default_lambda_grid()) {
            r = prop_selfadjoint(h, identity(n) - h, lambda, g);
            EXPECT_GE(*r.margin, -1e-12 * r.scale);
            EXPECT_LE(r.residual, 1e-12 * r.scale);
            EXPECT_TRUE(r.pass);
        }
    }
}

TEST(PropSelfadjoint, Errors) {
    const ComplexMatrix p = random_matrix(3, 3, 5);
    const ComplexVector f = random_vector(3, 6);
    EXPECT_THROW(prop_selfadjoint(p, identity(3) - p, 0.5, f), InvalidInput);
    const ComplexMatrix h = random_hermitian(3, 7);
    EXPECT_THROW(prop_selfadjoint(h, identity(3) - h, 1.5, f), InvalidParameter);
    EXPECT_THROW(prop_selfadjoint(h, identity(3) - h, -0.1, f), InvalidParameter);
    EXPECT_THROW(prop_selfadjoint(h, identity(3) - h, 0.5, random_vector(2, 1)), DimensionError);
}

TEST(PropOperator, Examples) {
    const Eigen::Index n = 3;
    CheckReport r = prop_operator(identity(n), ComplexMatrix::Zero(n, n), 1.0);
    EXPECT_EQ(*r.bound, 1.0);
    EXPECT_NEAR(*r.margin, 0.0, 1e-15);
    EXPECT_TRUE(r.pass);

    // A unitary that is not the identity: P*P = I and the bound is 0 at lambda = 0.
    const Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, n, 8));
    const ComplexMatrix u = qr.householderQ();
    r = prop_operator(u, identity(n) - u, 0.0);
    EXPECT_EQ(*r.bound, 0.0);
    EXPECT_NEAR(*r.margin, 1.0, 1e-12);

    EXPECT_THROW(prop_operator(identity(n), identity(n), 0.5), InvalidInput);
    EXPECT_THROW(prop_operator(identity(n), ComplexMatrix::Zero(n, n), 2.0), InvalidParameter);
}

TEST(PropOperator, ResidualVanishesForEveryLambda) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(s % 5);
        const ComplexMatrix p = random_matrix(n, n, 100 + s) / std::sqrt(double(n));
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const CheckReport r = prop_operator(p, identity(n) - p, lambda);
            EXPECT_LT(r.residual, 1e-12);
            EXPECT_GE(*r.margin, -1e-10);
        }
    }
}

TEST(ParsevalIdentity, Examples) {
    const HSFrame p = parsevalize(gen_gaussian_hs(3, 2, 4, 11));
    const ComplexVector f = random_vector(3, 12);
    CheckReport r = parseval_identity(request(p, SubsetMask::empty(4), f));
    EXPECT_EQ(r.lhs, Complex(0.0));
    EXPECT_NEAR(r.rhs.real(), 0.0, 1e-12);

    const HSFrame onb = embed_vector_frame(gen_harmonic(4, 4));
    const ComplexVector g = random_vector(4, 13);
    for (std::uint64_t code = 0; code < 16; ++code) {
        r = parseval_identity(request(onb, SubsetMask::from_code(4, code), g));
        EXPECT_LT(std::abs(r.lhs), 1e-12);
        EXPECT_LT(std::abs(r.rhs), 1e-12);
    }

    const auto vs = gen_test_vectors(3, 20, 14);
    for (std::uint64_t code = 0; code < 16; ++code) {
        const SubsetMask k = SubsetMask::from_code(4, code);
        for (const auto& v : vs) {
            r = parseval_identity(request(p, k, v));
            EXPECT_LT(r.residual, 1e-9 * r.scale);
            // lhs by brute force: per-map energies and explicit S_K f.
            const double lhs = energy_oracle(p, k, v) - (hsframe::testing::masked_sum_oracle(p, k) * v).squaredNorm();
            EXPECT_NEAR(r.lhs.real(), lhs, 1e-12);
        }
    }
    EXPECT_THROW(parseval_identity(request(gen_gaussian_hs(3, 2, 4, 11), SubsetMask::empty(4), f)),
                 NotParsevalError);
    EXPECT_THROW(parseval_identity(request(p, SubsetMask::empty(4), random_vector(2, 1))), DimensionError);
    EXPECT_THROW(parseval_identity(request(p, SubsetMask::empty(3), f)), DimensionError);
}

TEST(ParsevalInequality, Examples) {
    const HSFrame p = parsevalize(gen_gaussian_hs(3, 2, 5, 21));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexVector f = random_vector(3, 30 + s);
        const double ff = f.squaredNorm();
        for (const SubsetMask& k : {SubsetMask::full(5), SubsetMask::empty(5)}) {
            const CheckReport r = parseval_inequality(request(p, k, f));
            EXPECT_NEAR(r.lhs.real(), ff, 1e-12 * ff);
            EXPECT_NEAR(*r.bound, 0.75 * ff, 1e-15 * ff);
            EXPECT_NEAR(*r.margin, 0.25 * ff, 1e-12 * ff);
        }
        for (std::uint64_t code = 0; code < 32; ++code) {
            const CheckReport r = parseval_inequality(request(p, SubsetMask::from_code(5, code), f));
            EXPECT_GE(*r.margin, -1e-10 * r.scale);
            EXPECT_TRUE(r.pass);
        }
    }
}

TEST(CanonicalDualCheck, Examples) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 41);
    const ComplexVector f = random_vector(3, 42);
    const double total = energy_oracle(frame, SubsetMask::full(4), f);
    for (std::uint64_t code = 0; code < 16; ++code) {
        const SubsetMask k = SubsetMask::from_code(4, code);
        CheckReport r = canonical_dual_check(request(frame, k, f, 0.5));
        EXPECT_NEAR(*r.bound, 0.75 * total, 1e-12 * total);
        EXPECT_TRUE(r.pass);

        r = canonical_dual_check(request(frame, k, f, 0.0));
        EXPECT_NEAR(*r.bound, energy_oracle(frame, k.complement(), f), 1e-12 * total);
        EXPECT_GE(*r.margin, 0.0);
        ASSERT_TRUE(r.auxiliary_residual.has_value());
        EXPECT_LT(*r.auxiliary_residual, 1e-9 * r.scale);
    }
}

TEST(CanonicalDualCheck, FourSumsAgreeWithIndependentAccumulation) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const HSFrame frame = gen_gaussian_hs(3, 2, 4, 50 + s);
        const ComplexMatrix sinv = frame.frame_operator().inverse();
        const ComplexVector f = random_vector(3, 60 + s);
        for (std::uint64_t code = 0; code < 16; ++code) {
            const SubsetMask k = SubsetMask::from_code(4, code);
            const ComplexVector skf = hsframe::testing::masked_sum_oracle(frame, k) * f;
            const ComplexVector skcf = hsframe::testing::masked_sum_oracle(frame, k.complement()) * f;
            double dk = 0.0;
            double dkc = 0.0;
            for (const auto& g : frame.maps()) {
                const HSOperatorMap dual(3, 2, g.coeff() * sinv);
                dk += hsframe::apply(dual, skf).squaredNorm();
                dkc += hsframe::apply(dual, skcf).squaredNorm();
            }
            const double lhs = dk + energy_oracle(frame, k.complement(), f);
            const double rhs = dkc + energy_oracle(frame, k, f);
            for (double lambda : default_lambda_grid()) {
                const CheckReport r = canonical_dual_check(request(frame, k, f, lambda));
                EXPECT_NEAR(r.lhs.real(), lhs, 1e-10 * r.scale);
                EXPECT_NEAR(r.rhs.real(), rhs, 1e-10 * r.scale);
                EXPECT_LT(r.residual, 1e-9 * r.scale);
                EXPECT_GE(*r.margin, -1e-10 * r.scale);
            }
        }
    }
}

TEST(CanonicalDualCheck, Errors) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 71);
    const ComplexVector f = random_vector(3, 72);
    EXPECT_THROW(canonical_dual_check(request(frame, SubsetMask::empty(4), f)), InvalidParameter);
    EXPECT_THROW(canonical_dual_check(request(frame, SubsetMask::empty(4), f, 1.1)), InvalidParameter);
    const HSFrame alt = make_alternate_dual(frame, 1, 1.0).dual;
    EXPECT_THROW(canonical_dual_check(with_dual(request(frame, SubsetMask::empty(4), f, 0.5), alt)), InvalidDualError);
    EXPECT_NO_THROW(canonical_dual_check(
        with_dual(request(frame, SubsetMask::empty(4), f, 0.5), canonical_dual_hs(frame).dual)));
    EXPECT_THROW(canonical_dual_check(request(gen_gaussian_hs(5, 1, 2, 1), SubsetMask::empty(2), random_vector(5, 1), 0.5)),
                 SingularityError);
}

TEST(AlternateDualCheck, Examples) {
    // Canonical dual of a Parseval frame: the margin at lambda = 1/2 is the Parseval-inequality margin.
    const HSFrame p = parsevalize(gen_gaussian_hs(3, 2, 4, 81));
    const HSFrame pd = canonical_dual_hs(p).dual;
    const ComplexVector f = random_vector(3, 82);
    for (std::uint64_t code = 0; code < 16; ++code) {
        const SubsetMask k = SubsetMask::from_code(4, code);
        const CheckReport a = alternate_dual_check(with_dual(request(p, k, f, 0.5), pd));
        const CheckReport pi = parseval_inequality(request(p, k.complement(), f));
        EXPECT_NEAR(*a.margin, *pi.margin, 1e-12 * a.scale);
        EXPECT_NEAR(a.lhs.real(), pi.lhs.real(), 1e-12 * a.scale);
    }

    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 83);
    const HSFrame alt = make_alternate_dual(frame, 2, 1.0).dual;
    const CheckReport full = alternate_dual_check(with_dual(request(frame, SubsetMask::full(4), f, 0.3), alt));
    EXPECT_NEAR(full.lhs.real(), f.squaredNorm(), 1e-10);
    EXPECT_NEAR(full.rhs.real(), f.squaredNorm(), 1e-10);

    for (std::uint64_t s = 0; s < 5; ++s) {
        const HSFrame g = gen_gaussian_hs(4, 2, 3, 90 + s);
        const HSFrame d = make_alternate_dual(g, s, 1.0).dual;
        for (const auto& v : gen_test_vectors(4, 6, s)) {
            for (std::uint64_t code = 0; code < 8; ++code) {
                for (double lambda : default_lambda_grid()) {
                    const CheckReport r =
                        alternate_dual_check(with_dual(request(g, SubsetMask::from_code(3, code), v, lambda), d));
                    EXPECT_LT(r.residual, 1e-9 * r.scale);
                    EXPECT_GE(*r.margin, -1e-10 * r.scale);
                }
            }
        }
    }
}

TEST(AlternateDualCheck, Errors) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 101);
    const ComplexVector f = random_vector(3, 102);
    EXPECT_THROW(alternate_dual_check(request(frame, SubsetMask::empty(4), f, 0.5)), InvalidDualError);
    EXPECT_THROW(alternate_dual_check(with_dual(request(frame, SubsetMask::empty(4), f, 0.5), frame)),
                 InvalidDualError);
    const HSFrame alt = make_alternate_dual(frame, 1, 1.0).dual;
    EXPECT_THROW(alternate_dual_check(with_dual(request(frame, SubsetMask::empty(4), f), alt)), InvalidParameter);
}

TEST(ComplexIdentityCheck, Examples) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 111);
    const HSFrame alt = make_alternate_dual(frame, 3, 1.0).dual;
    const ComplexVector f = random_vector(3, 112);
    const CheckReport full = complex_identity_check(with_dual(request(frame, SubsetMask::full(4), f), alt));
    EXPECT_NEAR(std::abs(full.lhs - f.squaredNorm()), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(full.rhs - f.squaredNorm()), 0.0, 1e-10);

    const HSFrame p = parsevalize(frame);
    for (std::uint64_t code = 0; code < 16; ++code) {
        const SubsetMask k = SubsetMask::from_code(4, code);
        const CheckReport r = complex_identity_check(with_dual(request(p, k, f), p));
        EXPECT_LT(std::abs(r.lhs.imag()), 1e-12);
        EXPECT_LT(std::abs(r.rhs.imag()), 1e-12);
        // Self-dual Parseval: lhs(K) = E_{K^c} + ||S_K f||^2, the Parseval identity rearranged.
        const double expected =
            energy_oracle(p, k.complement(), f) + (hsframe::testing::masked_sum_oracle(p, k) * f).squaredNorm();
        EXPECT_NEAR(r.lhs.real(), expected, 1e-12 * r.scale);
        EXPECT_TRUE(r.pass);
    }
}

TEST(ComplexIdentityCheck, GenuinelyComplexBrackets) {
    double max_imag = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const HSFrame frame = gen_gaussian_hs(3, 2, 3, 120 + s);
        const HSFrame alt = make_alternate_dual(frame, s, 1.0).dual;
        for (const auto& f : gen_test_vectors(3, 6, s)) {
            for (std::uint64_t code = 0; code < 8; ++code) {
                const CheckReport r =
                    complex_identity_check(with_dual(request(frame, SubsetMask::from_code(3, code), f), alt));
                max_imag = std::max(max_imag, std::abs(r.lhs.imag()));
                EXPECT_LT(std::abs(r.lhs.real() - r.rhs.real()), 1e-9 * r.scale);
                EXPECT_LT(std::abs(r.lhs.imag() - r.rhs.imag()), 1e-9 * r.scale);
            }
        }
    }
    EXPECT_GT(max_imag, 1e-3);
}

TEST(WeightedIdentityCheck, Examples) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 131);
    const HSFrame alt = make_alternate_dual(frame, 4, 1.0).dual;
    const ComplexVector f = random_vector(3, 132);
    CheckRequest req = with_dual(request(frame, SubsetMask::empty(4), f), alt);
    req.weights = std::vector<Complex>(4, 0.5);
    CheckReport r = weighted_identity_check(req);
    EXPECT_NEAR(std::abs(r.lhs - 0.75 * f.squaredNorm()), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(r.rhs - 0.75 * f.squaredNorm()), 0.0, 1e-10);

    for (std::uint64_t code = 0; code < 16; ++code) {
        const SubsetMask k = SubsetMask::from_code(4, code);
        req.subset = k;
        req.weights = indicator_weights(k);
        const CheckReport w = weighted_identity_check(req);
        const CheckReport c = complex_identity_check(req);
        EXPECT_LT(std::abs(w.lhs - c.lhs), 1e-12);
        EXPECT_LT(std::abs(w.rhs - c.rhs), 1e-12);
    }

    for (std::uint64_t s = 0; s < 50; ++s) {
        req.weights = random_weights(4, 2.0, s);
        for (const auto& w : *req.weights) {
            EXPECT_LE(std::abs(w), 2.0);
        }
        r = weighted_identity_check(req);
        EXPECT_LT(r.residual, 1e-9 * r.scale);
    }

    req.weights.reset();
    EXPECT_THROW(weighted_identity_check(req), InvalidParameter);
    req.weights = std::vector<Complex>(3, 0.0);
    EXPECT_THROW(weighted_identity_check(req), DimensionError);
    req.weights = std::vector<Complex>(4, Complex(std::nan(""), 0.0));
    EXPECT_THROW(weighted_identity_check(req), InvalidInput);
}

TEST(IdentitySuite, SwappingKAndComplementSwapsSides) {
    const HSFrame frame = gen_gaussian_hs(3, 2, 4, 141);
    const HSFrame p = parsevalize(frame);
    const HSFrame alt = make_alternate_dual(frame, 5, 1.0).dual;
    const ComplexVector f = random_vector(3, 142);
    for (std::uint64_t code = 0; code < 16; ++code) {
        const SubsetMask k = SubsetMask::from_code(4, code);
        const SubsetMask kc = k.complement();
        auto cross = [](const CheckReport& a, const CheckReport& b, bool conjugate) {
            const Complex brhs = conjugate ? std::conj(b.rhs) : b.rhs;
            const Complex blhs = conjugate ? std::conj(b.lhs) : b.lhs;
            EXPECT_LT(std::abs(a.lhs - brhs), 1e-9 * a.scale) << a.theorem;
            EXPECT_LT(std::abs(a.rhs - blhs), 1e-9 * a.scale) << a.theorem;
        };
        cross(parseval_identity(request(p, k, f)), parseval_identity(request(p, kc, f)), false);
        cross(parseval_inequality(request(p, k, f)), parseval_inequality(request(p, kc, f)), false);
        cross(canonical_dual_check(request(frame, k, f, 0.5)), canonical_dual_check(request(frame, kc, f, 0.5)), false);
        cross(alternate_dual_check(with_dual(request(frame, k, f, 0.5), alt)),
              alternate_dual_check(with_dual(request(frame, kc, f, 0.5), alt)), false);
        cross(complex_identity_check(with_dual(request(frame, k, f), alt)),
              complex_identity_check(with_dual(request(frame, kc, f), alt)), true);

        // Operator lemmas: swapping P and Q maps each side to the adjoint of the other.
        const ComplexMatrix pk = mixed_partial_operator(frame, alt, k);
        const ComplexMatrix pkc = mixed_partial_operator(frame, alt, kc);
        for (auto lemma : {&lemma_pp, &lemma_pq}) {
            const CheckReport a = lemma(pk, pkc, {});
            const CheckReport b = lemma(pkc, pk, {});
            EXPECT_LT(std::abs(a.lhs - std::conj(b.rhs)), 1e-12 * a.scale);
            EXPECT_LT(std::abs(a.rhs - std::conj(b.lhs)), 1e-12 * a.scale);
        }
    }
}

TEST(IdentitySuite, AlternateAndComplexAgreeOnRealParts) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const HSFrame frame = gen_gaussian_hs(3, 2, 4, 150 + s);
        const HSFrame alt = make_alternate_dual(frame, s, 1.0).dual;
        for (const auto& f : gen_test_vectors(3, 5, s)) {
            for (std::uint64_t code = 0; code < 16; ++code) {
                const SubsetMask k = SubsetMask::from_code(4, code);
                const CheckReport a = alternate_dual_check(with_dual(request(frame, k, f, 0.5), alt));
                const CheckReport c = complex_identity_check(with_dual(request(frame, k, f), alt));
                EXPECT_NEAR(a.lhs.real(), c.lhs.real(), 1e-12 * a.scale);
            }
        }
    }
}

TEST(IdentitySuite, ParsevalInequalityMatchesCanonicalAtHalf) {
    const HSFrame p = parsevalize(gen_gaussian_hs(3, 2, 5, 161));
    for (const auto& f : gen_test_vectors(3, 6, 1)) {
        for (std::uint64_t code = 0; code < 32; ++code) {
            const SubsetMask k = SubsetMask::from_code(5, code);
            const CheckReport pi = parseval_inequality(request(p, k, f));
            const CheckReport cd = canonical_dual_check(request(p, k, f, 0.5));
            EXPECT_NEAR(*pi.margin, *cd.margin, 1e-12 * pi.scale);
            EXPECT_NEAR(*pi.bound, *cd.bound, 1e-12 * pi.scale);
        }
    }
}
