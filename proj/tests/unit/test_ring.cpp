#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace p4pha;

namespace {
const RingElem X = RingElem::x();
const RingElem F = RingElem::f();
const RingElem FP = RingElem::fp();
} // namespace

TEST(Ring, LaurentCancellation) { EXPECT_EQ(F * RingElem::f_pow(-1), RingElem(1)); }

TEST(Ring, BinomialSquare) { EXPECT_EQ(pow(X + F, 2), X * X + RingElem(2) * X * F + F * F); }

TEST(Ring, ScalarCancellation)
{
    const RingElem b(ParamScalar::beta());
    EXPECT_TRUE((b * FP + b * (-FP)).is_zero());
}

TEST(Ring, P4RhsCoefficients)
{
    const auto& r = p4_rhs();
    EXPECT_EQ(r.size(), 6u);
    EXPECT_EQ(r.coeff({0, 3, 0}), ParamScalar(6));
    EXPECT_EQ(r.coeff({1, 2, 0}), ParamScalar(8));
    EXPECT_EQ(r.coeff({0, -1, 2}), ParamScalar::rational(1, 2));
    EXPECT_EQ(r.coeff({0, 1, 0}), ParamScalar(-2) * (ParamScalar(1) + ParamScalar::alpha()));
    EXPECT_EQ(r.coeff({2, 1, 0}), ParamScalar(2));
    EXPECT_EQ(r.coeff({0, -1, 0}), ParamScalar::beta() * Rational(1, 2));
}

TEST(Ring, DeriveBasics)
{
    EXPECT_EQ(derive(X), RingElem(1));
    EXPECT_EQ(derive(F), FP);
    EXPECT_EQ(derive(RingElem::f_pow(-1)), RingElem::monomial(0, -2, 1, -1));
    EXPECT_EQ(derive(FP), p4_rhs());
    EXPECT_TRUE(derive(RingElem(ParamScalar::alpha())).is_zero());
}

TEST(Ring, DeriveRepeated) { EXPECT_EQ(derive(F, 3), derive(p4_rhs())); }

TEST(Ring, EvalExamples)
{
    const EvalPoint p{0.0, 1.0, 0.0, 0.0, 2.0, {0.0, std::sqrt(2.0)}};
    EXPECT_NEAR(std::abs(p4_rhs().eval(p) - 5.0), 0.0, 1e-14);
    const EvalPoint q{3.0, 2.0, 5.0, 0.0, 2.0, {0.0, std::sqrt(2.0)}};
    EXPECT_NEAR(std::abs((F * FP).eval(q) - 10.0), 0.0, 1e-14);
}

TEST(Ring, EvalPoleAtZero)
{
    const EvalPoint p{0.0, 0.0, 1.0, 0.0, 2.0, {0.0, std::sqrt(2.0)}};
    EXPECT_THROW(RingElem::f_pow(-1).eval(p), PoleError);
    EXPECT_NO_THROW((F * FP).eval(p));
}

TEST(Ring, FExponentRange)
{
    const RingElem e = RingElem::f_pow(-3) + X * RingElem::f_pow(5);
    EXPECT_EQ(e.min_f_exponent(), -3);
    EXPECT_EQ(e.max_f_exponent(), 5);
}

TEST(Ring, TermsSortedByKey)
{
    const RingElem e = FP + X + F + RingElem(1) + RingElem::f_pow(-2);
    for (std::size_t n = 1; n < e.size(); ++n) EXPECT_LT(e.terms()[n - 1].key, e.terms()[n].key);
}

TEST(Ring, PackRoundTrip)
{
    for (int k : {0, 1, 12})
        for (int i : {-40, -1, 0, 1, 48})
            for (int j : {0, 3, 9}) EXPECT_EQ(RingElem::unpack(RingElem::pack(k, i, j)), (Monomial{k, i, j}));
}

TEST(RingProperty, RingAxioms)
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = gen::random_ring(rng), b = gen::random_ring(rng), c = gen::random_ring(rng);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
    }
}

TEST(RingProperty, LeibnizRule)
{
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = gen::random_ring(rng), b = gen::random_ring(rng);
        EXPECT_EQ(derive(a * b), derive(a) * b + a * derive(b));
        EXPECT_EQ(derive(a + b), derive(a) + derive(b));
    }
}

TEST(RingProperty, DeriveCommutesWithNormalization)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = gen::random_ring(rng);
        std::vector<RingElem::Term> shuffled(a.terms().begin(), a.terms().end());
        // split every term in two halves and shuffle: same element, unnormalized input
        std::vector<RingElem::Term> raw;
        for (const auto& t : shuffled) {
            raw.push_back({t.key, t.coeff * Rational(1, 3)});
            raw.push_back({t.key, t.coeff * Rational(2, 3)});
        }
        std::shuffle(raw.begin(), raw.end(), rng);
        EXPECT_EQ(derive(RingElem::from_terms(raw)), derive(a));
    }
}

TEST(RingProperty, EvalIsHomomorphism)
{
    std::mt19937 rng(77);
    const EvalPoint p{0.4, 1.3, -0.7, 0.25, -2.0, {std::sqrt(2.0), 0.0}};
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = gen::random_ring(rng), b = gen::random_ring(rng);
        const auto lhs = (a * b).eval(p);
        const auto rhs = a.eval(p) * b.eval(p);
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10 * (1.0 + std::abs(lhs)));
    }
}
