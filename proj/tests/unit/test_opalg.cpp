#include "helpers.hpp"
#include "p4pha/verify.hpp"

#include <gtest/gtest.h>

using namespace p4pha;

namespace {

const Ladders& ladders()
{
    static const Ladders l = build_ladders();
    return l;
}
const DiffOp& hamiltonian()
{
    static const DiffOp h = build_H();
    return h;
}

DiffOp random_op(std::mt19937& rng, int max_order)
{
    std::uniform_int_distribution<int> ord(0, max_order);
    std::vector<RingElem> c;
    for (int d = ord(rng); d >= 0; --d) c.push_back(gen::random_ring(rng, 3));
    return DiffOp(std::move(c));
}

} // namespace

TEST(DiffOp, DerivativeThroughMultiplication)
{
    const DiffOp lhs = compose(DiffOp::d(), DiffOp::mul(RingElem::f()));
    EXPECT_EQ(lhs, DiffOp({RingElem::fp(), RingElem::f()}));
}

TEST(DiffOp, IdentityIsNeutral)
{
    EXPECT_EQ(compose(ladders().c, DiffOp::identity()), ladders().c);
    EXPECT_EQ(compose(DiffOp::identity(), ladders().c), ladders().c);
}

TEST(DiffOp, FactorisedHamiltonianOnConstant)
{
    const RingElem w3 = build_W(WFunction::W3);
    const DiffOp prod = compose(DiffOp::d_plus(w3), DiffOp::d_plus(w3, -1));
    EXPECT_EQ(apply(prod, RingElem(1)), derive(w3) + w3 * w3);
}

TEST(DiffOp, ZeroOperatorHasOrderMinusOne)
{
    EXPECT_EQ(DiffOp().order(), -1);
    EXPECT_TRUE((ladders().c - ladders().c).is_zero());
}

TEST(DiffOp, SelfCommutatorVanishes) { EXPECT_TRUE(commutator(ladders().c, ladders().c).is_zero()); }

TEST(DiffOp, ApplyExamples)
{
    EXPECT_EQ(apply(DiffOp::d(), RingElem::f()), RingElem::fp());
    EXPECT_EQ(apply(compose(DiffOp::d(), DiffOp::d()), RingElem::f()), p4_rhs());
    const RingElem e = RingElem::x() * RingElem::f_pow(-2) + RingElem::fp();
    EXPECT_EQ(apply(DiffOp::identity(), e), e);
}

TEST(DiffOp, GaugeConjugationOfDerivative)
{
    const RingElem w = build_W(WFunction::W1);
    EXPECT_EQ(apply(gauge_conjugate(DiffOp::d(), w), RingElem(1)), w);
}

TEST(DiffOp, GroundStateEnergyIsZero)
{
    EXPECT_TRUE(apply(gauge_conjugate(hamiltonian(), build_W(WFunction::W3)), RingElem(1)).is_zero());
}

TEST(DiffOpProperty, GaugeHomomorphism)
{
    std::mt19937 rng(11);
    const RingElem w = build_W(WFunction::W1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_op(rng, 2), b = random_op(rng, 2);
        EXPECT_EQ(gauge_conjugate(compose(a, b), w), compose(gauge_conjugate(a, w), gauge_conjugate(b, w)));
    }
}

TEST(DiffOpProperty, CompositionIsAssociative)
{
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_op(rng, 2), b = random_op(rng, 2), c = random_op(rng, 2);
        EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    }
}

TEST(DiffOpProperty, ApplyRespectsComposition)
{
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_op(rng, 2), b = random_op(rng, 2);
        const auto e = gen::random_ring(rng, 3);
        EXPECT_EQ(apply(compose(a, b), e), apply(a, apply(b, e)));
    }
}

TEST(OpAlg, WFunctions)
{
    const RingElem f = RingElem::f();
    EXPECT_EQ(build_W(WFunction::W3), RingElem(-2) * f - RingElem::x());
    EXPECT_EQ(build_W(WFunction::W1) + build_W(WFunction::W2), RingElem(-2) * f);
    EXPECT_EQ(build_W(WFunction::W1) - build_W(WFunction::W2),
              RingElem::f_pow(-1) * (RingElem::fp() - RingElem(ParamScalar::s())));
}

TEST(OpAlg, HamiltonianShape)
{
    const DiffOp& h = hamiltonian();
    EXPECT_EQ(h.order(), 2);
    EXPECT_EQ(h.coeff(2), RingElem(-1));
    EXPECT_TRUE(h.coeff(1).is_zero());
    EXPECT_EQ(h.coeff(0).coeff({0, 2, 0}), ParamScalar(4));
    EXPECT_FALSE(h.has_s());
}

TEST(OpAlg, FactorOperators)
{
    const auto fo = build_factors();
    EXPECT_EQ(fo.m_plus.order(), 2);
    EXPECT_EQ(fo.m_plus.coeff(1), RingElem(-2) * RingElem::f());
    EXPECT_FALSE(fo.m_plus.coeff(0).has_s());
    EXPECT_FALSE(fo.m_minus.has_s());
}

TEST(OpAlg, LaddersAreThirdOrderAndSFree)
{
    EXPECT_EQ(ladders().c.order(), 3);
    EXPECT_EQ(ladders().cdag.order(), 3);
    EXPECT_FALSE(ladders().c.has_s());
    EXPECT_FALSE(ladders().cdag.has_s());
}

TEST(OpAlg, HamiltonianCommutators)
{
    EXPECT_EQ(commutator(hamiltonian(), ladders().c), ParamScalar(-2) * ladders().c);
    EXPECT_EQ(commutator(hamiltonian(), ladders().cdag), ParamScalar(2) * ladders().cdag);
    EXPECT_EQ(lowering_shift(hamiltonian(), ladders().c), std::optional<ParamScalar>(ParamScalar(2)));
}

TEST(OpAlg, BracketIsQuadraticInH)
{
    const DiffOp br = commutator(ladders().c, ladders().cdag);
    EXPECT_EQ(br.order(), 4);
    const auto p = as_polynomial_in_H(br, hamiltonian());
    ASSERT_TRUE(p.has_value());
    const auto al = ParamScalar::alpha(), be = ParamScalar::beta();
    EXPECT_EQ(*p, HPoly({ParamScalar(2) * (al * al + be), ParamScalar(-8) * al - ParamScalar(4), 6}));
    EXPECT_EQ(*p, -f_poly(p4_printed_signature()));
    EXPECT_EQ(to_operator(*p, hamiltonian()), br);
}

TEST(OpAlg, JacobiIdentity)
{
    const auto& h = hamiltonian();
    const auto& c = ladders().c;
    const auto& cd = ladders().cdag;
    const DiffOp sum = commutator(h, commutator(c, cd)) + commutator(c, commutator(cd, h)) + commutator(cd, commutator(h, c));
    EXPECT_TRUE(sum.is_zero());
}

TEST(OpAlg, FactorisationCubics)
{
    const auto cdc = as_polynomial_in_H(compose(ladders().cdag, ladders().c), hamiltonian());
    const auto ccd = as_polynomial_in_H(compose(ladders().c, ladders().cdag), hamiltonian());
    ASSERT_TRUE(cdc && ccd);
    const auto al = ParamScalar::alpha(), be = ParamScalar::beta();
    EXPECT_EQ(*cdc, HPoly({0, al * al + ParamScalar(4) * al + be + ParamScalar(4), ParamScalar(-2) * al - ParamScalar(4), 1}));
    EXPECT_EQ(ccd->shifted(-2), *cdc);
    EXPECT_TRUE((*cdc)(ParamScalar(0)).is_zero());
    // the other two roots are alpha + 2 +- s
    EXPECT_TRUE((*cdc)(al + ParamScalar(2) + ParamScalar::s()).is_zero());
    EXPECT_TRUE((*cdc)(al + ParamScalar(2) - ParamScalar::s()).is_zero());
}

TEST(OpAlg, OddOperatorIsNotPolynomialInH)
{
    EXPECT_FALSE(as_polynomial_in_H(ladders().c, hamiltonian()).has_value());
    EXPECT_FALSE(as_polynomial_in_H(DiffOp::mul(RingElem::f()), hamiltonian()).has_value());
}

TEST(OpAlg, FlippedW3BreaksLadderRelation)
{
    LadderOptions opts;
    opts.flip_w3_sign = true;
    const Ladders bad = build_ladders(opts);
    EXPECT_NE(commutator(hamiltonian(), bad.c), ParamScalar(-2) * bad.c);
    EXPECT_FALSE(lowering_shift(hamiltonian(), bad.c).has_value());
}

TEST(VerifySuite, DefaultRunPasses)
{
    const auto rep = verify_algebra({2, {}});
    EXPECT_TRUE(rep.all_passed());
    EXPECT_EQ(rep.orientation, -1);
    ASSERT_TRUE(rep.signature.has_value());
    EXPECT_EQ(rep.signature->b2, ParamScalar(6));
}

TEST(VerifySuite, NegativeControlFails)
{
    VerifyOptions opts{2, {true}};
    const auto rep = verify_algebra(opts);
    EXPECT_FALSE(rep.all_passed());
    ASSERT_NE(rep.find("[H,c] = -2c"), nullptr);
    EXPECT_FALSE(rep.find("[H,c] = -2c")->passed);
}
