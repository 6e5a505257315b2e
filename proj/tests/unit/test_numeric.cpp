#include "p4pha/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace p4pha;
using namespace p4pha::numeric;

namespace {

const LadderSystem& sys()
{
    static const LadderSystem s;
    return s;
}

const P4Trajectory& default_trajectory()
{
    static const P4Trajectory tr = integrate_p4(TrajectoryConfig{});
    return tr;
}

double simpson_error(double h)
{
    std::vector<double> y;
    const int n = static_cast<int>(std::lround(2.0 / h));
    for (int k = 0; k <= n; ++k) y.push_back(std::cos(-1.0 + k * h));
    const std::size_t origin = static_cast<std::size_t>(n / 3);
    const auto I = cumulative_simpson(y, h, origin);
    const double x0 = -1.0 + static_cast<double>(origin) * h;
    double err = 0.0;
    for (int k = 0; k <= n; ++k) err = std::max(err, std::abs(I[static_cast<std::size_t>(k)] - (std::sin(-1.0 + k * h) - std::sin(x0))));
    return err;
}

} // namespace

TEST(Quadrature, ExactForQuadratics)
{
    std::vector<double> y;
    const double h = 0.1;
    for (int k = 0; k <= 11; ++k) y.push_back(3.0 * (k * h) * (k * h) - (k * h) + 2.0);
    const auto I = cumulative_simpson(y, h, 4);
    auto exact = [](double x) { return x * x * x - 0.5 * x * x + 2.0 * x; };
    for (int k = 0; k <= 11; ++k) EXPECT_NEAR(I[static_cast<std::size_t>(k)], exact(k * h) - exact(0.4), 1e-13) << k;
}

TEST(Quadrature, FourthOrderConvergence)
{
    const double e1 = simpson_error(0.02);
    const double e2 = simpson_error(0.01);
    EXPECT_GT(std::log2(e1 / e2), 3.5);
    EXPECT_LT(std::log2(e1 / e2), 4.5);
}

TEST(Quadrature, TinyGrids)
{
    EXPECT_TRUE(cumulative_simpson(std::vector<double>{}, 0.1, 0).empty());
    const auto two = cumulative_simpson(std::vector<double>{1.0, 3.0}, 0.5, 0);
    EXPECT_DOUBLE_EQ(two[1], 1.0);
}

TEST(Trajectory, DefaultRunSatisfiesInvariants)
{
    const auto& tr = default_trajectory();
    EXPECT_EQ(tr.size(), 1601u);
    EXPECT_DOUBLE_EQ(tr.x[tr.origin], 0.0);
    EXPECT_DOUBLE_EQ(tr.f[tr.origin], 1.0);
    EXPECT_LE(max_ode_residual(tr, 4), 1e-8);
    for (double f : tr.f) EXPECT_GE(std::abs(f), 1e-6);
    for (std::size_t k = 1; k < tr.size(); ++k) EXPECT_NEAR(tr.x[k] - tr.x[k - 1], tr.h, 1e-12);
    EXPECT_FALSE(tr.int_w1.has_value());
    EXPECT_DOUBLE_EQ(tr.int_w3[tr.origin], 0.0);
}

TEST(Trajectory, SecondOrderResidualConverges)
{
    TrajectoryConfig cfg;
    cfg.h = 1e-3;
    const double r1 = max_ode_residual(integrate_p4(cfg), 2);
    cfg.h = 5e-4;
    const double r2 = max_ode_residual(integrate_p4(cfg), 2);
    EXPECT_GT(r1 / r2, 3.5);
    EXPECT_LT(r1 / r2, 4.5);
}

TEST(Trajectory, ImmediateSingularity)
{
    TrajectoryConfig cfg;
    cfg.f0 = 0.0;
    EXPECT_THROW(integrate_p4(cfg), IntegrationError);
    cfg.f0 = 1e-9;
    EXPECT_THROW(integrate_p4(cfg), IntegrationError);
}

TEST(Trajectory, BadGrid)
{
    TrajectoryConfig cfg;
    cfg.h = 0.0;
    EXPECT_THROW(integrate_p4(cfg), DomainError);
    cfg = {};
    cfg.x0 = 1.0;
    EXPECT_THROW(integrate_p4(cfg), DomainError);
}

TEST(Trajectory, PolesTruncateTheDomain)
{
    TrajectoryConfig cfg;
    cfg.span_lo = -2.0;
    cfg.span_hi = 2.0;
    const auto tr = integrate_p4(cfg);
    ASSERT_TRUE(tr.singular_lo && tr.singular_hi);
    EXPECT_GT(*tr.singular_hi, 0.4);
    EXPECT_LT(*tr.singular_hi, 0.7);
    EXPECT_LT(*tr.singular_lo, -0.4);
    EXPECT_GT(*tr.singular_lo, -0.9);
    EXPECT_LE(max_ode_residual(tr, 4), cfg.tol_ode);
    EXPECT_LT(tr.x.back(), *tr.singular_hi);
}

TEST(Trajectory, NegativeBetaStoresW1Integral)
{
    TrajectoryConfig cfg;
    cfg.beta = -1.0;
    const auto tr = integrate_p4(cfg);
    ASSERT_TRUE(tr.int_w1.has_value());
    EXPECT_EQ(tr.s(), std::complex<double>(1.0, 0.0));
}

TEST(Trajectory, QuadratureMatchesIntegrand)
{
    const auto& tr = default_trajectory();
    double err = 0.0;
    for (std::size_t k = 2; k + 2 < tr.size(); ++k) {
        const double d = (-tr.int_w3[k + 2] + 8.0 * tr.int_w3[k + 1] - 8.0 * tr.int_w3[k - 1] + tr.int_w3[k - 2]) / (12.0 * tr.h);
        err = std::max(err, std::abs(d - (-2.0 * tr.f[k] - tr.x[k])));
    }
    EXPECT_LT(err, 1e-9);
}

TEST(Trajectory, SymbolicDerivativeMatchesFiniteDifference)
{
    const RingElem e = RingElem::x() * RingElem::f() * RingElem::f() + RingElem::fp() * RingElem::f_pow(-1);
    const RingElem de = derive(e);
    auto max_err = [&](const P4Trajectory& tr) {
        double err = 0.0;
        for (std::size_t k = 1; k + 1 < tr.size(); ++k) {
            const auto fd = (e.eval(tr.point(k + 1)) - e.eval(tr.point(k - 1))) / (2.0 * tr.h);
            err = std::max(err, std::abs(fd - de.eval(tr.point(k))));
        }
        return err;
    };
    TrajectoryConfig cfg;
    cfg.h = 1e-3;
    const double e1 = max_err(integrate_p4(cfg));
    cfg.h = 5e-4;
    const double e2 = max_err(integrate_p4(cfg));
    EXPECT_GT(e1 / e2, 3.5);
    EXPECT_LT(e1 / e2, 4.5);
}

TEST(GridStates, ZeroModeIsExponential)
{
    const auto& tr = default_trajectory();
    const auto gs = eval_state(zero_mode(WeightType::lowest), tr, sys().require_signature());
    EXPECT_EQ(gs.energy, std::complex<double>(0.0, 0.0));
    for (std::size_t k = 0; k < tr.size(); k += 97) EXPECT_DOUBLE_EQ(gs.values[k].real(), std::exp(tr.int_w3[k]));
}

TEST(GridStates, FirstStateClosedForm)
{
    const auto& tr = default_trajectory();
    const auto seq = build_sequence(sys(), WeightType::lowest, 1);
    const auto gs = eval_state(seq[1], tr, sys().require_signature());
    EXPECT_EQ(gs.energy, std::complex<double>(2.0, 0.0));
    for (std::size_t k = 0; k < tr.size(); k += 131) {
        const double x = tr.x[k], f = tr.f[k], fp = tr.fp[k];
        const double poly = 4 * f * f * f * f + 8 * f * f * f * x + 4 * f * f * x * x - 2.0 - fp * fp;
        EXPECT_NEAR(gs.values[k].real(), std::exp(tr.int_w3[k]) * poly / (2.0 * f), 1e-12);
    }
}

TEST(GridStates, W1GaugeNeedsNegativeBeta)
{
    EXPECT_THROW(eval_state(zero_mode(WeightType::highest), default_trajectory(), sys().require_signature()), GaugeError);
}

TEST(GridStates, LowestStatesAreReal)
{
    const auto& tr = default_trajectory();
    for (const auto& st : build_sequence(sys(), WeightType::lowest, 2))
        EXPECT_LE(imaginary_fraction(eval_state(st, tr, sys().require_signature())), 1e-10);
}

TEST(EigenResidual, LowestChain)
{
    const auto& tr = default_trajectory();
    const auto seq = build_sequence(sys(), WeightType::lowest, 2);
    for (const auto& st : seq) {
        auto gs = eval_state(st, tr, sys().require_signature());
        const double r = eigen_residual(gs, tr);
        EXPECT_LE(r, 1e-5) << st.level;
        gs.energy += 1.0;
        EXPECT_GE(eigen_residual(gs, tr), 1e3 * r) << st.level;
        gs.energy -= 2.0;
        EXPECT_GE(eigen_residual(gs, tr), 1e3 * r) << st.level;
    }
}

TEST(EigenResidual, WrongEnergyIsOrderOne)
{
    const auto& tr = default_trajectory();
    auto gs = eval_state(zero_mode(WeightType::lowest), tr, sys().require_signature());
    gs.energy = 1.0;
    EXPECT_NEAR(eigen_residual(gs, tr), 1.0, 0.05);
}

TEST(EigenResidual, RefinementIsSecondOrder)
{
    TrajectoryConfig cfg;
    cfg.h = 1e-3;
    const auto t1 = integrate_p4(cfg);
    cfg.h = 5e-4;
    const auto t2 = integrate_p4(cfg);
    const auto st = zero_mode(WeightType::lowest);
    const double r1 = eigen_residual(eval_state(st, t1, sys().require_signature()), t1);
    const double r2 = eigen_residual(eval_state(st, t2, sys().require_signature()), t2);
    EXPECT_GT(r1 / r2, 3.5);
    EXPECT_LT(r1 / r2, 4.5);
}

TEST(EigenResidual, HighestChainWithRealS)
{
    TrajectoryConfig cfg;
    cfg.beta = -1.0;
    const auto tr = integrate_p4(cfg);
    for (const auto& st : build_sequence(sys(), WeightType::highest, 2)) {
        const auto gs = eval_state(st, tr, sys().require_signature());
        EXPECT_NEAR(gs.energy.real(), -1.0 - 2.0 * st.level, 1e-14);
        EXPECT_LE(eigen_residual(gs, tr), 1e-5) << st.level;
    }
}

TEST(EigenResidual, NeedsInteriorPoints)
{
    P4Trajectory tr;
    tr.h = 0.1;
    GridState gs;
    gs.values.resize(4);
    EXPECT_THROW(eigen_residual(gs, tr), DomainError);
}

TEST(FiniteDifferenceOperator, LoweringAnnihilatesZeroMode)
{
    const auto& tr = default_trajectory();
    const auto seq = build_sequence(sys(), WeightType::lowest, 1);
    const auto g0 = eval_state(seq[0], tr, sys().require_signature());
    const auto g1 = eval_state(seq[1], tr, sys().require_signature());
    EXPECT_LE(fd_cancellation_residual(sys().ladders().c, g0, tr), 1e-6);
    EXPECT_GT(fd_cancellation_residual(sys().ladders().c, g1, tr), 1e-2);
}

TEST(FiniteDifferenceOperator, MatchesSymbolicHamiltonian)
{
    const auto& tr = default_trajectory();
    const auto st = zero_mode(WeightType::lowest);
    const auto gs = eval_state(st, tr, sys().require_signature());
    const auto terms = apply_fd_terms(sys().h(), gs, tr, 4);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 3; k + 3 < tr.size(); ++k) {
        num += std::norm(terms[0][k] + terms[2][k]);
        den += std::norm(gs.values[k]);
    }
    EXPECT_LT(std::sqrt(num / den), 1e-5);
    EXPECT_THROW(apply_fd_terms(power(sys().h(), 3), gs, tr), DomainError);
}

TEST(Multidim, EnergiesAreAdditive)
{
    const auto rep = multidim_assemble({TrajectoryConfig{}, TrajectoryConfig{}}, 2, sys());
    EXPECT_TRUE(rep.weight_check.all_commute());
    EXPECT_EQ(rep.energies.size(), 9u);
    for (const auto& row : rep.energies) {
        EXPECT_EQ(row.energy, ParamScalar(2 * row.levels[0] + 2 * row.levels[1]));
        if (row.levels == std::vector<int>{1, 2}) EXPECT_EQ(row.energy, ParamScalar(6));
    }
    for (const auto& ax : rep.axes) EXPECT_LE(ax.zero_mode_annihilation, 1e-6);
}

TEST(Multidim, MixedParametersStillCommute)
{
    TrajectoryConfig a, b, c;
    b.alpha = 0.5;
    b.beta = 1.0;
    c.alpha = -0.3;
    c.beta = 3.0;
    c.span_lo = -0.3;
    c.span_hi = 0.3;
    const auto rep = multidim_assemble({a, b, c}, 1, sys());
    EXPECT_EQ(rep.weight_check.entries.size(), 9u);
    EXPECT_TRUE(rep.weight_check.all_commute());
    EXPECT_EQ(rep.energies.size(), 8u);
}

TEST(Multidim, NeedsTwoAxes) { EXPECT_THROW(multidim_assemble({TrajectoryConfig{}}, 1, sys()), DomainError); }
