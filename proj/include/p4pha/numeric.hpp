#pragma once
// Numerical cross-checks: Painleve-IV trajectories, states sampled on a
// uniform grid, and finite-difference residuals of the Schrodinger equation.

#include "states.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace p4pha::numeric {

struct TrajectoryConfig {
    double alpha = 0.0;
    double beta = 2.0;
    double x0 = 0.0;
    double f0 = 1.0;
    double fp0 = 0.0;
    double span_lo = -0.4;
    double span_hi = 0.4;
    double h = 5e-4;
    double f_min = 1e-6;
    double tol_ode = 1e-8;
};

/// Local error tolerance (absolute and relative) of the Dormand-Prince stepper.
inline constexpr double kIntegratorTolerance = 1e-12;

/// s = sqrt(-beta): real for beta < 0, i sqrt(beta) for beta > 0.
inline std::complex<double> s_branch(double beta)
{
    return beta <= 0.0 ? std::complex<double>(std::sqrt(-beta), 0.0) : std::complex<double>(0.0, std::sqrt(beta));
}

inline double p4_rhs_value(double x, double f, double fp, double alpha, double beta)
{
    return fp * fp / (2.0 * f) + 6.0 * f * f * f + 8.0 * x * f * f + 2.0 * (x * x - (1.0 + alpha)) * f +
           beta / (2.0 * f);
}

struct P4Trajectory {
    double alpha = 0.0;
    double beta = 0.0;
    double h = 0.0;
    std::vector<double> x;
    std::vector<double> f;
    std::vector<double> fp;
    std::size_t origin = 0; // index of x0
    std::optional<double> singular_lo;
    std::optional<double> singular_hi;
    std::vector<double> int_w3;
    std::optional<std::vector<double>> int_w1; // beta < 0 only

    std::size_t size() const { return x.size(); }
    std::complex<double> s() const { return s_branch(beta); }
    EvalPoint point(std::size_t n) const { return {x[n], f[n], fp[n], alpha, beta, s()}; }
};

/// Cumulative integral of uniformly sampled y, zero at index origin: composite
/// Simpson on even offsets, a one-panel quadratic rule in between.
inline std::vector<double> cumulative_simpson(std::span<const double> y, double h, std::size_t origin)
{
    const std::size_t n = y.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    auto sweep = [&](int dir) {
        auto at = [&](std::ptrdiff_t k) { return y[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(origin) + dir * k)]; };
        const std::ptrdiff_t len = dir > 0 ? static_cast<std::ptrdiff_t>(n - 1 - origin) : static_cast<std::ptrdiff_t>(origin);
        const double step = dir * h;
        double even = 0.0;
        for (std::ptrdiff_t k = 1; k <= len; ++k) {
            double value;
            if (k % 2 == 0) {
                even += step / 3.0 * (at(k - 2) + 4.0 * at(k - 1) + at(k));
                value = even;
            } else if (k + 1 <= len) {
                value = even + step / 12.0 * (5.0 * at(k - 1) + 8.0 * at(k) - at(k + 1));
            } else if (k >= 2) {
                value = even + step / 12.0 * (-at(k - 2) + 8.0 * at(k - 1) + 5.0 * at(k));
            } else {
                value = even + step / 2.0 * (at(k - 1) + at(k)); // two-point grid
            }
            out[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(origin) + dir * k)] = value;
        }
    };
    sweep(+1);
    sweep(-1);
    return out;
}

/// Relative ODE residual |f''_FD - rhs| / (1 + |f''_FD|) at every interior point.
/// stencil_order 2: 3-point second difference of f. stencil_order 4: 5-point
/// first difference of the stored f', which stays clear of roundoff at small h.
/// Edge entries are 0.
inline std::vector<double> ode_residuals(const P4Trajectory& tr, int stencil_order = 2)
{
    if (stencil_order != 2 && stencil_order != 4) throw DomainError("stencil order must be 2 or 4");
    const std::size_t n = tr.size();
    std::vector<double> r(n, 0.0);
    const std::size_t margin = stencil_order == 4 ? 2 : 1;
    if (n < 2 * margin + 1) return r;
    for (std::size_t k = margin; k + margin < n; ++k) {
        double fdd;
        if (stencil_order == 4) {
            fdd = (-tr.fp[k + 2] + 8.0 * tr.fp[k + 1] - 8.0 * tr.fp[k - 1] + tr.fp[k - 2]) / (12.0 * tr.h);
        } else {
            fdd = (tr.f[k + 1] - 2.0 * tr.f[k] + tr.f[k - 1]) / (tr.h * tr.h);
        }
        const double rhs = p4_rhs_value(tr.x[k], tr.f[k], tr.fp[k], tr.alpha, tr.beta);
        r[k] = std::abs(fdd - rhs) / (1.0 + std::abs(fdd));
    }
    return r;
}

inline double max_ode_residual(const P4Trajectory& tr, int stencil_order = 2)
{
    double m = 0.0;
    for (double v : ode_residuals(tr, stencil_order)) m = std::max(m, v);
    return m;
}

namespace detail {

struct StopIntegration {
    double x;
};

/// Samples along one direction from x0; stops early at a blow-up or zero of f.
inline std::vector<std::array<double, 3>> integrate_direction(const TrajectoryConfig& cfg, int dir, std::size_t count,
                                                              std::optional<double>& singular)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    std::vector<double> times(count + 1);
    for (std::size_t k = 0; k <= count; ++k) times[k] = cfg.x0 + dir * static_cast<double>(k) * cfg.h;

    std::vector<std::array<double, 3>> samples;
    const double f_max = 1.0 / cfg.f_min;
    auto system = [&](const State& y, State& dy, double x) {
        dy[0] = y[1];
        dy[1] = p4_rhs_value(x, y[0], y[1], cfg.alpha, cfg.beta);
    };
    auto observer = [&](const State& y, double x) {
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || std::abs(y[0]) < cfg.f_min || std::abs(y[0]) > f_max)
            throw StopIntegration{x};
        samples.push_back({x, y[0], y[1]});
    };
    State y{cfg.f0, cfg.fp0};
    auto stepper = odeint::make_controlled(kIntegratorTolerance, kIntegratorTolerance,
                                           odeint::runge_kutta_dopri5<State>());
    try {
        odeint::integrate_times(stepper, system, y, times.begin(), times.end(), dir * cfg.h, observer);
    } catch (const StopIntegration& stop) {
        singular = stop.x;
    } catch (const odeint::odeint_error&) {
        // adaptive step collapsed before the next sample
        singular = samples.empty() ? cfg.x0 : samples.back()[0] + dir * cfg.h;
    }
    return samples;
}

} // namespace detail

inline P4Trajectory integrate_p4(const TrajectoryConfig& cfg)
{
    if (!(cfg.h > 0.0)) throw DomainError("grid step h must be positive");
    if (!(cfg.f_min > 0.0)) throw DomainError("f_min must be positive");
    if (!(cfg.span_lo <= cfg.x0 && cfg.x0 <= cfg.span_hi)) throw DomainError("x0 must lie inside the span");
    if (std::abs(cfg.f0) < cfg.f_min) throw IntegrationError("initial value f0 is at a singularity of the P4 equation", cfg.x0);

    const auto n_hi = static_cast<std::size_t>(std::floor((cfg.span_hi - cfg.x0) / cfg.h + 1e-9));
    const auto n_lo = static_cast<std::size_t>(std::floor((cfg.x0 - cfg.span_lo) / cfg.h + 1e-9));

    P4Trajectory tr;
    tr.alpha = cfg.alpha;
    tr.beta = cfg.beta;
    tr.h = cfg.h;
    auto up = detail::integrate_direction(cfg, +1, n_hi, tr.singular_hi);
    auto down = detail::integrate_direction(cfg, -1, n_lo, tr.singular_lo);

    for (auto it = down.rbegin(); it != down.rend(); ++it) {
        if (it + 1 == down.rend()) break; // x0 comes from the forward sweep
        tr.x.push_back((*it)[0]);
        tr.f.push_back((*it)[1]);
        tr.fp.push_back((*it)[2]);
    }
    tr.origin = tr.x.size();
    for (const auto& s : up) {
        tr.x.push_back(s[0]);
        tr.f.push_back(s[1]);
        tr.fp.push_back(s[2]);
    }

    // Keep the connected window around x0 where the stored samples satisfy the ODE.
    const auto res = ode_residuals(tr, 4);
    std::size_t lo = 0;
    std::size_t hi = tr.size();
    for (std::size_t k = tr.origin; k + 2 < tr.size(); ++k) {
        if (k >= 2 && res[k] > cfg.tol_ode) {
            hi = k;
            tr.singular_hi = tr.x[k];
            break;
        }
    }
    for (std::size_t k = tr.origin; k >= 2; --k) {
        if (k + 2 < tr.size() && res[k] > cfg.tol_ode) {
            lo = k + 1;
            tr.singular_lo = tr.x[k];
            break;
        }
    }
    if (hi <= lo + 1) throw IntegrationError("no retained samples satisfy the P4 residual bound", cfg.x0);
    if (hi < tr.size() || lo > 0) {
        auto cut = [&](std::vector<double>& v) { v = std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi)); };
        cut(tr.x);
        cut(tr.f);
        cut(tr.fp);
        tr.origin -= lo;
    }
    if (tr.size() < 7) {
        throw IntegrationError("adaptive integration collapsed: fewer than 5 interior samples retained",
                               tr.singular_hi.value_or(tr.singular_lo.value_or(cfg.x0)));
    }

    std::vector<double> w3(tr.size());
    for (std::size_t k = 0; k < tr.size(); ++k) w3[k] = -2.0 * tr.f[k] - tr.x[k];
    tr.int_w3 = cumulative_simpson(w3, tr.h, tr.origin);
    if (tr.beta < 0.0) {
        const double s = std::sqrt(-tr.beta);
        std::vector<double> w1(tr.size());
        for (std::size_t k = 0; k < tr.size(); ++k) w1[k] = -tr.f[k] + (tr.fp[k] - s) / (2.0 * tr.f[k]);
        tr.int_w1 = cumulative_simpson(w1, tr.h, tr.origin);
    }
    return tr;
}

struct GridState {
    std::vector<std::complex<double>> values;
    int level = 0;
    std::complex<double> energy = 0.0;
};

inline GridState eval_state(const StateExpr& st, const P4Trajectory& tr, const PHASignature& sig)
{
    const std::vector<double>* integral = &tr.int_w3;
    if (st.gauge == Gauge::W1) {
        if (!tr.int_w1) throw GaugeError("the W1 gauge factor needs a real sqrt(-beta), i.e. beta < 0");
        integral = &*tr.int_w1;
    }
    GridState gs;
    gs.level = st.level;
    gs.energy = state_energy(sig, st).eval(tr.alpha, tr.beta, tr.s());
    gs.values.resize(tr.size());
    const bool laurent = st.body.min_f_exponent() < 0;
    // fixed x0 min_f guard mirrors the trajectory invariant
    for (std::size_t k = 0; k < tr.size(); ++k) {
        if (laurent && std::abs(tr.f[k]) == 0.0) throw PoleError("state body has a pole at x = " + std::to_string(tr.x[k]));
        gs.values[k] = std::exp((*integral)[k]) * st.body.eval(tr.point(k));
    }
    return gs;
}

/// Largest |Im| relative to the largest |value|.
inline double imaginary_fraction(const GridState& gs)
{
    double im = 0.0;
    double mag = 0.0;
    for (const auto& v : gs.values) {
        im = std::max(im, std::abs(v.imag()));
        mag = std::max(mag, std::abs(v));
    }
    return mag == 0.0 ? 0.0 : im / mag;
}

/// ||(-D2 + V - E) psi|| / ||psi|| over interior points, psi max-abs normalized,
/// D2 the 3-point central second difference.
inline double eigen_residual(const GridState& gs, const P4Trajectory& tr)
{
    const std::size_t n = gs.values.size();
    if (n < 7) throw DomainError("eigen_residual needs at least 5 interior points");
    double scale = 0.0;
    for (const auto& v : gs.values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double num = 0.0;
    double den = 0.0;
    const double h2 = tr.h * tr.h;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const auto psi = gs.values[k] / scale;
        const auto d2 = (gs.values[k + 1] - 2.0 * gs.values[k] + gs.values[k - 1]) / (scale * h2);
        const double v = -2.0 * tr.fp[k] + 4.0 * tr.f[k] * tr.f[k] + 4.0 * tr.x[k] * tr.f[k] + tr.x[k] * tr.x[k] - 1.0;
        const auto r = -d2 + (v - gs.energy) * psi;
        num += std::norm(r);
        den += std::norm(psi);
    }
    return std::sqrt(num / den);
}

/// Finite-difference realization sum_d e_d(x) D^d psi of an operator up to order 4,
/// returned per term so callers can judge cancellation. accuracy selects 2nd- or
/// 4th-order central stencils; entries inside the stencil margin are zero.
inline std::vector<std::vector<std::complex<double>>> apply_fd_terms(const DiffOp& op, const GridState& gs,
                                                                     const P4Trajectory& tr, int accuracy = 4)
{
    if (op.order() > 4) throw DomainError("finite-difference realization supports order <= 4");
    if (accuracy != 2 && accuracy != 4) throw DomainError("stencil accuracy must be 2 or 4");
    const std::size_t n = gs.values.size();
    const std::size_t margin = accuracy == 4 ? 3 : 2;
    const auto& p = gs.values;
    const double h = tr.h;
    std::vector<std::vector<std::complex<double>>> out(static_cast<std::size_t>(op.order()) + 1,
                                                        std::vector<std::complex<double>>(n, 0.0));
    for (std::size_t k = margin; k + margin < n; ++k) {
        const EvalPoint pt = tr.point(k);
        auto at = [&](int off) { return p[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) + off)]; };
        for (int d = 0; d <= op.order(); ++d) {
            if (op.coeff(d).is_zero()) continue;
            std::complex<double> deriv;
            if (accuracy == 2) {
                switch (d) {
                case 0: deriv = at(0); break;
                case 1: deriv = (at(1) - at(-1)) / (2.0 * h); break;
                case 2: deriv = (at(1) - 2.0 * at(0) + at(-1)) / (h * h); break;
                case 3: deriv = (at(2) - 2.0 * at(1) + 2.0 * at(-1) - at(-2)) / (2.0 * h * h * h); break;
                default: deriv = (at(2) - 4.0 * at(1) + 6.0 * at(0) - 4.0 * at(-1) + at(-2)) / (h * h * h * h); break;
                }
            } else {
                switch (d) {
                case 0: deriv = at(0); break;
                case 1: deriv = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h); break;
                case 2: deriv = (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * h * h); break;
                case 3:
                    deriv = (-at(3) + 8.0 * at(2) - 13.0 * at(1) + 13.0 * at(-1) - 8.0 * at(-2) + at(-3)) / (8.0 * h * h * h);
                    break;
                default:
                    deriv = (-at(3) + 12.0 * at(2) - 39.0 * at(1) + 56.0 * at(0) - 39.0 * at(-1) + 12.0 * at(-2) - at(-3)) /
                            (6.0 * h * h * h * h);
                    break;
                }
            }
            out[static_cast<std::size_t>(d)][k] = op.coeff(d).eval(pt) * deriv;
        }
    }
    return out;
}

/// ||sum of terms|| / sum_d ||term_d||: how well the FD image of op psi cancels.
inline double fd_cancellation_residual(const DiffOp& op, const GridState& gs, const P4Trajectory& tr,
                                       int accuracy = 4)
{
    const auto terms = apply_fd_terms(op, gs, tr, accuracy);
    const std::size_t n = gs.values.size();
    double total = 0.0;
    double scale = 0.0;
    for (const auto& t : terms) {
        double s = 0.0;
        for (const auto& v : t) s += std::norm(v);
        scale += std::sqrt(s);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> sum = 0.0;
        for (const auto& t : terms) sum += t[k];
        total += std::norm(sum);
    }
    return scale == 0.0 ? 0.0 : std::sqrt(total) / scale;
}

struct AxisResult {
    TrajectoryConfig config;
    P4Trajectory trajectory;
    std::vector<GridState> states;   // levels 0..n_max
    std::vector<double> residuals;   // eigen residual per level
    double zero_mode_annihilation = 0.0; // FD residual of c psi_0
};

struct EnergyRow {
    std::vector<int> levels;
    ParamScalar energy;
};

struct MultidimReport {
    std::vector<AxisResult> axes;
    WeightCheckReport weight_check;
    std::vector<EnergyRow> energies;
};

/// Separable N-dimensional model: one trajectory and lowest-weight chain per axis.
inline MultidimReport multidim_assemble(const std::vector<TrajectoryConfig>& axes, int n_max, const LadderSystem& sys)
{
    if (axes.size() < 2) throw DomainError("multidimensional assembly needs N >= 2 axes");
    const PHASignature& sig = sys.require_signature();
    MultidimReport rep;
    const auto chain = build_sequence(sys, WeightType::lowest, n_max);
    std::vector<PHASignature> sigs;
    for (const auto& cfg : axes) {
        AxisResult ax;
        ax.config = cfg;
        ax.trajectory = integrate_p4(cfg);
        for (const auto& st : chain) {
            ax.states.push_back(eval_state(st, ax.trajectory, sig));
            ax.residuals.push_back(eigen_residual(ax.states.back(), ax.trajectory));
        }
        ax.zero_mode_annihilation = fd_cancellation_residual(sys.ladders().c, ax.states.front(), ax.trajectory);
        rep.axes.push_back(std::move(ax));
        // each axis carries its own (alpha_i, beta_i); the shift a_i = 2 does not depend on them
        sigs.push_back(sig);
    }
    rep.weight_check = multidim_weight_check(sigs);

    std::vector<int> levels(axes.size(), 0);
    while (true) {
        ParamScalar e;
        for (int n : levels) e += state_energy(sig, StateExpr{Gauge::W3, RingElem(1), n, WeightType::lowest});
        rep.energies.push_back({levels, e});
        std::size_t k = 0;
        while (k < levels.size() && ++levels[k] > n_max) levels[k++] = 0;
        if (k == levels.size()) break;
    }
    return rep;
}

} // namespace p4pha::numeric
