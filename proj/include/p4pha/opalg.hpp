#pragma once
// The Painleve-IV realization: H, the factor operators M+-, Q+- and the
// third-order ladders c = M+ Q-, c^+ = Q+ M-.

#include "diffop.hpp"
#include "pha.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace p4pha {

enum class WFunction { W1, W2, W3 };

/// W1 = -f + (f' - s)/2f,  W2 = -f - (f' - s)/2f,  W3 = -2f - x.
inline RingElem build_W(WFunction which)
{
    const RingElem f = RingElem::f();
    const RingElem half_over_f = RingElem::monomial(0, -1, 0, Rational(1, 2));
    const RingElem fp_minus_s = RingElem::fp() - RingElem(ParamScalar::s());
    switch (which) {
    case WFunction::W1:
        return -f + half_over_f * fp_minus_s;
    case WFunction::W2:
        return -f - half_over_f * fp_minus_s;
    case WFunction::W3:
        return RingElem(-2) * f - RingElem::x();
    }
    throw InternalError("unknown W function");
}

/// Potential -2f' + 4f^2 + 4xf + x^2 - 1.
inline RingElem p4_potential()
{
    const RingElem f = RingElem::f();
    const RingElem x = RingElem::x();
    return RingElem(-2) * RingElem::fp() + RingElem(4) * f * f + RingElem(4) * x * f + x * x - RingElem(1);
}

/// H = -d^2 + V.
inline DiffOp build_H() { return DiffOp({p4_potential(), RingElem(), RingElem(-1)}); }

struct FactorOperators {
    DiffOp m_plus;  // (d + W1)(d + W2)
    DiffOp m_minus; // (-d + W2)(-d + W1)
    DiffOp q_plus;  // d + W3
    DiffOp q_minus; // -d + W3
};

struct LadderOptions {
    /// Negative control: replace W3 by -W3 before building the ladders.
    bool flip_w3_sign = false;
};

inline FactorOperators build_factors(const LadderOptions& opts = {})
{
    const RingElem w1 = build_W(WFunction::W1);
    const RingElem w2 = build_W(WFunction::W2);
    RingElem w3 = build_W(WFunction::W3);
    if (opts.flip_w3_sign) w3 = -w3;
    FactorOperators fo;
    fo.m_plus = compose(DiffOp::d_plus(w1), DiffOp::d_plus(w2));
    fo.m_minus = compose(DiffOp::d_plus(w2, -1), DiffOp::d_plus(w1, -1));
    fo.q_plus = DiffOp::d_plus(w3);
    fo.q_minus = DiffOp::d_plus(w3, -1);
    return fo;
}

struct Ladders {
    DiffOp c;
    DiffOp cdag;
};

/// c = M+ Q-, c^+ = Q+ M-; both must come out free of s.
inline Ladders build_ladders(const LadderOptions& opts = {})
{
    const FactorOperators fo = build_factors(opts);
    Ladders l{compose(fo.m_plus, fo.q_minus), compose(fo.q_plus, fo.m_minus)};
    if (l.c.has_s() || l.cdag.has_s()) throw InternalError("sqrt(-beta) failed to cancel from the ladder operators");
    return l;
}

/// Operator p(H) for a polynomial p.
inline DiffOp to_operator(const HPoly& p, const DiffOp& h)
{
    DiffOp result;
    DiffOp hk = DiffOp::identity();
    for (int k = 0; k <= p.degree(); ++k) {
        if (k > 0) hk = compose(h, hk);
        if (!p.coeff(k).is_zero()) result = result + p.coeff(k) * hk;
    }
    return result;
}

/// Writes an operator as a polynomial in H by peeling leading terms against
/// powers of H (leading coefficient (-1)^m). Empty when no such polynomial exists.
inline std::optional<HPoly> as_polynomial_in_H(const DiffOp& op, const DiffOp& h)
{
    if (op.is_zero()) return HPoly();
    if (op.order() % 2 != 0) return std::nullopt;
    const int m_max = op.order() / 2;
    std::vector<DiffOp> h_pow{DiffOp::identity()};
    for (int m = 1; m <= m_max; ++m) h_pow.push_back(compose(h, h_pow.back()));

    std::vector<ParamScalar> coeffs(static_cast<std::size_t>(m_max) + 1);
    DiffOp rest = op;
    while (!rest.is_zero()) {
        const int order = rest.order();
        if (order % 2 != 0) return std::nullopt;
        const RingElem& lead = rest.coeff(order);
        if (!lead.is_constant()) return std::nullopt;
        const int m = order / 2;
        ParamScalar lambda = lead.constant_value();
        if (m % 2 == 1) lambda = -lambda;
        coeffs[static_cast<std::size_t>(m)] = lambda;
        rest = rest - lambda * h_pow[static_cast<std::size_t>(m)];
        if (!rest.is_zero() && rest.order() >= order) throw InternalError("leading term failed to cancel");
    }
    return HPoly(std::move(coeffs));
}

/// Algebra data computed from the realization rather than read off a display.
struct RealizedAlgebra {
    ParamScalar a;            // [H, c] = -a c
    bool raising_ok = false;  // [H, c^+] = a c^+
    HPoly bracket;            // [c, c^+] as a polynomial in H
    HPoly cdag_c;             // c^+ c
    HPoly c_cdag;             // c c^+
    PHASignature signature() const { return {a, bracket.coeff(2), bracket.coeff(1), bracket.coeff(0)}; }
};

/// Finds a with [H, c] = -a c; nullopt when [H, c] is not a constant multiple of c.
inline std::optional<ParamScalar> lowering_shift(const DiffOp& h, const DiffOp& c)
{
    const DiffOp hc = commutator(h, c);
    if (hc.order() != c.order()) return std::nullopt;
    const RingElem& lead = hc.coeff(hc.order());
    const RingElem& clead = c.coeff(c.order());
    if (!clead.is_constant() || !lead.is_constant()) return std::nullopt;
    if (!clead.constant_value().is_rational() || clead.is_zero()) return std::nullopt;
    const Rational ratio = lead.constant_value().constant_term() / clead.constant_value().constant_term();
    if (!(lead.constant_value() == clead.constant_value() * ratio)) return std::nullopt;
    const ParamScalar a = -ParamScalar(ratio);
    if (!(hc == (-a) * c)) return std::nullopt;
    return a;
}

} // namespace p4pha
