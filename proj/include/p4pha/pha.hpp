#pragma once
// Quadratic polynomial Heisenberg algebra, independent of any realization:
//
//   [H, c] = -a c,   [H, c^+] = a c^+,   [c, c^+] = F(H) = b2 H^2 + b1 H + b0.

#include "coeff.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace p4pha {

/// Univariate polynomial in H over ParamScalar; coeffs()[k] multiplies H^k.
class HPoly {
public:
    HPoly() = default;
    explicit HPoly(std::vector<ParamScalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    static HPoly constant(const ParamScalar& c) { return HPoly({c}); }
    static HPoly identity() { return HPoly({0, 1}); }

    const std::vector<ParamScalar>& coeffs() const { return c_; }
    /// Degree, -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    ParamScalar coeff(int k) const
    {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : ParamScalar{};
    }

    ParamScalar operator()(const ParamScalar& h) const
    {
        ParamScalar acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * h + *it;
        return acc;
    }

    /// p(H + t).
    HPoly shifted(const ParamScalar& t) const
    {
        HPoly acc;
        const HPoly lin({t, 1});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
        return acc;
    }

    friend HPoly operator+(const HPoly& a, const HPoly& b)
    {
        std::vector<ParamScalar> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        return HPoly(std::move(r));
    }
    friend HPoly operator-(const HPoly& a) { return HPoly() - a; }
    friend HPoly operator-(const HPoly& a, const HPoly& b)
    {
        std::vector<ParamScalar> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
        return HPoly(std::move(r));
    }
    friend HPoly operator*(const HPoly& a, const HPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<ParamScalar> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return HPoly(std::move(r));
    }
    friend HPoly operator*(const ParamScalar& s, const HPoly& p)
    {
        std::vector<ParamScalar> r = p.c_;
        for (auto& c : r) c = c * s;
        return HPoly(std::move(r));
    }
    friend bool operator==(const HPoly& a, const HPoly& b)
    {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t k = 0; k < a.c_.size(); ++k)
            if (!(a.c_[k] == b.c_[k])) return false;
        return true;
    }

    std::string to_string() const
    {
        if (c_.empty()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const auto& c = c_[static_cast<std::size_t>(k)];
            if (c.is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ")";
            if (k == 1) out += "*H";
            if (k > 1) out += "*H^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<ParamScalar> c_;
};

struct PHASignature {
    ParamScalar a;
    ParamScalar b2;
    ParamScalar b1;
    ParamScalar b0;

    void validate() const
    {
        if (a.is_zero()) throw DomainError("ladder shift a must be nonzero");
    }
    PHASignature negated_bracket() const { return {a, -b2, -b1, -b0}; }
    friend bool operator==(const PHASignature&, const PHASignature&) = default;
};

/// The structure constants as printed for the Painleve-IV model:
/// a = 2, b2 = -6, b1 = 8 alpha + 4, b0 = -2 (alpha^2 + beta).
inline PHASignature p4_printed_signature()
{
    const auto al = ParamScalar::alpha();
    const auto be = ParamScalar::beta();
    return {2, -6, ParamScalar(8) * al + ParamScalar(4), ParamScalar(-2) * (al * al + be)};
}

/// F(H) = b2 H^2 + b1 H + b0.
inline HPoly f_poly(const PHASignature& sig) { return HPoly({sig.b0, sig.b1, sig.b2}); }

/// Casimir partner M with M(H) - M(H - a) = F(H) and M(0) = 0.
inline HPoly casimir_m(const PHASignature& sig)
{
    sig.validate();
    const Rational inv_a = [&]() -> Rational {
        if (!sig.a.is_rational()) throw DomainError("casimir_m needs a rational ladder shift");
        return Rational(1) / sig.a.constant_term();
    }();
    const auto& a = sig.a;
    ParamScalar c3 = sig.b2 * (inv_a / 3);
    ParamScalar c2 = (sig.b1 + a * sig.b2) * (inv_a / 2);
    ParamScalar c1 = (ParamScalar(6) * sig.b0 + ParamScalar(3) * a * sig.b1 + a * a * sig.b2) * (inv_a / 6);
    return HPoly({0, c1, c2, c3});
}

namespace detail {

struct IdentityCoefficients {
    ParamScalar a1, a3, a4, a6, a7, a8; // a0 = a2 = a5 = 0
};

inline HPoly identity_poly(const IdentityCoefficients& k, int n)
{
    const ParamScalar nn = n;
    const ParamScalar h2 = k.a1 * nn;
    const ParamScalar h1 = k.a3 * nn + k.a4 * nn * nn;
    const ParamScalar h0 = k.a6 * nn + k.a7 * nn * nn + k.a8 * nn * nn * nn;
    return HPoly({h0, h1, h2});
}

} // namespace detail

/// R_n with [c, (c^+)^n] = (c^+)^(n-1) R_n(H).
inline HPoly r_poly(const PHASignature& sig, int n)
{
    if (n < 1) throw DomainError("R_n is defined for n >= 1");
    const auto& a = sig.a;
    const auto a2 = a * a;
    detail::IdentityCoefficients k{
        sig.b2,
        sig.b1 - a * sig.b2,
        a * sig.b2,
        (a2 * sig.b2 + ParamScalar(6) * sig.b0 - ParamScalar(3) * a * sig.b1) * Rational(1, 6),
        (a * sig.b1 - a2 * sig.b2) * Rational(1, 2),
        a2 * sig.b2 * Rational(1, 3),
    };
    return detail::identity_poly(k, n);
}

/// S_n with [c^+, c^n] = c^(n-1) S_n(H).
inline HPoly s_poly(const PHASignature& sig, int n)
{
    if (n < 1) throw DomainError("S_n is defined for n >= 1");
    const auto& a = sig.a;
    const auto a2 = a * a;
    detail::IdentityCoefficients k{
        -sig.b2,
        -(a * sig.b2) - sig.b1,
        a * sig.b2,
        (-(a2 * sig.b2) - ParamScalar(6) * sig.b0 - ParamScalar(3) * a * sig.b1) * Rational(1, 6),
        (a2 * sig.b2 + a * sig.b1) * Rational(1, 2),
        -(a2 * sig.b2) * Rational(1, 3),
    };
    return detail::identity_poly(k, n);
}

enum class LadderDirection { raise, lower };

/// Energy n ladder steps away from E0.
inline ParamScalar ladder_energy(const ParamScalar& e0, int n, const PHASignature& sig, LadderDirection dir)
{
    const ParamScalar step = ParamScalar(n) * sig.a;
    return dir == LadderDirection::raise ? e0 + step : e0 - step;
}

/// -2n (beta + (2 - 2n + alpha)^2), the printed lowering coefficient on a lowest-weight chain.
inline ParamScalar fn_lowest(const ParamScalar& alpha, const ParamScalar& beta, int n)
{
    if (n < 1) throw DomainError("fn_lowest is defined for n >= 1");
    const ParamScalar shift = ParamScalar(2 - 2 * n) + alpha;
    return ParamScalar(-2 * n) * (beta + shift * shift);
}

/// 4n (-beta + 2n^2 + n(-2 + 3s - alpha) - s(2 + alpha)), s = sqrt(-beta) symbolic.
inline ParamScalar fn_highest(const ParamScalar& alpha, const ParamScalar& beta, int n)
{
    if (n < 1) throw DomainError("fn_highest is defined for n >= 1");
    const auto s = ParamScalar::s();
    const ParamScalar nn = n;
    ParamScalar inner = -beta + ParamScalar(2 * n * n) + nn * (ParamScalar(-2) + ParamScalar(3) * s - alpha) -
                        s * (ParamScalar(2) + alpha);
    return ParamScalar(4 * n) * inner;
}

struct WeightCheckEntry {
    int i = 0;
    int j = 0;
    ParamScalar weight; // [H, I_ij] = weight * I_ij
    bool commutes = false;
};

struct WeightCheckReport {
    int n_axes = 0;
    std::vector<WeightCheckEntry> entries;
    bool all_commute() const
    {
        for (const auto& e : entries)
            if (!e.commutes) return false;
        return true;
    }
};

/// Weight of I_ij = c_i c_j^+ under the total Hamiltonian sum_k H_k.
inline WeightCheckReport multidim_weight_check(const std::vector<PHASignature>& sigs)
{
    if (sigs.size() < 2) throw DomainError("multidimensional check needs N >= 2 axes");
    WeightCheckReport rep;
    rep.n_axes = static_cast<int>(sigs.size());
    for (const auto& s : sigs) s.validate();
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        for (std::size_t j = 0; j < sigs.size(); ++j) {
            // c_i lowers by a_i, c_j^+ raises by a_j
            ParamScalar w = sigs[j].a - sigs[i].a;
            rep.entries.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, w, w.is_zero()});
        }
    }
    return rep;
}

} // namespace p4pha
