#pragma once
// The differential ring Q[alpha,beta,s][x, f, 1/f, f'] with the derivation
// that eliminates f'' through the Painleve-IV equation.

#include "coeff.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace p4pha {

/// x^k f^i f'^j; i may be negative.
struct Monomial {
    int k = 0;
    int i = 0;
    int j = 0;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Numeric point for evaluating ring elements.
struct EvalPoint {
    double x = 0.0;
    double f = 0.0;
    double fp = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::complex<double> s = 0.0;
};

class RingElem {
public:
    using Key = std::uint64_t;
    struct Term {
        Key key;
        ParamScalar coeff;
    };

    static constexpr int kFOffset = 1 << 23;

    static constexpr Key pack(int k, int i, int j)
    {
        return (static_cast<Key>(k) << 40) | (static_cast<Key>(i + kFOffset) << 16) | static_cast<Key>(j);
    }
    static constexpr Monomial unpack(Key key)
    {
        return {static_cast<int>(key >> 40), static_cast<int>((key >> 16) & 0xFFFFFFu) - kFOffset,
                static_cast<int>(key & 0xFFFFu)};
    }
    /// Key of the product of two monomials.
    static constexpr Key mul_keys(Key a, Key b) { return a + b - (static_cast<Key>(kFOffset) << 16); }

    RingElem() = default;
    RingElem(const ParamScalar& c) // NOLINT(implicit)
    {
        if (!c.is_zero()) terms_.push_back({pack(0, 0, 0), c});
    }
    RingElem(int c) : RingElem(ParamScalar(c)) {} // NOLINT(implicit)

    static RingElem monomial(int k, int i, int j, const ParamScalar& c = 1)
    {
        RingElem r;
        if (!c.is_zero()) r.terms_.push_back({pack(k, i, j), c});
        return r;
    }
    static RingElem x() { return monomial(1, 0, 0); }
    static RingElem f() { return monomial(0, 1, 0); }
    static RingElem fp() { return monomial(0, 0, 1); }
    static RingElem f_pow(int i) { return monomial(0, i, 0); }

    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// True when the element has no x, f or f' dependence.
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].key == pack(0, 0, 0)); }
    ParamScalar constant_value() const { return coeff({0, 0, 0}); }

    ParamScalar coeff(Monomial m) const
    {
        const Key key = pack(m.k, m.i, m.j);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, Key k) { return t.key < k; });
        return (it != terms_.end() && it->key == key) ? it->coeff : ParamScalar{};
    }

    bool has_s() const
    {
        return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff.has_s(); });
    }
    int min_f_exponent() const
    {
        int m = 0;
        bool first = true;
        for (const auto& t : terms_) {
            const int i = unpack(t.key).i;
            m = first ? i : std::min(m, i);
            first = false;
        }
        return m;
    }
    int max_f_exponent() const
    {
        int m = 0;
        for (const auto& t : terms_) m = std::max(m, unpack(t.key).i);
        return m;
    }

    RingElem operator-() const
    {
        RingElem r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    RingElem& operator+=(const RingElem& o)
    {
        if (o.terms_.empty()) return *this;
        if (terms_.empty()) {
            terms_ = o.terms_;
            return *this;
        }
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && a->key < b->key)) {
                out.push_back(std::move(*a++));
            } else if (a == terms_.end() || b->key < a->key) {
                out.push_back(*b++);
            } else {
                ParamScalar c = std::move(a->coeff);
                c += b->coeff;
                if (!c.is_zero()) out.push_back({a->key, std::move(c)});
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
        return *this;
    }
    RingElem& operator-=(const RingElem& o) { return *this += -o; }

    RingElem& operator*=(const ParamScalar& c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) t.coeff = t.coeff * c;
        return *this;
    }

    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(RingElem a, const ParamScalar& c) { return a *= c; }
    friend RingElem operator*(const ParamScalar& c, RingElem a) { return a *= c; }
    friend RingElem operator*(const RingElem& a, const RingElem& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Term> prod;
        prod.reserve(a.size() * b.size());
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) prod.push_back({mul_keys(ta.key, tb.key), ta.coeff * tb.coeff});
        }
        return from_terms(std::move(prod));
    }

    friend bool operator==(const RingElem& a, const RingElem& b)
    {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t n = 0; n < a.terms_.size(); ++n) {
            if (a.terms_[n].key != b.terms_[n].key || !(a.terms_[n].coeff == b.terms_[n].coeff)) return false;
        }
        return true;
    }

    /// Merges duplicate keys and drops zero coefficients.
    static RingElem from_terms(std::vector<Term> v)
    {
        std::sort(v.begin(), v.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
        RingElem r;
        r.terms_.reserve(v.size());
        for (auto& t : v) {
            if (!r.terms_.empty() && r.terms_.back().key == t.key) {
                r.terms_.back().coeff += t.coeff;
            } else {
                if (!r.terms_.empty() && r.terms_.back().coeff.is_zero()) r.terms_.pop_back();
                r.terms_.push_back(std::move(t));
            }
        }
        if (!r.terms_.empty() && r.terms_.back().coeff.is_zero()) r.terms_.pop_back();
        return r;
    }

    std::complex<double> eval(const EvalPoint& p) const
    {
        ParamScalar::check_branch(p.beta, p.s);
        if (p.f == 0.0 && min_f_exponent() < 0) throw PoleError("negative power of f evaluated at f = 0");
        std::complex<double> sum = 0.0;
        for (const auto& t : terms_) {
            const auto m = unpack(t.key);
            const double mono = std::pow(p.x, m.k) * std::pow(p.f, m.i) * std::pow(p.fp, m.j);
            sum += t.coeff.eval(p.alpha, p.beta, p.s) * mono;
        }
        return sum;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            const auto m = unpack(t.key);
            if (!first) os << " + ";
            os << "(" << t.coeff.to_string() << ")";
            if (m.k) os << "*x^" << m.k;
            if (m.i) os << "*f^" << m.i;
            if (m.j) os << "*fp^" << m.j;
            first = false;
        }
        return os.str();
    }

private:
    std::vector<Term> terms_;
};

inline RingElem pow(const RingElem& base, int n)
{
    RingElem r = 1;
    for (int k = 0; k < n; ++k) r = r * base;
    return r;
}

/// Right-hand side of the Painleve-IV equation, the value of f''.
inline const RingElem& p4_rhs()
{
    static const RingElem rhs = [] {
        const auto a = ParamScalar::alpha();
        const auto b = ParamScalar::beta();
        RingElem r;
        r += RingElem::monomial(0, -1, 2, Rational(1, 2));
        r += RingElem::monomial(0, 3, 0, 6);
        r += RingElem::monomial(1, 2, 0, 8);
        r += RingElem::monomial(2, 1, 0, 2);
        r += RingElem::monomial(0, 1, 0, ParamScalar(-2) * (ParamScalar(1) + a));
        r += RingElem::monomial(0, -1, 0, b * Rational(1, 2));
        return r;
    }();
    return rhs;
}

/// d/dx with f'' rewritten by the Painleve-IV equation.
inline RingElem derive(const RingElem& e)
{
    const auto& rhs = p4_rhs();
    std::vector<RingElem::Term> out;
    out.reserve(e.size() * (2 + rhs.size()));
    for (const auto& t : e.terms()) {
        const auto m = RingElem::unpack(t.key);
        if (m.k != 0) out.push_back({RingElem::pack(m.k - 1, m.i, m.j), t.coeff * Rational(m.k)});
        if (m.i != 0) out.push_back({RingElem::pack(m.k, m.i - 1, m.j + 1), t.coeff * Rational(m.i)});
        if (m.j != 0) {
            const auto base = RingElem::pack(m.k, m.i, m.j - 1);
            const ParamScalar scaled = t.coeff * Rational(m.j);
            for (const auto& r : rhs.terms()) out.push_back({RingElem::mul_keys(base, r.key), scaled * r.coeff});
        }
    }
    return RingElem::from_terms(std::move(out));
}

inline RingElem derive(const RingElem& e, int times)
{
    RingElem r = e;
    for (int n = 0; n < times; ++n) r = derive(r);
    return r;
}

} // namespace p4pha
