#pragma once
// Exact arithmetic in Q[alpha, beta, s] / (s^2 + beta).
//
// s stands for sqrt(-beta). It is kept as a formal symbol for either sign of
// beta; every product re-applies s^2 -> -beta so the s-degree of a stored
// term is 0 or 1.

#include "errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace p4pha {

using Rational = mpq_class;

/// Exponents (alpha^da beta^db s^ds) of one parameter monomial.
struct ParamExponent {
    int da = 0;
    int db = 0;
    int ds = 0;
    friend bool operator==(const ParamExponent&, const ParamExponent&) = default;
};

class ParamScalar {
public:
    struct Term {
        std::uint32_t key;
        Rational coeff;
    };

    ParamScalar() = default;
    ParamScalar(int value) : ParamScalar(Rational(value)) {}  // NOLINT(implicit)
    ParamScalar(long value) : ParamScalar(Rational(value)) {} // NOLINT(implicit)
    ParamScalar(const Rational& value)                        // NOLINT(implicit)
    {
        if (sgn(value) != 0) terms_.push_back({0, canonical(value)});
    }

    static ParamScalar monomial(int da, int db, int ds, const Rational& c)
    {
        ParamScalar r;
        if (sgn(c) == 0) return r;
        // s^ds with ds >= 2 folds into powers of -beta
        Rational coeff = canonical(c);
        db += ds / 2;
        if ((ds / 2) % 2 == 1) coeff = -coeff;
        ds %= 2;
        r.terms_.push_back({pack(da, db, ds), coeff});
        return r;
    }
    static ParamScalar alpha() { return monomial(1, 0, 0, 1); }
    static ParamScalar beta() { return monomial(0, 1, 0, 1); }
    static ParamScalar s() { return monomial(0, 0, 1, 1); }
    static ParamScalar rational(long num, long den) { return ParamScalar(Rational(num, den)); }

    static constexpr std::uint32_t pack(int da, int db, int ds)
    {
        return (static_cast<std::uint32_t>(da) << 20) | (static_cast<std::uint32_t>(db) << 1) |
               static_cast<std::uint32_t>(ds);
    }
    static constexpr ParamExponent unpack(std::uint32_t key)
    {
        return {static_cast<int>(key >> 20), static_cast<int>((key >> 1) & 0x7FFFFu),
                static_cast<int>(key & 1u)};
    }

    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0); }
    bool has_s() const
    {
        return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return (t.key & 1u) != 0; });
    }

    /// Coefficient of alpha^da beta^db s^ds (zero when absent).
    Rational coeff(int da, int db, int ds) const
    {
        const auto key = pack(da, db, ds);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, std::uint32_t k) { return t.key < k; });
        return (it != terms_.end() && it->key == key) ? it->coeff : Rational(0);
    }
    Rational constant_term() const { return coeff(0, 0, 0); }

    ParamScalar operator-() const
    {
        ParamScalar r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    ParamScalar& operator+=(const ParamScalar& o)
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
                Rational c = a->coeff + b->coeff;
                if (sgn(c) != 0) out.push_back({a->key, std::move(c)});
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
        return *this;
    }
    ParamScalar& operator-=(const ParamScalar& o) { return *this += -o; }

    ParamScalar& operator*=(const Rational& c)
    {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        const Rational k = canonical(c);
        for (auto& t : terms_) t.coeff *= k;
        return *this;
    }

    friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
    friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
    friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_rational()) {
            ParamScalar r = b;
            return r *= a.terms_[0].coeff;
        }
        if (b.is_rational()) {
            ParamScalar r = a;
            return r *= b.terms_[0].coeff;
        }
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                std::uint32_t key = ta.key + tb.key;
                Rational c = ta.coeff * tb.coeff;
                // s*s carries out of the ds bit into the beta field, landing on
                // (db + 1, ds = 0); the sign of s^2 = -beta is applied here.
                if ((ta.key & 1u) && (tb.key & 1u)) c = -c;
                prod.push_back({key, std::move(c)});
            }
        }
        ParamScalar r;
        r.terms_ = merge_sorted(std::move(prod));
        return r;
    }
    friend ParamScalar operator*(ParamScalar a, const Rational& c) { return a *= c; }
    friend ParamScalar operator*(const Rational& c, ParamScalar a) { return a *= c; }

    friend bool operator==(const ParamScalar& a, const ParamScalar& b)
    {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t n = 0; n < a.terms_.size(); ++n) {
            if (a.terms_[n].key != b.terms_[n].key || a.terms_[n].coeff != b.terms_[n].coeff) return false;
        }
        return true;
    }

    /// Numeric value; s_branch must satisfy s_branch^2 = -beta.
    std::complex<double> eval(double alpha_val, double beta_val, std::complex<double> s_branch) const
    {
        check_branch(beta_val, s_branch);
        std::complex<double> sum = 0.0;
        for (const auto& t : terms_) {
            const auto e = unpack(t.key);
            std::complex<double> v = t.coeff.get_d();
            v *= std::pow(alpha_val, e.da) * std::pow(beta_val, e.db);
            if (e.ds == 1) v *= s_branch;
            sum += v;
        }
        return sum;
    }

    static void check_branch(double beta_val, std::complex<double> s_branch)
    {
        const double mismatch = std::abs(s_branch * s_branch + beta_val);
        if (mismatch > 1e-12 * std::max(1.0, std::abs(beta_val))) {
            std::ostringstream msg;
            msg << "s branch " << s_branch << " does not square to -beta = " << -beta_val;
            throw BranchMismatchError(msg.str());
        }
    }

    /// Canonical rendering such as "2*alpha^2 - 1/2*beta*s + 3".
    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto e = unpack(it->key);
            Rational c = it->coeff;
            if (first) {
                if (sgn(c) < 0) os << "-";
            } else {
                os << (sgn(c) < 0 ? " - " : " + ");
            }
            c = abs(c);
            std::string vars;
            auto append = [&vars](const char* name, int p) {
                if (p == 0) return;
                if (!vars.empty()) vars += "*";
                vars += name;
                if (p > 1) vars += "^" + std::to_string(p);
            };
            append("alpha", e.da);
            append("beta", e.db);
            append("s", e.ds);
            if (vars.empty()) {
                os << c.get_str();
            } else if (c == 1) {
                os << vars;
            } else {
                os << c.get_str() << "*" << vars;
            }
            first = false;
        }
        return os.str();
    }

    /// Builds from arbitrary (key, coeff) pairs; merges duplicates, drops zeros.
    static ParamScalar from_terms(std::vector<Term> terms)
    {
        for (auto& t : terms) t.coeff.canonicalize();
        ParamScalar r;
        r.terms_ = merge_sorted(std::move(terms));
        return r;
    }

private:
    static Rational canonical(const Rational& q)
    {
        Rational r = q;
        r.canonicalize();
        return r;
    }
    static std::vector<Term> merge_sorted(std::vector<Term> v)
    {
        std::sort(v.begin(), v.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
        std::vector<Term> out;
        out.reserve(v.size());
        for (auto& t : v) {
            if (!out.empty() && out.back().key == t.key) {
                out.back().coeff += t.coeff;
            } else {
                if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
        return out;
    }

    std::vector<Term> terms_;
};

inline ParamScalar pow(const ParamScalar& base, int n)
{
    ParamScalar r = 1;
    for (int k = 0; k < n; ++k) r = r * base;
    return r;
}

} // namespace p4pha
