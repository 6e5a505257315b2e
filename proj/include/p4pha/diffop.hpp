#pragma once
// Linear differential operators sum_d e_d(x, f, f') d^d/dx^d over the P4 ring.

#include "ring.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace p4pha {

class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(std::vector<RingElem> coeffs) : c_(std::move(coeffs)) { trim(); }

    static DiffOp identity() { return DiffOp({RingElem(1)}); }
    static DiffOp d() { return DiffOp({RingElem(), RingElem(1)}); }
    /// Multiplication by a ring element.
    static DiffOp mul(const RingElem& e) { return DiffOp({e}); }
    /// d + w, the building block of every first-order factor.
    static DiffOp d_plus(const RingElem& w, int sign_of_d = 1) { return DiffOp({w, RingElem(sign_of_d)}); }

    /// Order, -1 for the zero operator.
    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::span<const RingElem> coeffs() const { return c_; }
    const RingElem& coeff(int d) const
    {
        static const RingElem zero;
        return (d >= 0 && d < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(d)] : zero;
    }
    bool has_s() const
    {
        for (const auto& e : c_)
            if (e.has_s()) return true;
        return false;
    }
    std::size_t term_count() const
    {
        std::size_t n = 0;
        for (const auto& e : c_) n += e.size();
        return n;
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b)
    {
        std::vector<RingElem> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t d = 0; d < r.size(); ++d) r[d] = a.coeff(static_cast<int>(d)) + b.coeff(static_cast<int>(d));
        return DiffOp(std::move(r));
    }
    friend DiffOp operator-(const DiffOp& a)
    {
        std::vector<RingElem> r;
        r.reserve(a.c_.size());
        for (const auto& e : a.c_) r.push_back(-e);
        return DiffOp(std::move(r));
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }
    /// Left multiplication by a ring element (composition with an order-0 operator on the left).
    friend DiffOp operator*(const RingElem& e, const DiffOp& a)
    {
        std::vector<RingElem> r;
        r.reserve(a.c_.size());
        for (const auto& c : a.c_) r.push_back(e * c);
        return DiffOp(std::move(r));
    }
    friend DiffOp operator*(const ParamScalar& s, const DiffOp& a) { return RingElem(s) * a; }
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.c_ == b.c_; }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RingElem> c_;
};

/// A o B via d o g = g d + g'.
inline DiffOp compose(const DiffOp& a, const DiffOp& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    const int da = a.order();
    const int db = b.order();
    // derivs[e][k] = k-th derivative of b's order-e coefficient
    std::vector<std::vector<RingElem>> derivs(static_cast<std::size_t>(db) + 1);
    for (int e = 0; e <= db; ++e) {
        auto& row = derivs[static_cast<std::size_t>(e)];
        row.push_back(b.coeff(e));
        for (int k = 1; k <= da; ++k) row.push_back(row.back().is_zero() ? RingElem() : derive(row.back()));
    }
    std::vector<std::vector<RingElem::Term>> acc(static_cast<std::size_t>(da + db) + 1);
    std::vector<Rational> binom(static_cast<std::size_t>(da) + 1);
    for (int d = 0; d <= da; ++d) {
        const RingElem& ad = a.coeff(d);
        if (ad.is_zero()) continue;
        binom[0] = 1;
        for (int k = 1; k <= d; ++k) binom[static_cast<std::size_t>(k)] = binom[static_cast<std::size_t>(k) - 1] * (d - k + 1) / k;
        for (int e = 0; e <= db; ++e) {
            for (int k = 0; k <= d; ++k) {
                const RingElem& bk = derivs[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)];
                if (bk.is_zero()) continue;
                auto& out = acc[static_cast<std::size_t>(d - k + e)];
                const Rational& bc = binom[static_cast<std::size_t>(k)];
                for (const auto& ta : ad.terms()) {
                    const ParamScalar ca = ta.coeff * bc;
                    for (const auto& tb : bk.terms()) out.push_back({RingElem::mul_keys(ta.key, tb.key), ca * tb.coeff});
                }
            }
        }
    }
    std::vector<RingElem> coeffs;
    coeffs.reserve(acc.size());
    for (auto& terms : acc) coeffs.push_back(RingElem::from_terms(std::move(terms)));
    return DiffOp(std::move(coeffs));
}

inline DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

inline DiffOp power(const DiffOp& a, int n)
{
    DiffOp r = DiffOp::identity();
    for (int k = 0; k < n; ++k) r = compose(a, r);
    return r;
}

/// sum_d e_d * derive^d(e).
inline RingElem apply(const DiffOp& a, const RingElem& e)
{
    RingElem out;
    RingElem dk = e;
    for (int d = 0; d <= a.order(); ++d) {
        if (d > 0) dk = derive(dk);
        if (dk.is_zero()) break;
        if (!a.coeff(d).is_zero()) out += a.coeff(d) * dk;
    }
    return out;
}

/// The operator A~ with A(e^{int w} p) = e^{int w} A~(p): every d becomes d + w.
inline DiffOp gauge_conjugate(const DiffOp& a, const RingElem& w)
{
    const DiffOp shift = DiffOp::d_plus(w);
    DiffOp result;
    DiffOp shifted_power = DiffOp::identity();
    for (int d = 0; d <= a.order(); ++d) {
        if (d > 0) shifted_power = compose(shift, shifted_power);
        if (!a.coeff(d).is_zero()) result = result + a.coeff(d) * shifted_power;
    }
    return result;
}

} // namespace p4pha
