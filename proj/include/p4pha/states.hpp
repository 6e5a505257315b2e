#pragma once
// Induced lowest/highest-weight chains. A state is e^{int W} * body with the
// body a Laurent polynomial in f over Q[alpha,beta,s][x, f'].

#include "opalg.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace p4pha {

enum class WeightType { lowest, highest };
enum class Gauge { W1, W3 };
enum class Ladder { c, cdag };

inline const char* to_string(WeightType w) { return w == WeightType::lowest ? "lowest" : "highest"; }
inline const char* to_string(Gauge g) { return g == Gauge::W1 ? "W1" : "W3"; }

inline Gauge gauge_for(WeightType w) { return w == WeightType::lowest ? Gauge::W3 : Gauge::W1; }
inline RingElem gauge_log_derivative(Gauge g) { return build_W(g == Gauge::W1 ? WFunction::W1 : WFunction::W3); }

struct StateExpr {
    Gauge gauge = Gauge::W3;
    RingElem body;
    int level = 0;
    WeightType weight_type = WeightType::lowest;
    friend bool operator==(const StateExpr&, const StateExpr&) = default;
};

/// H, c, c^+ together with their conjugates in both gauges, built once.
class LadderSystem {
public:
    explicit LadderSystem(const LadderOptions& opts = {})
        : h_(build_H()), ladders_(build_ladders(opts))
    {
        for (Gauge g : {Gauge::W1, Gauge::W3}) {
            const RingElem w = gauge_log_derivative(g);
            auto& cj = conj_[index(g)];
            cj.h = gauge_conjugate(h_, w);
            cj.c = gauge_conjugate(ladders_.c, w);
            cj.cdag = gauge_conjugate(ladders_.cdag, w);
        }
        const auto bracket = as_polynomial_in_H(commutator(ladders_.c, ladders_.cdag), h_);
        const auto a = lowering_shift(h_, ladders_.c);
        if (bracket && a) signature_ = PHASignature{*a, bracket->coeff(2), bracket->coeff(1), bracket->coeff(0)};
    }

    const DiffOp& h() const { return h_; }
    const Ladders& ladders() const { return ladders_; }
    const DiffOp& conj_h(Gauge g) const { return conj_[index(g)].h; }
    const DiffOp& conj_ladder(Gauge g, Ladder which) const
    {
        return which == Ladder::c ? conj_[index(g)].c : conj_[index(g)].cdag;
    }
    /// Signature derived from the realization; empty if the bracket is not quadratic in H.
    const std::optional<PHASignature>& signature() const { return signature_; }
    const PHASignature& require_signature() const
    {
        if (!signature_) throw InternalError("realized operators do not close into a quadratic algebra");
        return *signature_;
    }

private:
    struct Conjugated {
        DiffOp h, c, cdag;
    };
    static std::size_t index(Gauge g) { return g == Gauge::W1 ? 0 : 1; }

    DiffOp h_;
    Ladders ladders_;
    Conjugated conj_[2];
    std::optional<PHASignature> signature_;
};

/// Energy of the zero mode: 0 for e^{int W3}, alpha - s for e^{int W1}.
inline ParamScalar zero_mode_energy(WeightType w)
{
    return w == WeightType::lowest ? ParamScalar() : ParamScalar::alpha() - ParamScalar::s();
}

inline StateExpr zero_mode(WeightType w) { return {gauge_for(w), RingElem(1), 0, w}; }

/// Ladder that walks away from the zero mode (c^+ for lowest, c for highest).
inline Ladder chain_ladder(WeightType w) { return w == WeightType::lowest ? Ladder::cdag : Ladder::c; }

inline StateExpr act_ladder(const LadderSystem& sys, const StateExpr& st, Ladder which)
{
    StateExpr out = st;
    out.body = apply(sys.conj_ladder(st.gauge, which), st.body);
    out.level = st.level + (which == chain_ladder(st.weight_type) ? 1 : -1);
    if (out.level < 0) {
        // annihilated zero mode; keep the level pinned at 0 with an empty body
        out.level = 0;
    }
    return out;
}

inline std::vector<StateExpr> build_sequence(const LadderSystem& sys, WeightType w, int n_max,
                                             std::size_t max_terms = 1'000'000)
{
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    std::vector<StateExpr> seq{zero_mode(w)};
    for (int n = 1; n <= n_max; ++n) {
        StateExpr next = act_ladder(sys, seq.back(), chain_ladder(w));
        if (next.body.size() > max_terms) {
            throw ResourceError("state body exceeded " + std::to_string(max_terms) + " terms at level " +
                                    std::to_string(n),
                                n - 1);
        }
        seq.push_back(std::move(next));
    }
    return seq;
}

/// Eigenvalue attached to a chain state: E0 + 2n (lowest) or E0 - 2n (highest).
inline ParamScalar state_energy(const PHASignature& sig, const StateExpr& st)
{
    return ladder_energy(zero_mode_energy(st.weight_type), st.level, sig,
                         st.weight_type == WeightType::lowest ? LadderDirection::raise : LadderDirection::lower);
}

/// H~ body - E body; zero for a true eigenstate.
inline RingElem verify_eigen(const LadderSystem& sys, const StateExpr& st)
{
    const ParamScalar e = state_energy(sys.require_signature(), st);
    return apply(sys.conj_h(st.gauge), st.body) - e * st.body;
}

struct LatticePoint {
    int f_exp = 0;
    int fp_exp = 0;
    int max_x_degree = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Exponent support of f^n * body split by the parity of the f' exponent.
struct SupportLattice {
    int level = 0;
    std::vector<LatticePoint> q1; // even f' exponent
    std::vector<LatticePoint> q2; // odd f' exponent
    int min_f_exp = 0;
    int max_f_exp = 0;
    int max_fp_exp = 0;
    int max_x_degree = 0;
};

inline SupportLattice support_lattice(const StateExpr& st)
{
    SupportLattice lat;
    lat.level = st.level;
    std::map<std::pair<int, int>, int> xdeg;
    for (const auto& t : st.body.terms()) {
        const auto m = RingElem::unpack(t.key);
        auto key = std::make_pair(m.i + st.level, m.j);
        auto [it, inserted] = xdeg.emplace(key, m.k);
        if (!inserted) it->second = std::max(it->second, m.k);
    }
    bool first = true;
    for (const auto& [key, deg] : xdeg) {
        LatticePoint p{key.first, key.second, deg};
        (p.fp_exp % 2 == 0 ? lat.q1 : lat.q2).push_back(p);
        lat.min_f_exp = first ? p.f_exp : std::min(lat.min_f_exp, p.f_exp);
        lat.max_f_exp = first ? p.f_exp : std::max(lat.max_f_exp, p.f_exp);
        lat.max_fp_exp = std::max(lat.max_fp_exp, p.fp_exp);
        lat.max_x_degree = std::max(lat.max_x_degree, deg);
        first = false;
    }
    return lat;
}

/// The polynomial f^n * body, the form the states are usually displayed in.
inline RingElem cleared_body(const StateExpr& st) { return RingElem::f_pow(st.level) * st.body; }

} // namespace p4pha
