#pragma once
// Exact identity suite for the realized algebra.

#include "opalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace p4pha {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct AlgebraReport {
    std::vector<CheckResult> checks;
    std::optional<PHASignature> signature;
    std::optional<HPoly> bracket;   // [c, c^+]
    std::optional<HPoly> cdag_c;
    std::optional<HPoly> c_cdag;
    /// +1 if [c, c^+] equals the printed F(H), -1 if it equals -F(H), 0 otherwise.
    int orientation = 0;

    bool all_passed() const
    {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }
    const CheckResult* find(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct VerifyOptions {
    int n_max = 4;
    LadderOptions ladder;
};

inline AlgebraReport verify_algebra(const VerifyOptions& opts = {})
{
    AlgebraReport rep;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };

    const DiffOp h = build_H();
    Ladders lad;
    try {
        lad = build_ladders(opts.ladder);
    } catch (const InternalError& e) {
        add("ladders free of s", false, e.what());
        return rep;
    }
    add("ladders free of s", true);

    const bool lowers = add("[H,c] = -2c", commutator(h, lad.c) == ParamScalar(-2) * lad.c);
    const bool raises = add("[H,c+] = 2c+", commutator(h, lad.cdag) == ParamScalar(2) * lad.cdag);

    rep.bracket = as_polynomial_in_H(commutator(lad.c, lad.cdag), h);
    const bool quadratic = rep.bracket && rep.bracket->degree() == 2;
    add("[c,c+] quadratic in H", quadratic, rep.bracket ? rep.bracket->to_string() : "not a polynomial in H");
    if (!(lowers && raises && quadratic)) return rep;

    const PHASignature sig{2, rep.bracket->coeff(2), rep.bracket->coeff(1), rep.bracket->coeff(0)};
    rep.signature = sig;
    const HPoly printed = f_poly(p4_printed_signature());
    rep.orientation = *rep.bracket == printed ? 1 : (*rep.bracket == -printed ? -1 : 0);
    add("[c,c+] = +-(printed F)", rep.orientation != 0, rep.orientation == 1 ? "same sign" : "opposite sign");

    rep.cdag_c = as_polynomial_in_H(compose(lad.cdag, lad.c), h);
    rep.c_cdag = as_polynomial_in_H(compose(lad.c, lad.cdag), h);
    const bool cubics = rep.cdag_c && rep.c_cdag && rep.cdag_c->degree() == 3 && rep.c_cdag->degree() == 3;
    add("c+c and cc+ cubic in H", cubics,
        cubics ? "c+c = " + rep.cdag_c->to_string() + "; cc+ = " + rep.c_cdag->to_string() : "");
    if (cubics) {
        add("p_cc+(E) = p_c+c(E+2)", rep.cdag_c->shifted(sig.a) == *rep.c_cdag);
        add("p_c+c(0) = 0", rep.cdag_c->coeff(0).is_zero());
        const HPoly m = casimir_m(sig);
        add("M(H) - M(H-2) = F(H)", m - m.shifted(-sig.a) == f_poly(sig));
        const HPoly k1 = *rep.c_cdag - m;
        const HPoly k2 = *rep.cdag_c - m.shifted(-sig.a);
        add("cc+ = M(H) + k, c+c = M(H-2) + k", k1.degree() <= 0 && k1 == k2,
            "k = " + k1.coeff(0).to_string());
    }

    DiffOp cdag_pow = DiffOp::identity(); // (c+)^(n-1)
    DiffOp c_pow = DiffOp::identity();
    for (int n = 1; n <= opts.n_max; ++n) {
        const DiffOp cdag_n = compose(lad.cdag, cdag_pow);
        const DiffOp c_n = compose(lad.c, c_pow);
        const DiffOp r_rhs = compose(cdag_pow, to_operator(r_poly(sig, n), h));
        const DiffOp s_rhs = compose(c_pow, to_operator(s_poly(sig, n), h));
        add("[c,(c+)^" + std::to_string(n) + "] = (c+)^" + std::to_string(n - 1) + " R_" + std::to_string(n) + "(H)",
            commutator(lad.c, cdag_n) == r_rhs);
        add("[c+,c^" + std::to_string(n) + "] = c^" + std::to_string(n - 1) + " S_" + std::to_string(n) + "(H)",
            commutator(lad.cdag, c_n) == s_rhs);
        cdag_pow = cdag_n;
        c_pow = c_n;
    }
    return rep;
}

} // namespace p4pha
