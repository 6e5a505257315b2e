#pragma once
// JSON round-tripping of exact objects and CSV export of tables.

#include "numeric.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>
#include <string>

namespace p4pha::io {

using nlohmann::json;

inline json to_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

inline Rational rational_from_json(const json& j)
{
    try {
        Rational q(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
        if (q.get_den() == 0) throw ParseError("zero denominator");
        q.canonicalize();
        return q;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad rational: ") + e.what());
    }
}

inline json to_json(const ParamScalar& c)
{
    json arr = json::array();
    for (const auto& t : c.terms()) {
        const auto e = ParamScalar::unpack(t.key);
        json item = to_json(t.coeff);
        item["da"] = e.da;
        item["db"] = e.db;
        item["ds"] = e.ds;
        arr.push_back(std::move(item));
    }
    return arr;
}

inline ParamScalar param_from_json(const json& j)
{
    if (!j.is_array()) throw ParseError("ParamScalar must be a JSON array");
    ParamScalar out;
    try {
        for (const auto& item : j) {
            const int da = item.at("da").get<int>();
            const int db = item.at("db").get<int>();
            const int ds = item.at("ds").get<int>();
            if (da < 0 || db < 0 || ds < 0 || ds > 1) throw ParseError("exponent out of range");
            out += ParamScalar::monomial(da, db, ds, rational_from_json(item));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad ParamScalar: ") + e.what());
    }
    return out;
}

inline json to_json(const RingElem& e)
{
    json terms = json::array();
    for (const auto& t : e.terms()) {
        const auto m = RingElem::unpack(t.key);
        terms.push_back({{"k", m.k}, {"i", m.i}, {"j", m.j}, {"coeff", to_json(t.coeff)}});
    }
    return {{"terms", std::move(terms)}};
}

inline RingElem ring_from_json(const json& j)
{
    RingElem out;
    try {
        for (const auto& t : j.at("terms")) {
            const int k = t.at("k").get<int>();
            const int jj = t.at("j").get<int>();
            if (k < 0 || jj < 0) throw ParseError("negative x or f' exponent");
            out += RingElem::monomial(k, t.at("i").get<int>(), jj, param_from_json(t.at("coeff")));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad RingElem: ") + e.what());
    }
    return out;
}

inline json to_json(const DiffOp& op)
{
    json arr = json::array();
    for (const auto& c : op.coeffs()) arr.push_back(to_json(c));
    return arr;
}

inline DiffOp diffop_from_json(const json& j)
{
    if (!j.is_array()) throw ParseError("DiffOp must be a JSON array");
    std::vector<RingElem> coeffs;
    for (const auto& c : j) coeffs.push_back(ring_from_json(c));
    return DiffOp(std::move(coeffs));
}

inline json to_json(const HPoly& p)
{
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

inline json to_json(const StateExpr& st)
{
    return {{"gauge", to_string(st.gauge)},
            {"level", st.level},
            {"weight_type", to_string(st.weight_type)},
            {"body", to_json(st.body)}};
}

inline StateExpr state_from_json(const json& j)
{
    StateExpr st;
    try {
        const auto gauge = j.at("gauge").get<std::string>();
        const auto weight = j.at("weight_type").get<std::string>();
        if (gauge != "W1" && gauge != "W3") throw ParseError("unknown gauge " + gauge);
        if (weight != "lowest" && weight != "highest") throw ParseError("unknown weight_type " + weight);
        st.gauge = gauge == "W1" ? Gauge::W1 : Gauge::W3;
        st.weight_type = weight == "lowest" ? WeightType::lowest : WeightType::highest;
        st.level = j.at("level").get<int>();
        if (st.level < 0) throw ParseError("negative level");
        if (st.gauge != gauge_for(st.weight_type)) throw ParseError("gauge does not match weight_type");
        st.body = ring_from_json(j.at("body"));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad state: ") + e.what());
    }
    return st;
}

inline json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json(text);
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

inline void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

// ---- CSV ----

inline void write_lattice_csv(std::ostream& os, const SupportLattice& lat)
{
    os << "i,fp_exp,parity,max_x_degree\n";
    for (const auto* set : {&lat.q1, &lat.q2})
        for (const auto& p : *set)
            os << p.f_exp << ',' << p.fp_exp << ',' << (p.fp_exp % 2 == 0 ? "even" : "odd") << ',' << p.max_x_degree << '\n';
}

inline std::string csv_quote(const std::string& s) { return '"' + s + '"'; }

inline void write_pha_table_csv(std::ostream& os, const PHASignature& sig, int n_max, const ParamScalar& e0,
                                bool raising)
{
    os << "n,coeff_H2,coeff_H1,coeff_H0,fn_at_E0\n";
    for (int n = 1; n <= n_max; ++n) {
        const HPoly p = raising ? r_poly(sig, n) : s_poly(sig, n);
        os << n << ',' << csv_quote(p.coeff(2).to_string()) << ',' << csv_quote(p.coeff(1).to_string()) << ','
           << csv_quote(p.coeff(0).to_string()) << ',' << csv_quote(p(e0).to_string()) << '\n';
    }
}

inline void write_complex(std::ostream& os, std::complex<double> v, bool complex_columns)
{
    os << v.real();
    if (complex_columns) os << ',' << v.imag();
}

inline void write_trajectory_csv(std::ostream& os, const numeric::P4Trajectory& tr,
                                 const std::vector<numeric::GridState>& states, bool complex_columns)
{
    os.precision(17);
    os << "x,f,fp,intW3";
    if (tr.int_w1) os << ",intW1";
    for (std::size_t n = 0; n < states.size(); ++n) {
        if (complex_columns) os << ",state_" << n << "_re,state_" << n << "_im";
        else os << ",state_" << n;
    }
    os << '\n';
    for (std::size_t k = 0; k < tr.size(); ++k) {
        os << tr.x[k] << ',' << tr.f[k] << ',' << tr.fp[k] << ',' << tr.int_w3[k];
        if (tr.int_w1) os << ',' << (*tr.int_w1)[k];
        for (const auto& st : states) {
            os << ',';
            write_complex(os, st.values[k], complex_columns);
        }
        os << '\n';
    }
}

struct ResidualRow {
    int n = 0;
    std::complex<double> energy;
    double residual = 0.0;
};

inline void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows)
{
    os.precision(12);
    os << "n,E_re,E_im,residual\n";
    for (const auto& r : rows) os << r.n << ',' << r.energy.real() << ',' << r.energy.imag() << ',' << r.residual << '\n';
}

} // namespace p4pha::io
