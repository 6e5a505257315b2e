#pragma once
// Validated run configuration for the numeric and multidimensional drivers.

#include "json_io.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace p4pha::config {

using io::json;

struct NumericRunConfig {
    numeric::TrajectoryConfig trajectory;
    int n_max = 2;
    WeightType kind = WeightType::lowest;
    std::optional<std::string> out;
};

struct MultidimConfig {
    std::vector<numeric::TrajectoryConfig> axes;
    int n_max = 2;
    std::optional<std::string> out;
};

namespace detail {

inline void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object()) throw ParseError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) throw ParseError("unknown key '" + key + "' in " + where);
    }
}

inline double number(const json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_number()) throw ParseError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

inline const std::set<std::string> kTrajectoryKeys{"alpha", "beta", "x0", "f0", "fp0", "span", "h", "f_min", "tol_ode"};

inline void read_trajectory(const json& j, numeric::TrajectoryConfig& t)
{
    if (j.contains("alpha")) t.alpha = number(j, "alpha");
    if (j.contains("beta")) t.beta = number(j, "beta");
    if (j.contains("x0")) t.x0 = number(j, "x0");
    if (j.contains("f0")) t.f0 = number(j, "f0");
    if (j.contains("fp0")) t.fp0 = number(j, "fp0");
    if (j.contains("h")) t.h = number(j, "h");
    if (j.contains("f_min")) t.f_min = number(j, "f_min");
    if (j.contains("tol_ode")) t.tol_ode = number(j, "tol_ode");
    if (j.contains("span")) {
        const auto& s = j.at("span");
        if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
            throw ParseError("'span' must be a two-element numeric array");
        t.span_lo = s[0].get<double>();
        t.span_hi = s[1].get<double>();
    }
}

inline int read_n_max(const json& j, int fallback)
{
    if (!j.contains("n_max")) return fallback;
    const auto& v = j.at("n_max");
    if (!v.is_number_integer() || v.get<int>() < 0) throw ParseError("'n_max' must be a nonnegative integer");
    return v.get<int>();
}

inline std::optional<std::string> read_out(const json& j)
{
    if (!j.contains("out")) return std::nullopt;
    if (!j.at("out").is_string()) throw ParseError("'out' must be a string");
    return j.at("out").get<std::string>();
}

} // namespace detail

/// Checks ranges that the integrator would otherwise reject later.
inline void validate(const numeric::TrajectoryConfig& t)
{
    if (!(t.h > 0.0)) throw ParseError("'h' must be positive");
    if (!(t.f_min > 0.0)) throw ParseError("'f_min' must be positive");
    if (!(t.tol_ode > 0.0)) throw ParseError("'tol_ode' must be positive");
    if (!(t.span_lo <= t.x0 && t.x0 <= t.span_hi)) throw ParseError("'x0' must lie inside 'span'");
}

inline WeightType parse_kind(const std::string& s)
{
    if (s == "lowest") return WeightType::lowest;
    if (s == "highest") return WeightType::highest;
    throw ParseError("'kind' must be lowest or highest");
}

inline NumericRunConfig numeric_from_json(const json& j)
{
    auto allowed = detail::kTrajectoryKeys;
    allowed.insert({"n_max", "kind", "out"});
    detail::reject_unknown(j, allowed, "numeric config");
    NumericRunConfig cfg;
    try {
        detail::read_trajectory(j, cfg.trajectory);
        cfg.n_max = detail::read_n_max(j, cfg.n_max);
        if (j.contains("kind")) {
            if (!j.at("kind").is_string()) throw ParseError("'kind' must be a string");
            cfg.kind = parse_kind(j.at("kind").get<std::string>());
        }
        cfg.out = detail::read_out(j);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    validate(cfg.trajectory);
    return cfg;
}

inline MultidimConfig multidim_from_json(const json& j)
{
    detail::reject_unknown(j, {"axes", "n_max", "out"}, "multidim config");
    MultidimConfig cfg;
    try {
        const auto& axes = j.at("axes");
        if (!axes.is_array()) throw ParseError("'axes' must be an array");
        for (const auto& a : axes) {
            detail::reject_unknown(a, detail::kTrajectoryKeys, "axis config");
            numeric::TrajectoryConfig t;
            detail::read_trajectory(a, t);
            validate(t);
            cfg.axes.push_back(t);
        }
        cfg.n_max = detail::read_n_max(j, cfg.n_max);
        cfg.out = detail::read_out(j);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    if (cfg.axes.size() < 2) throw ParseError("multidim needs at least two axes");
    return cfg;
}

inline json to_json(const numeric::TrajectoryConfig& t)
{
    return {{"alpha", t.alpha}, {"beta", t.beta}, {"x0", t.x0},   {"f0", t.f0},         {"fp0", t.fp0},
            {"span", {t.span_lo, t.span_hi}}, {"h", t.h}, {"f_min", t.f_min}, {"tol_ode", t.tol_ode}};
}

} // namespace p4pha::config
