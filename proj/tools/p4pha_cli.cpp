#include "p4pha/run_config.hpp"
#include "p4pha/verify.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace p4pha;
using io::json;

namespace {

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kUsage = 2, kResource = 3 };

const char* status_name(int code)
{
    switch (code) {
    case kOk: return "ok";
    case kCheckFailure: return "check_failure";
    case kUsage: return "usage_error";
    default: return "resource_error";
    }
}

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("p4pha");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("P4PHA_LOG_LEVEL")) spdlog::set_level(spdlog::level::from_str(env));
}

json signature_json(const PHASignature& s)
{
    return {{"a", s.a.to_string()}, {"b2", s.b2.to_string()}, {"b1", s.b1.to_string()}, {"b0", s.b0.to_string()}};
}

std::string fmt_complex(std::complex<double> z)
{
    std::ostringstream os;
    os.precision(10);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

// ---- verify-algebra ----

int cmd_verify_algebra(int n_max, bool flip_w3, json& summary)
{
    VerifyOptions opts;
    opts.n_max = n_max;
    opts.ladder.flip_w3_sign = flip_w3;
    if (flip_w3) spdlog::warn("W3 sign flipped: negative control, failures expected");
    spdlog::info("verifying identities up to n = {}", n_max);
    const AlgebraReport rep = verify_algebra(opts);

    json checks = json::array();
    for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty()) std::cout << "   [" << c.detail << "]";
        std::cout << '\n';
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    summary["checks"] = checks;
    summary["n_max"] = n_max;
    summary["flip_w3_sign"] = flip_w3;
    if (rep.signature) {
        const auto& s = *rep.signature;
        std::cout << "\nbracket [c,c+] = " << rep.bracket->to_string() << '\n';
        std::cout << "signature: a = " << s.a.to_string() << ", b2 = " << s.b2.to_string() << ", b1 = " << s.b1.to_string()
                  << ", b0 = " << s.b0.to_string() << '\n';
        std::cout << "orientation relative to printed F(H): " << (rep.orientation > 0 ? "+1" : rep.orientation < 0 ? "-1" : "none")
                  << '\n';
        summary["signature"] = signature_json(s);
        summary["orientation"] = rep.orientation;
    }
    const bool ok = rep.all_passed();
    std::cout << (ok ? "all identities hold\n" : "identity suite FAILED\n");
    return ok ? kOk : kCheckFailure;
}

// ---- build-states ----

int cmd_build_states(const std::string& kind_str, int n_max, const std::string& out, std::size_t max_terms, json& summary)
{
    const WeightType kind = config::parse_kind(kind_str);
    if (n_max < 0) throw ParseError("--n-max must be nonnegative");
    summary["kind"] = kind_str;
    summary["n_max"] = n_max;

    const LadderSystem sys;
    const auto& sig = sys.require_signature();
    std::vector<StateExpr> seq;
    try {
        seq = build_sequence(sys, kind, n_max, max_terms);
    } catch (const ResourceError& e) {
        summary["level_reached"] = e.level_reached();
        throw;
    }

    ensure_dir(out);
    const char* stem = kind == WeightType::lowest ? "psi" : "phi";
    std::ofstream log(fs::path(out) / "eigen_log.txt");
    json states = json::array();
    bool ok = true;
    for (const auto& st : seq) {
        const std::string tag = std::string(stem) + "_" + std::to_string(st.level);
        io::write_json_file((fs::path(out) / (tag + ".json")).string(), io::to_json(st));
        {
            std::ofstream csv(fs::path(out) / (tag + "_lattice.csv"));
            io::write_lattice_csv(csv, support_lattice(st));
        }
        const ParamScalar e = state_energy(sig, st);
        const RingElem res = verify_eigen(sys, st);
        const bool zero = res.is_zero();
        ok = ok && zero;
        const auto lat = support_lattice(st);
        std::ostringstream line;
        line << tag << ": E = " << e.to_string() << ", terms = " << st.body.size() << ", residual "
             << (zero ? "= 0" : "!= 0 (" + std::to_string(res.size()) + " terms)");
        std::cout << line.str() << '\n';
        log << line.str() << '\n';
        states.push_back({{"level", st.level},
                          {"energy", e.to_string()},
                          {"terms", st.body.size()},
                          {"eigen_residual_zero", zero},
                          {"max_f_exp", lat.max_f_exp},
                          {"max_fp_exp", lat.max_fp_exp},
                          {"max_x_degree", lat.max_x_degree}});
    }
    summary["states"] = states;
    return ok ? kOk : kCheckFailure;
}

// ---- numeric-run ----

struct NumericOverrides {
    std::optional<std::string> config;
    std::optional<double> alpha, beta, h, x0, f0, fp0;
    std::optional<std::string> kind;
    std::optional<int> n_max;
    double residual_tol = 1e-5;
};

int cmd_numeric_run(const NumericOverrides& ov, const std::string& out, json& summary)
{
    config::NumericRunConfig cfg;
    if (ov.config) cfg = config::numeric_from_json(io::read_json_file(*ov.config));
    auto& t = cfg.trajectory;
    if (ov.alpha) t.alpha = *ov.alpha;
    if (ov.beta) t.beta = *ov.beta;
    if (ov.h) t.h = *ov.h;
    if (ov.x0) t.x0 = *ov.x0;
    if (ov.f0) t.f0 = *ov.f0;
    if (ov.fp0) t.fp0 = *ov.fp0;
    if (ov.kind) cfg.kind = config::parse_kind(*ov.kind);
    if (ov.n_max) cfg.n_max = *ov.n_max;
    if (cfg.n_max < 0) throw ParseError("n_max must be nonnegative");
    config::validate(t);
    if (cfg.kind == WeightType::highest && !(t.beta < 0.0))
        throw GaugeError("highest-weight states live in the W1 gauge, which needs beta < 0");
    summary["config"] = config::to_json(t);
    summary["kind"] = to_string(cfg.kind);
    summary["n_max"] = cfg.n_max;

    const LadderSystem sys;
    const auto& sig = sys.require_signature();
    spdlog::info("integrating P4 on [{}, {}] with h = {}", t.span_lo, t.span_hi, t.h);
    const auto tr = numeric::integrate_p4(t);
    summary["retained"] = {tr.x.front(), tr.x.back()};
    if (tr.singular_lo) summary["truncated_lo"] = *tr.singular_lo;
    if (tr.singular_hi) summary["truncated_hi"] = *tr.singular_hi;
    summary["ode_residual_max"] = numeric::max_ode_residual(tr, 4);
    std::cout << "retained domain [" << tr.x.front() << ", " << tr.x.back() << "], " << tr.size() << " samples\n";

    const auto seq = build_sequence(sys, cfg.kind, cfg.n_max);
    std::vector<numeric::GridState> grid;
    std::vector<io::ResidualRow> rows;
    json table = json::array();
    bool ok = true;
    for (const auto& st : seq) {
        auto gs = numeric::eval_state(st, tr, sig);
        const double r = numeric::eigen_residual(gs, tr);
        auto shifted = gs;
        shifted.energy += 1.0;
        const double r_wrong = numeric::eigen_residual(shifted, tr);
        const double imag = numeric::imaginary_fraction(gs);
        const bool real_ok = cfg.kind == WeightType::highest || imag <= 1e-10;
        const bool pass = r <= ov.residual_tol && r_wrong >= 1e3 * r && real_ok;
        ok = ok && pass;
        std::cout << "n = " << st.level << "  E = " << fmt_complex(gs.energy) << "  residual = " << r
                  << "  residual(E+1) = " << r_wrong << (pass ? "" : "  FAIL") << '\n';
        rows.push_back({st.level, gs.energy, r});
        table.push_back({{"n", st.level},
                         {"E_re", gs.energy.real()},
                         {"E_im", gs.energy.imag()},
                         {"residual", r},
                         {"residual_wrong_energy", r_wrong},
                         {"imaginary_fraction", imag},
                         {"passed", pass}});
        grid.push_back(std::move(gs));
    }
    summary["residuals"] = table;
    summary["residual_tol"] = ov.residual_tol;

    ensure_dir(out);
    {
        std::ofstream csv(fs::path(out) / "trajectory.csv");
        io::write_trajectory_csv(csv, tr, grid, cfg.kind == WeightType::highest);
    }
    {
        std::ofstream csv(fs::path(out) / "residuals.csv");
        io::write_residual_csv(csv, rows);
    }
    return ok ? kOk : kCheckFailure;
}

// ---- multidim ----

int cmd_multidim(const std::optional<std::string>& config_path, int n_axes, std::optional<int> n_max_override,
                 const std::string& out, json& summary)
{
    config::MultidimConfig cfg;
    if (config_path) {
        cfg = config::multidim_from_json(io::read_json_file(*config_path));
    } else {
        if (n_axes < 2) throw ParseError("multidim needs at least two axes");
        cfg.axes.assign(static_cast<std::size_t>(n_axes), numeric::TrajectoryConfig{});
    }
    if (n_max_override) cfg.n_max = *n_max_override;
    if (cfg.n_max < 0) throw ParseError("n_max must be nonnegative");

    const LadderSystem sys;
    const auto rep = numeric::multidim_assemble(cfg.axes, cfg.n_max, sys);
    bool ok = rep.weight_check.all_commute();

    json axes = json::array();
    for (std::size_t i = 0; i < rep.axes.size(); ++i) {
        const auto& ax = rep.axes[i];
        const bool zm_ok = ax.zero_mode_annihilation <= 1e-6;
        ok = ok && zm_ok;
        std::cout << "axis " << i + 1 << ": alpha = " << ax.config.alpha << ", beta = " << ax.config.beta
                  << ", c psi_0 residual = " << ax.zero_mode_annihilation << (zm_ok ? "" : "  FAIL") << '\n';
        axes.push_back({{"config", config::to_json(ax.config)},
                        {"retained", {ax.trajectory.x.front(), ax.trajectory.x.back()}},
                        {"eigen_residuals", ax.residuals},
                        {"zero_mode_annihilation", ax.zero_mode_annihilation}});
    }
    json weights = json::array();
    for (const auto& e : rep.weight_check.entries) {
        std::cout << "I_" << e.i << e.j << ": weight " << e.weight.to_string() << (e.commutes ? "  commutes" : "  FAIL")
                  << '\n';
        weights.push_back({{"i", e.i}, {"j", e.j}, {"weight", e.weight.to_string()}, {"commutes", e.commutes}});
    }
    json energies = json::array();
    ensure_dir(out);
    std::ofstream csv(fs::path(out) / "energies.csv");
    for (std::size_t k = 0; k < rep.axes.size(); ++k) csv << 'n' << k + 1 << ',';
    csv << "E\n";
    for (const auto& row : rep.energies) {
        for (int n : row.levels) csv << n << ',';
        csv << '"' << row.energy.to_string() << "\"\n";
        energies.push_back({{"levels", row.levels}, {"energy", row.energy.to_string()}});
    }
    std::cout << rep.energies.size() << " product-state energies written\n";
    summary["n_axes"] = rep.axes.size();
    summary["n_max"] = cfg.n_max;
    summary["axes"] = axes;
    summary["weight_check"] = weights;
    summary["energies"] = energies;
    return ok ? kOk : kCheckFailure;
}

} // namespace

int main(int argc, char** argv)
{
    setup_logging();
    CLI::App app{"Polynomial Heisenberg algebra of the Painleve-IV Hamiltonian"};
    app.require_subcommand(1);
    std::string out = ".";

    auto* va = app.add_subcommand("verify-algebra", "exact identity suite");
    int va_n_max = 4;
    bool flip_w3 = false;
    va->add_option("--n-max", va_n_max, "largest n for the R_n/S_n checks")->check(CLI::Range(1, 12));
    va->add_flag("--flip-w3-sign", flip_w3, "debug: negate W3 (negative control)");
    va->add_option("--out", out, "directory for summary.json");

    auto* bs = app.add_subcommand("build-states", "build lowest- or highest-weight chains");
    std::string kind = "lowest";
    int bs_n_max = 2;
    std::size_t max_terms = 1'000'000;
    bs->add_option("--kind", kind)->check(CLI::IsMember({"lowest", "highest"}));
    bs->add_option("--n-max", bs_n_max)->check(CLI::NonNegativeNumber);
    bs->add_option("--out", out)->required();
    bs->add_option("--max-terms", max_terms, "term ceiling per state");

    auto* nr = app.add_subcommand("numeric-run", "integrate P4 and check eigen residuals");
    NumericOverrides ov;
    nr->add_option("--config", ov.config, "JSON config file");
    nr->add_option("--alpha", ov.alpha);
    nr->add_option("--beta", ov.beta);
    nr->add_option("--step", ov.h, "grid step h");
    nr->add_option("--x0", ov.x0);
    nr->add_option("--f0", ov.f0);
    nr->add_option("--fp0", ov.fp0);
    nr->add_option("--kind", ov.kind)->check(CLI::IsMember({"lowest", "highest"}));
    nr->add_option("--n-max", ov.n_max);
    nr->add_option("--residual-tol", ov.residual_tol, "pass threshold for every level");
    nr->add_option("--out", out);

    auto* md = app.add_subcommand("multidim", "N-dimensional separable model");
    std::optional<std::string> md_config;
    int n_axes = 2;
    std::optional<int> md_n_max;
    md->add_option("--config", md_config, "JSON config file");
    md->add_option("--axes", n_axes, "number of default axes when no config is given");
    md->add_option("--n-max", md_n_max);
    md->add_option("--out", out);

    json summary;
    int code = kOk;
    try {
        app.parse(argc, argv);
        if (*va) {
            summary["command"] = "verify-algebra";
            code = cmd_verify_algebra(va_n_max, flip_w3, summary);
        } else if (*bs) {
            summary["command"] = "build-states";
            code = cmd_build_states(kind, bs_n_max, out, max_terms, summary);
        } else if (*nr) {
            summary["command"] = "numeric-run";
            code = cmd_numeric_run(ov, out, summary);
        } else if (*md) {
            summary["command"] = "multidim";
            code = cmd_multidim(md_config, n_axes, md_n_max, out, summary);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        code = kUsage;
        summary["error"] = e.what();
    } catch (const ParseError& e) {
        code = kUsage;
        summary["error"] = e.what();
    } catch (const DomainError& e) {
        code = kUsage;
        summary["error"] = e.what();
    } catch (const GaugeError& e) {
        code = kUsage;
        summary["error"] = e.what();
    } catch (const IntegrationError& e) {
        code = kResource;
        summary["error"] = e.what();
        summary["x"] = e.x();
    } catch (const ResourceError& e) {
        code = kResource;
        summary["error"] = e.what();
        summary["level_reached"] = e.level_reached();
    } catch (const PoleError& e) {
        code = kResource;
        summary["error"] = e.what();
    } catch (const std::exception& e) {
        code = kCheckFailure;
        summary["error"] = e.what();
    }
    if (summary.contains("error")) spdlog::error("{}", summary["error"].get<std::string>());
    summary["exit_code"] = code;
    summary["status"] = status_name(code);
    try {
        ensure_dir(out);
        io::write_json_file((fs::path(out) / "summary.json").string(), summary);
    } catch (const std::exception& e) {
        spdlog::error("could not write summary: {}", e.what());
    }
    return code;
}
