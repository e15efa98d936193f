// Batch front end: expression parsing, command dispatch, seeded
// verification runs, and report emission.
//
// Exit codes: 0 all checks passed, 1 a verification failed (witness in
// report.json), 2 usage error, 3 numeric non-convergence.

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>

#include <CLI11.hpp>

#include "dqcalc/axioms.hpp"
#include "dqcalc/expr.hpp"
#include "dqcalc/numdiff.hpp"
#include "dqcalc/riemann.hpp"
#include "dqcalc/ring_suite.hpp"
#include "dqcalc/sharplab.hpp"

namespace fs = std::filesystem;
using namespace dqcalc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConverge = 3;

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        os << content;
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

/// report.json is byte-deterministic; wall-clock data goes to a sidecar
/// so repeated runs with the same seed compare equal.
void emit_report(const fs::path& outdir, const nlohmann::json& body) {
    fs::create_directories(outdir);
    nlohmann::json j = body;
    j["schema"] = 1;
    write_atomic(outdir / "report.json", j.dump(2) + "\n");
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    write_atomic(outdir / "report.meta.txt", std::string("written_utc=") + buf + "\n");
}

nlohmann::json reports_json(const std::vector<VerificationReport>& reps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reps) arr.push_back(r.to_json());
    return arr;
}

Vec parse_point(const std::vector<double>& v, int arity, const char* what) {
    if (static_cast<int>(v.size()) != arity)
        throw CLI::ValidationError(std::string(what) + ": expected " +
                                   std::to_string(arity) + " coordinates");
    return v;
}

int run_difq(const std::string& expr_text, const std::vector<double>& at,
             const std::vector<double>& dir, double t, const fs::path& outdir,
             bool have_out) {
    ParsedExpr e = parse_expr(expr_text);
    Vec x = parse_point(at, e.arity, "--at");
    Vec u = parse_point(dir, e.arity, "--dir");

    Vec val = bgn_difq_num(e.smooth, x, u, t);
    for (std::size_t i = 0; i < val.size(); ++i)
        std::printf("%s%.10g", i ? " " : "", val[i]);
    std::printf("\n");
    if (have_out) {
        nlohmann::json j;
        j["command"] = "difq";
        j["inputs"] = {{"expr", e.canonical}, {"at", at}, {"dir", dir}, {"t", t}};
        j["value"] = val;
        emit_report(outdir, j);
    }
    return kExitOk;
}

int run_var(const std::string& expr_text, const std::vector<double>& at,
            const std::vector<double>& dir, const fs::path& outdir, bool have_out) {
    ParsedExpr e = parse_expr(expr_text);
    Vec x = parse_point(at, e.arity, "--at");
    Vec u = parse_point(dir, e.arity, "--dir");
    auto [val, err] = seip_var(e.smooth, x, u);
    for (std::size_t i = 0; i < val.size(); ++i)
        std::printf("%s%.10g", i ? " " : "", val[i]);
    std::printf("\n");
    if (have_out) {
        nlohmann::json j;
        j["command"] = "var";
        j["inputs"] = {{"expr", e.canonical}, {"at", at}, {"dir", dir}};
        j["value"] = val;
        j["error_estimate"] = err;
        emit_report(outdir, j);
    }
    return kExitOk;
}

int run_integrate(const std::string& expr_text, double a, double b, double tol,
                  const fs::path& outdir, bool have_out) {
    ParsedExpr e = parse_expr(expr_text);
    if (e.arity != 1) throw CLI::ValidationError("integrate: expression must use x1 only");
    Curve c = Curve::scalar(a, b, [&](double s) { return e.smooth(Vec{s})[0]; });
    IntegrateResult r = integrate(c, a, b, tol);
    std::printf("%.12g\n", r.value[0]);
    if (have_out) {
        nlohmann::json j;
        j["command"] = "integrate";
        j["inputs"] = {{"expr", e.canonical}, {"a", a}, {"b", b}, {"tol", tol}};
        j["value"] = r.value[0];
        j["error_estimate"] = r.error_estimate;
        j["cells"] = r.cells;
        emit_report(outdir, j);

        std::string csv = "cells";
        csv += ",value,diff\n";
        for (const auto& row : r.table) {
            char line[128];
            std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n",
                          static_cast<std::size_t>(row[0]), row[1], row.back());
            csv += line;
        }
        write_atomic(outdir / "convergence.csv", csv);
    }
    return kExitOk;
}

int run_verify(const std::string& target, const std::string& ring_name, int trials,
               std::uint64_t seed, const fs::path& outdir, bool have_out) {
    RingId rid = RingId::parse(ring_name);
    std::vector<VerificationReport> reps;

    if (target == "rings") {
        reps.push_back(ring_axiom_suite(rid, trials, seed));
    } else if (target == "axioms") {
        auto inst = FnClassInstance::polynomial_class(rid, 3);
        reps.push_back(check_productive(inst, trials, seed));
        reps.push_back(check_bgn_postulates(inst, trials, seed));
        std::mt19937_64 rng(derive_seed(seed, 23));
        PolyMap f = random_poly_map(rid, 2, 1, 3, 4, rng);
        reps.push_back(prop9_uniqueness(f, seed));
        reps.push_back(prop10_recursion(f, 1));
    } else if (target == "calculus") {
        reps.push_back(calculus_rule_suite(trials, seed));
    } else if (target == "identities") {
        VerificationReport rep;
        rep.suite = "integral_identities";
        rep.seed = seed;
        rep.trials = trials;
        SmoothFn e = SmoothFn::scalar([](double x) { return std::exp(x); });
        SmoothFn sq = SmoothFn::scalar([](double x) { return x * x; });
        double r1 = thm52_identity_residual(e, {0.0}, {1.0}, 0.5);
        rep.add("quotient_integral_identity_exp", r1 < 1e-6, r1);
        double r2 = thm52_identity_residual(sq, {1.0}, {2.0}, 0.0);
        rep.add("quotient_integral_identity_t0", r2 < 1e-6, r2);
        double r3 = lemma50_variation_residual(sq, 0, {1.0}, {1.0}, {1.0}, {1.0});
        rep.add("integral_op_variation_square", r3 < 1e-5, r3);
        double r4 = under_integral_deriv_check(
            [](double s, double t) { return std::exp(s * t); }, 0.5, 1e-9);
        rep.add("derivative_under_integral_exp", r4 < 1e-6, r4);
        reps.push_back(rep);
    } else {
        throw CLI::ValidationError("verify: unknown target '" + target + "'");
    }

    bool ok = true;
    for (const auto& r : reps) {
        ok = ok && r.all_passed();
        std::printf("%-28s %s (%d checks, %d failures)\n", r.suite.c_str(),
                    r.all_passed() ? "pass" : "FAIL", static_cast<int>(r.checks.size()),
                    r.failure_count());
    }
    if (have_out) {
        nlohmann::json j;
        j["command"] = "verify";
        j["inputs"] = {{"target", target}, {"ring", rid.name()}, {"trials", trials}};
        j["seed"] = seed;
        j["reports"] = reports_json(reps);
        emit_report(outdir, j);
    }
    return ok ? kExitOk : kExitVerifyFail;
}

int run_demo_sharp(SharpConfig cfg, const fs::path& outdir) {
    DemoResult demo = noninjectivity_demo(cfg);
    fs::create_directories(outdir);
    write_atomic(outdir / "u0.dat", demo.u0.to_dat());
    write_atomic(outdir / "u1.dat", demo.u1.to_dat());
    write_atomic(outdir / "h_u1.dat", demo.h_u1.to_dat());

    nlohmann::json j;
    j["command"] = "demo sharp";
    j["inputs"] = {{"eps", cfg.eps},       {"eta0", cfg.eta0},
                   {"xi", cfg.xi},         {"grid_n", cfg.grid_n},
                   {"ode_steps", cfg.ode_steps}, {"quad_nodes", cfg.quad_nodes}};
    j["coefficient_at_eps"] = demo.A_eps;
    j["sup_dist_inputs"] = demo.sup_dist_u;
    j["sup_dist_images"] = demo.sup_dist_h;
    j["reports"] = reports_json({demo.report});
    emit_report(outdir, j);

    std::printf("A(eps) = %.6f  ||u1-u0|| = %.6f  ||h(u1)-u0|| = %.3e  %s\n", demo.A_eps,
                demo.sup_dist_u, demo.sup_dist_h,
                demo.report.all_passed() ? "pass" : "FAIL");
    return demo.report.all_passed() ? kExitOk : kExitVerifyFail;
}

int run_demo_fixedpoint(std::size_t cells, double tol, const fs::path& outdir,
                        bool have_out) {
    SmoothFn phi(2, 1, [](const Vec& p) { return Vec{1.0 + 0.5 * p[0] * std::sin(p[1])}; });
    FixedPointResult fp = seip_norm_fixed_point(phi, 0.0, 1.0, cells, tol);
    std::printf("x(1) = %.6f  iterations = %d  Lipschitz = %.4f  %s\n",
                fp.fixed_point[fp.fixed_point.n_nodes() - 1], fp.iterations,
                fp.lipschitz_estimate, fp.report.all_passed() ? "pass" : "FAIL");
    if (have_out) {
        fs::create_directories(outdir);
        write_atomic(outdir / "fixed_point.dat", fp.fixed_point.to_dat());
        nlohmann::json j;
        j["command"] = "demo fixedpoint";
        j["inputs"] = {{"cells", cells}, {"tol", tol}};
        j["iterations"] = fp.iterations;
        j["final_change"] = fp.final_change;
        j["lipschitz_estimate"] = fp.lipschitz_estimate;
        j["endpoint"] = fp.fixed_point[fp.fixed_point.n_nodes() - 1];
        j["reports"] = reports_json({fp.report});
        emit_report(outdir, j);
    }
    return fp.report.all_passed() ? kExitOk : kExitVerifyFail;
}

}  // namespace

/// Expands `--config FILE` (plain key=value lines) into long options
/// inserted right after the subcommand tokens, so explicit flags win
/// under take-last parsing.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw CLI::ValidationError("--config needs a file path");
    std::ifstream is(*(it + 1));
    if (!is) throw CLI::ValidationError("cannot read config file " + *(it + 1));
    args.erase(it, it + 2);

    std::vector<std::string> opts;
    std::string ln;
    while (std::getline(is, ln)) {
        if (ln.empty() || ln[0] == '#') continue;
        auto eq = ln.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config line is not key=value: " + ln);
        opts.push_back("--" + ln.substr(0, eq) + "=" + ln.substr(eq + 1));
    }
    auto at = args.begin();
    while (at != args.end() && !at->empty() && (*at)[0] != '-') ++at;
    args.insert(at, opts.begin(), opts.end());
    return args;
}

int main(int argc, char** argv) {
    CLI::App app{"difference-quotient calculus workbench"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string expr_text, ring_name = "Q", verify_target;
    std::vector<double> at, dir;
    double t = 0.0, qa = 0.0, qb = 1.0, qtol = 1e-9;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string outdir_str;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "seed for all derived random streams");
        sub->add_option("--out", outdir_str, "output directory for reports and data");
    };

    CLI::App* difq = app.add_subcommand("difq", "difference quotient of an expression");
    difq->add_option("--expr", expr_text, "expression in x1..x9")->required();
    difq->add_option("--at", at, "base point, comma separated")->required()->delimiter(',');
    difq->add_option("--dir", dir, "direction, comma separated")->required()->delimiter(',');
    difq->add_option("--t", t, "quotient parameter; 0 takes the limit");
    add_common(difq);

    CLI::App* var = app.add_subcommand("var", "first-order variation of an expression");
    var->add_option("--expr", expr_text, "expression in x1..x9")->required();
    var->add_option("--at", at, "base point")->required()->delimiter(',');
    var->add_option("--dir", dir, "direction")->required()->delimiter(',');
    add_common(var);

    CLI::App* integ = app.add_subcommand("integrate", "Riemann integral of a scalar curve");
    integ->add_option("--expr", expr_text, "integrand in x1")->required();
    integ->add_option("--a", qa, "lower limit");
    integ->add_option("--b", qb, "upper limit");
    integ->add_option("--tol", qtol, "stopping tolerance");
    add_common(integ);

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("target", verify_target, "rings | axioms | calculus | identities")
        ->required();
    verify->add_option("--ring", ring_name, "Q | Fp:<p> | F64 | Dual");
    verify->add_option("--trials", trials, "seeded trials");
    add_common(verify);

    CLI::App* demo = app.add_subcommand("demo", "end-to-end demonstrations");
    demo->require_subcommand(1);
    SharpConfig scfg = SharpConfig::exp_default();
    CLI::App* sharp = demo->add_subcommand("sharp", "non-injectivity of h = id + (rho)'");
    sharp->add_option("--eps", scfg.eps, "target constant");
    sharp->add_option("--eta0", scfg.eta0, "initial value of the second preimage");
    sharp->add_option("--xi", scfg.xi, "base point of phi");
    sharp->add_option("--grid", scfg.grid_n, "output grid cells");
    sharp->add_option("--ode-steps", scfg.ode_steps, "fixed RK4 steps");
    sharp->add_option("--quad-nodes", scfg.quad_nodes, "Simpson nodes per axis, odd");
    sharp->add_option("--tol", scfg.tol_demo, "demo tolerance");
    add_common(sharp);
    std::size_t fp_cells = 256;
    double fp_tol = 1e-12;
    CLI::App* fixed = demo->add_subcommand("fixedpoint", "contraction fixed point x = 1 + (s/2) sin x");
    fixed->add_option("--cells", fp_cells, "grid cells");
    fixed->add_option("--tol", fp_tol, "iteration tolerance");
    add_common(fixed);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 takes them reversed
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    fs::path outdir = outdir_str.empty() ? fs::path(".") : fs::path(outdir_str);
    bool have_out = !outdir_str.empty();

    try {
        if (difq->parsed()) return run_difq(expr_text, at, dir, t, outdir, have_out);
        if (var->parsed()) return run_var(expr_text, at, dir, outdir, have_out);
        if (integ->parsed()) return run_integrate(expr_text, qa, qb, qtol, outdir, have_out);
        if (verify->parsed())
            return run_verify(verify_target, ring_name, trials, seed, outdir, have_out);
        if (demo->parsed()) {
            if (sharp->parsed()) return run_demo_sharp(scfg, outdir);
            return run_demo_fixedpoint(fp_cells, fp_tol, outdir, have_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const SyntaxError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const UnknownFunction& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConverge;
    } catch (const NotDifferentiable& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConverge;
    } catch (const SingularCoefficient& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConverge;
    } catch (const ResidualTooLarge& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConverge;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConverge;
    }
    return kExitUsage;
}
