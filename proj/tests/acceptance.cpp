// Acceptance gate: one pass/fail line per criterion, exit nonzero if
// any fails.  argv[1] (optional) is the path of the command-line tool,
// used by the determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "dqcalc/axioms.hpp"
#include "dqcalc/expr.hpp"
#include "dqcalc/funcgrid.hpp"
#include "dqcalc/numdiff.hpp"
#include "dqcalc/riemann.hpp"
#include "dqcalc/sharplab.hpp"

using namespace dqcalc;

namespace {

int g_failures = 0;

void line(int id, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s  %s\n", id, ok ? "pass" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

Poly embed_shift(const Poly& c, int n, bool shifted) {
    const RingId rid = c.ring();
    std::vector<Poly> args;
    for (int i = 0; i < n; ++i) {
        Poly xi = Poly::variable(rid, 2 * n + 1, i);
        if (shifted)
            xi = xi + Poly::variable(rid, 2 * n + 1, 2 * n) *
                          Poly::variable(rid, 2 * n + 1, n + i);
        args.push_back(xi);
    }
    return c.substitute(args);
}

// ---- 1: exact division --------------------------------------------------

void criterion_1() {
    double t_start = now_s();
    std::mt19937_64 rng(derive_seed(1234, 1));
    bool ok = true;
    for (RingId rid : {RingId::rationals(), RingId::prime_field(7)}) {
        for (int trial = 0; trial < 500 && ok; ++trial) {
            int n = 1 + static_cast<int>(rng() % 3);
            PolyMap f = random_poly_map(rid, n, 1, 6, 5, rng);
            PolyMap d = sym_difq1(f);
            Poly t = Poly::variable(rid, 2 * n + 1, 2 * n);
            ok = t * d.components()[0] ==
                 embed_shift(f.components()[0], n, true) -
                     embed_shift(f.components()[0], n, false);
        }
    }
    double dt = now_s() - t_start;
    std::ostringstream os;
    os << "exact division on 1000 polynomials, " << dt << " s";
    line(1, ok && dt < 5.0, os.str());
}

// ---- 2: symbolic vs numeric variation -----------------------------------

void criterion_2() {
    double t_start = now_s();
    std::mt19937_64 rng(derive_seed(1234, 2));
    RingId rid = RingId::rationals();
    int flagged = 0;
    double worst = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        PolyMap f = random_poly_map(rid, n, 1, 4, 5, rng);
        PolyMap v = formal_var(f);
        // dyadic coordinates so the double image is exact
        std::vector<RingElem> xr, ur;
        Vec x, u;
        for (int i = 0; i < n; ++i) {
            long a = static_cast<long>(rng() % 33) - 16;
            long b = static_cast<long>(rng() % 33) - 16;
            xr.push_back(RingElem::rational(a, 16));
            ur.push_back(RingElem::rational(b, 16));
            x.push_back(static_cast<double>(a) / 16.0);
            u.push_back(static_cast<double>(b) / 16.0);
        }
        auto xur = xr;
        xur.insert(xur.end(), ur.begin(), ur.end());
        double exact = v.eval(xur)[0].to_double();
        auto [num, err] = seip_var(poly_to_smooth(f), x, u);
        double scale = std::max(1.0, std::fabs(exact));
        if (err > 1e-6 * scale) {
            ++flagged;  // conditioning-flagged, excluded but reported
            continue;
        }
        double rel = std::fabs(num[0] - exact) / scale;
        worst = std::max(worst, rel);
        if (rel >= 1e-7) ok = false;
    }
    double dt = now_s() - t_start;
    std::ostringstream os;
    os << "worst rel " << worst << ", " << flagged << " flagged, " << dt << " s";
    line(2, ok && dt < 10.0, os.str());
}

// ---- 3: dual-number cross-check -----------------------------------------

struct DualNum {
    double v = 0.0, d = 0.0;
};
DualNum operator+(DualNum a, DualNum b) { return {a.v + b.v, a.d + b.d}; }
DualNum operator-(DualNum a, DualNum b) { return {a.v - b.v, a.d - b.d}; }
DualNum operator*(DualNum a, DualNum b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
DualNum dsin(DualNum a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
DualNum dcos(DualNum a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
DualNum dexp(DualNum a) { return {std::exp(a.v), std::exp(a.v) * a.d}; }

void criterion_3() {
    std::mt19937_64 rng(derive_seed(1234, 3));
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        // random chain of elementary steps applied to an affine start
        std::vector<int> steps;
        int len = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < len; ++i) steps.push_back(static_cast<int>(rng() % 5));
        double a = 0.5 + 0.001 * static_cast<double>(rng() % 500);
        double b = -0.5 + 0.001 * static_cast<double>(rng() % 1000);

        auto chain_d = [&](double x) {
            double z = a * x + b;
            for (int s : steps) {
                if (s == 0) z = std::sin(z);
                else if (s == 1) z = std::cos(z);
                else if (s == 2) z = std::exp(0.5 * z);
                else if (s == 3) z = z * z + 0.25;
                else z = 0.5 * z + z * z * z / 3.0;
            }
            return z;
        };
        auto chain_dual = [&](DualNum x) {
            DualNum z = DualNum{a, 0.0} * x + DualNum{b, 0.0};
            for (int s : steps) {
                if (s == 0) z = dsin(z);
                else if (s == 1) z = dcos(z);
                else if (s == 2) z = dexp(DualNum{0.5, 0.0} * z);
                else if (s == 3) z = z * z + DualNum{0.25, 0.0};
                else z = DualNum{0.5, 0.0} * z + z * z * z * DualNum{1.0 / 3.0, 0.0};
            }
            return z;
        };

        double x0 = -0.4 + 0.001 * static_cast<double>(rng() % 800);
        double u0 = 0.5 + 0.001 * static_cast<double>(rng() % 1000);
        DualNum fwd = chain_dual({x0, u0});
        SmoothFn f = SmoothFn::scalar(chain_d);
        auto [num, err] = seip_var(f, {x0}, {u0});
        double rel = std::fabs(num[0] - fwd.d) / std::max(1.0, std::fabs(fwd.d));
        worst = std::max(worst, rel);
        if (rel >= 1e-9) ok = false;
    }
    std::ostringstream os;
    os << "forward-mode agreement, worst rel " << worst;
    line(3, ok, os.str());
}

// ---- 4: chain rule ------------------------------------------------------

void criterion_4() {
    std::mt19937_64 rng(derive_seed(1234, 4));
    bool ok = true;
    double worst = 0.0;
    std::vector<std::function<double(double)>> fns = {
        [](double x) { return std::sin(x); },
        [](double x) { return std::cos(x); },
        [](double x) { return std::exp(0.7 * x); },
        [](double x) { return x * x + 0.5 * x; },
        [](double x) { return x / (1.0 + x * x); },
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto fo = fns[rng() % fns.size()];
        auto fi = fns[rng() % fns.size()];
        SmoothFn outer = SmoothFn::scalar(fo);
        SmoothFn inner = SmoothFn::scalar(fi);
        SmoothFn comp = SmoothFn::scalar([&](double x) { return fo(fi(x)); });
        double x0 = -0.8 + 0.001 * static_cast<double>(rng() % 1600);
        double u0 = 0.25 + 0.001 * static_cast<double>(rng() % 1500);
        double lhs = seip_var(comp, {x0}, {u0}).first[0];
        double fy = inner(Vec{x0})[0];
        double dinner = seip_var(inner, {x0}, {u0}).first[0];
        double rhs = seip_var(outer, {fy}, {dinner}).first[0];
        double resid = std::fabs(lhs - rhs);
        worst = std::max(worst, resid);
        if (resid >= 1e-6) ok = false;
    }
    SmoothFn se = SmoothFn::scalar([](double x) { return std::sin(std::exp(x)); });
    double v = seip_var(se, {0.0}, {1.0}).first[0];
    bool named = std::fabs(v - std::cos(1.0)) < 1e-6;
    std::ostringstream os;
    os << "worst resid " << worst << ", d(sin.exp)(0;1) = " << v;
    line(4, ok && named, os.str());
}

// ---- 5: symmetry and zero padding ---------------------------------------

void criterion_5() {
    std::vector<SmoothFn> set;
    set.emplace_back(2, 1, [](const Vec& p) { return Vec{std::sin(p[0]) * std::exp(p[1])}; });
    set.emplace_back(2, 1, [](const Vec& p) { return Vec{p[0] * p[0] * p[1]}; });
    set.emplace_back(2, 1, [](const Vec& p) { return Vec{std::exp(0.5 * p[0] * p[1])}; });

    bool ok = true;
    double worst_sym = 0.0, worst_pad = 0.0;
    Vec x{0.4, -0.3}, u{1.0, 0.5}, v{-0.25, 1.0};
    for (const SmoothFn& f : set) {
        double duv = seip_var_k(f, x, {u, v}).value[0];
        double dvu = seip_var_k(f, x, {v, u}).value[0];
        double rel = std::fabs(duv - dvu) / std::max(1.0, std::fabs(duv));
        worst_sym = std::max(worst_sym, rel);
        if (rel >= 1e-6) ok = false;

        // pad: the order-2 variation as a first-order variation of the
        // variation map (x, u) -> df(x, u) in direction (v, 0)
        ExtrapConfig inner_cfg;
        inner_cfg.tol_conv = 1e-11;
        SmoothFn varmap(4, 1, [&](const Vec& p) {
            return Vec{seip_var(f, {p[0], p[1]}, {p[2], p[3]}, inner_cfg).first[0]};
        });
        ExtrapConfig outer_cfg;
        outer_cfg.max_levels = 9;
        outer_cfg.tol_conv = 1e-7;
        double pad =
            seip_var(varmap, {x[0], x[1], u[0], u[1]}, {v[0], v[1], 0.0, 0.0}, outer_cfg)
                .first[0];
        double diff = std::fabs(pad - duv);
        worst_pad = std::max(worst_pad, diff);
        if (diff >= 1e-5) ok = false;
    }
    std::ostringstream os;
    os << "worst symmetry rel " << worst_sym << ", worst padding gap " << worst_pad;
    line(5, ok, os.str());
}

// ---- 6: quotient equals averaged variation ------------------------------

void criterion_6() {
    std::mt19937_64 rng(derive_seed(1234, 6));
    std::vector<SmoothFn> set;
    set.push_back(SmoothFn::scalar([](double x) { return std::exp(x); }));
    set.push_back(SmoothFn::scalar([](double x) { return std::sin(x); }));
    set.push_back(SmoothFn::scalar([](double x) { return x * x; }));
    set.push_back(SmoothFn::scalar([](double x) { return x * x * x + x; }));

    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const SmoothFn& f = set[trial % set.size()];
        double x0 = -1.0 + 0.001 * static_cast<double>(rng() % 2000);
        double u0 = -1.0 + 0.001 * static_cast<double>(rng() % 2000);
        double t0 = trial % 5 == 0 ? 0.0 : 0.001 * static_cast<double>(rng() % 500);
        double resid = thm52_identity_residual(f, {x0}, {u0}, t0);
        worst = std::max(worst, resid);
        if (resid >= 1e-6) ok = false;
    }
    std::ostringstream os;
    os << "50 cases incl. t = 0, worst resid " << worst;
    line(6, ok, os.str());
}

// ---- 7: two-term variation formula for the integral operator ------------

void criterion_7() {
    SmoothFn sq = SmoothFn::scalar([](double x) { return x * x; });
    SmoothFn ex = SmoothFn::scalar([](double x) { return std::exp(x); });
    double r1 = lemma50_variation_residual(sq, 0, {1.0}, {1.0}, {1.0}, {1.0});
    double r2 = lemma50_variation_residual(sq, 1, {0.5}, {1.0}, {-1.0}, {0.5});
    double r3 = lemma50_variation_residual(ex, 0, {0.0}, {0.5}, {1.0}, {0.5});
    bool ok = r1 < 1e-5 && r2 < 1e-5 && r3 < 1e-5;

    // exact-arithmetic witness: for g(z) = z^2, k = 0 the integrated
    // two-term form is 2xy + uy + xv + (2/3)uv = 14/3 at all-ones
    RingId rid = RingId::rationals();
    Poly x = Poly::variable(rid, 5, 0), u = Poly::variable(rid, 5, 1);
    Poly y = Poly::variable(rid, 5, 2), v = Poly::variable(rid, 5, 3);
    Poly s = Poly::variable(rid, 5, 4);
    Poly integrand = ((x + s * u) * y + s * (x + s * u) * v).scaled(RingElem::rational(2));
    Poly integrated(rid, 5);
    for (const Monomial& m : integrand.terms()) {
        auto ex2 = m.exps;
        auto es = ex2[4];
        ex2[4] = 0;
        integrated = integrated +
                     Poly::monomial(rid, 5, m.coeff * RingElem::rational(1, static_cast<long>(es) + 1), ex2);
    }
    std::vector<RingElem> ones(5, RingElem::rational(1));
    bool witness = integrated.eval(ones) == RingElem::rational(14, 3);
    // and the numeric route reproduces the same number
    double numeric = r1;  // residual already certifies the equality route
    double lhs = seip_var(
                     SmoothFn(2, 1,
                              [&](const Vec& p) {
                                  return integral_op_Ik(sq, 0, {p[0]}, {p[1]}, 1e-9);
                              }),
                     {1.0, 1.0}, {1.0, 1.0})
                     .first[0];
    witness = witness && std::fabs(lhs - 14.0 / 3.0) < 1e-5;
    std::ostringstream os;
    os << "residuals " << r1 << " " << r2 << " " << r3 << ", witness 14/3, resid "
       << std::fabs(lhs - 14.0 / 3.0) << " (numeric " << numeric << ")";
    line(7, ok && witness, os.str());
}

// ---- 8: Riemann convergence ---------------------------------------------

void criterion_8() {
    Curve c = Curve::scalar(0.0, 1.0, [](double s) { return std::exp(s); });
    double exact = std::exp(1.0) - 1.0;
    std::vector<double> lh, le;
    for (int k = 4; k <= 12; ++k) {
        auto cells = static_cast<std::size_t>(1) << k;
        double err =
            std::fabs(riemann_sum(c, TaggedPartition::uniform(0, 1, cells))[0] - exact);
        lh.push_back(std::log(1.0 / static_cast<double>(cells)));
        le.push_back(std::log(err));
    }
    double slope = fit_slope(lh, le);
    auto r = integrate(c, 0.0, 1.0, 1e-9);
    double gap = std::fabs(r.value[0] - exact);
    bool ok = std::fabs(slope - 2.0) <= 0.2 && gap < 1e-8;
    std::ostringstream os;
    os << "slope " << slope << ", integral gap " << gap << " at " << r.cells << " cells";
    line(8, ok, os.str());
}

// ---- 9: differentiation under the integral ------------------------------

void criterion_9() {
    double r1 = under_integral_deriv_check(
        [](double s, double t) { return s * t * t; }, 0.5, 1e-9);
    double r2 = under_integral_deriv_check(
        [](double s, double t) { return std::exp(s * t); }, 0.5, 1e-9);
    bool ok = r1 < 1e-6 && r2 < 1e-6;
    std::ostringstream os;
    os << "family s*t^2: " << r1 << ", family e^(st): " << r2;
    line(9, ok, os.str());
}

// ---- 10: non-injectivity demo -------------------------------------------

void criterion_10() {
    double t_start = now_s();
    auto cfg = SharpConfig::exp_default();
    DemoResult demo = noninjectivity_demo(cfg);
    GridFn u0 = GridFn::constant(0.0, 1.0, cfg.grid_n, cfg.eps);
    double h_fix = h_map(u0, cfg).sup_dist(u0);

    // residual order under step halving
    std::vector<double> errs;
    for (int steps : {100, 200, 400}) {
        auto c2 = cfg;
        c2.ode_steps = steps;
        double err = 0.0;
        solve_ode(c2.eta0, c2, &err);
        errs.push_back(err);
    }
    double order = 0.5 * (std::log2(errs[0] / errs[1]) + std::log2(errs[1] / errs[2]));
    double dt = now_s() - t_start;

    bool ok = std::fabs(demo.A_eps - 0.105) <= 0.005 && demo.sup_dist_u >= 0.019 &&
              demo.sup_dist_h < 1e-4 && h_fix == 0.0 && std::fabs(order - 4.0) <= 0.5 &&
              dt < 10.0;
    std::ostringstream os;
    os << "A(0.1) = " << demo.A_eps << ", in-gap " << demo.sup_dist_u << ", out-gap "
       << demo.sup_dist_h << ", order " << order << ", " << dt << " s";
    line(10, ok, os.str());
}

// ---- 11: composition operator variation ---------------------------------

double compose_var_sup_error(std::size_t n_cells) {
    const double h_ratio = 2.0;  // x lives on [-0.5, 1.5], twice the span
    GridFn x = GridFn::sample(-0.5, 1.5, static_cast<std::size_t>(h_ratio * n_cells),
                              [](double t) { return std::sin(t); });
    GridFn u = GridFn::sample(-0.5, 1.5, static_cast<std::size_t>(h_ratio * n_cells),
                              [](double t) { return std::cos(2.0 * t); });
    GridFn y = GridFn::sample(0.0, 1.0, n_cells,
                              [](double t) { return 0.2 * std::sin(2.0 * t); });
    GridFn v = GridFn::sample(0.0, 1.0, n_cells, [](double t) { return std::cos(t); });

    GridOperator comp{2, [](const std::vector<GridFn>& a) {
        return compose_shift(a[0], a[1]);
    }};
    GridFn dv = operator_var(comp, {x, y}, {u, v});
    double worst = 0.0;
    for (std::size_t j = 0; j < dv.n_nodes(); ++j) {
        double t = dv.node(j);
        double z = t + 0.2 * std::sin(2.0 * t);
        double expect = std::cos(2.0 * z) + std::cos(z) * std::cos(t);
        worst = std::max(worst, std::fabs(dv[j] - expect));
    }
    return worst;
}

void criterion_11() {
    double e1024 = compose_var_sup_error(1024);
    std::vector<double> lh, le;
    for (std::size_t n : {128u, 256u, 512u}) {
        lh.push_back(std::log(1.0 / static_cast<double>(n)));
        le.push_back(std::log(compose_var_sup_error(n)));
    }
    double order = fit_slope(lh, le);
    bool ok = e1024 < 1e-5 && order >= 3.5;
    std::ostringstream os;
    os << "sup error " << e1024 << " at N = 1024, refinement order " << order;
    line(11, ok, os.str());
}

// ---- 12: contraction fixed point ----------------------------------------

void criterion_12() {
    SmoothFn phi(2, 1, [](const Vec& p) { return Vec{1.0 + 0.5 * p[0] * std::sin(p[1])}; });
    auto fp = seip_norm_fixed_point(phi, 0.0, 1.0, 512, 1e-12);
    const GridFn& x = fp.fixed_point;
    double resid = 0.0, oracle = 0.0;
    for (std::size_t j = 0; j < x.n_nodes(); ++j) {
        double s = x.node(j);
        resid = std::max(resid, std::fabs(x[j] - (1.0 + 0.5 * s * std::sin(x[j]))));
        double z = 1.0;  // scalar fixed point at this s, iterated to rest
        for (int i = 0; i < 300; ++i) z = 1.0 + 0.5 * s * std::sin(z);
        oracle = std::max(oracle, std::fabs(x[j] - z));
    }
    double endpoint = x[x.n_nodes() - 1];
    bool ok = fp.lipschitz_estimate <= 0.5 + 1e-6 && fp.report.all_passed() &&
              resid < 1e-10 && oracle < 1e-9 && std::fabs(endpoint - 1.4987) < 1e-3;
    std::ostringstream os;
    os << "Lipschitz " << fp.lipschitz_estimate << ", residual " << resid << ", oracle gap "
       << oracle << ", x(1) = " << endpoint;
    line(12, ok, os.str());
}

// ---- 13: axiom suites ----------------------------------------------------

void criterion_13() {
    double t_start = now_s();
    bool ok = true;
    for (RingId rid : {RingId::rationals(), RingId::prime_field(7)}) {
        auto inst = FnClassInstance::polynomial_class(rid, 3);
        ok = ok && check_productive(inst, 100, 77).all_passed();
        ok = ok && check_bgn_postulates(inst, 100, 77).all_passed();
        std::mt19937_64 rng(derive_seed(77, 5));
        for (int trial = 0; trial < 100; ++trial) {
            PolyMap f = random_poly_map(rid, 1 + static_cast<int>(rng() % 2), 1, 3, 3, rng);
            ok = ok && prop9_uniqueness(f, 77, 1).all_passed();
            if (trial < 25) ok = ok && prop10_recursion(f, 1).all_passed();
        }
    }
    double dt = now_s() - t_start;
    std::ostringstream os;
    os << "postulates, uniqueness, recursion over Q and F7, " << dt << " s";
    line(13, ok && dt < 10.0, os.str());
}

// ---- 14: CLI determinism -------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void criterion_14(const char* cli) {
    if (!cli) {
        line(14, false, "tool path not supplied");
        return;
    }
    std::string base = "/tmp/dqcalc_accept";
    bool ok = true;
    for (const char* sub : {"a", "b"}) {
        std::string cmd = std::string(cli) +
                          " verify axioms --ring Q --trials 50 --seed 7 --out " + base +
                          sub + " > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) ok = false;
    }
    std::string ra = slurp(base + "a/report.json");
    std::string rb = slurp(base + "b/report.json");
    ok = ok && !ra.empty() && ra == rb;
    std::ostringstream os;
    os << "report.json byte-identical across runs (" << ra.size() << " bytes)";
    line(14, ok, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14(argc > 1 ? argv[1] : nullptr);
    std::printf("%s (%d failed)\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
