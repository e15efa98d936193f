#include "dqcalc/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dqcalc/poly.hpp"

namespace dqcalc {

namespace {

struct ExtrapResult {
    Vec value;
    double error = 0.0;
    bool converged = false;
    double onesided_gap_first = 0.0;
    double onesided_gap_last = 0.0;
};

// Limit t->0 of t^-1 (F(x+tu) - F(x)) for a generic evaluator.  Central
// quotients over t0*ratio^j, Neville extrapolation in t^2; the returned
// value is the extrapolant pair with the smallest successive difference.
ExtrapResult extrapolate_quotient(const std::function<Vec(const Vec&)>& F, const Vec& x,
                                  const Vec& u, const ExtrapConfig& cfg, double t_cap) {
    cfg.validate();
    double t0 = cfg.t0;
    if (t_cap > 0) t0 = std::min(t0, t_cap);
    if (!(t0 > 0)) throw DomainError("extrapolate: base point not interior");

    const Vec f0 = F(x);
    const int m = static_cast<int>(f0.size());
    const double q = cfg.ratio * cfg.ratio;

    std::vector<std::vector<Vec>> table;  // table[i][col]
    ExtrapResult best;
    best.error = std::numeric_limits<double>::infinity();
    double t = t0;
    double scale = 1.0;

    for (int level = 0; level < cfg.max_levels; ++level, t *= cfg.ratio) {
        Vec fp = F(axpy(x, t, u));
        Vec fm = F(axpy(x, -t, u));
        Vec dp(m), dm(m), central(m);
        for (int i = 0; i < m; ++i) {
            dp[i] = (fp[i] - f0[i]) / t;
            dm[i] = (f0[i] - fm[i]) / t;
            central[i] = 0.5 * (dp[i] + dm[i]);
        }
        double gap = sup_norm(vsub(dp, dm));
        if (level == 0) best.onesided_gap_first = gap;
        best.onesided_gap_last = gap;

        std::vector<Vec> row{central};
        int cols = std::min<int>(level, cfg.richardson_order);
        double qm = q;
        for (int c = 1; c <= cols; ++c, qm *= q) {
            const Vec& up = table.back()[c - 1];
            const Vec& cur = row[c - 1];
            Vec next(m);
            for (int i = 0; i < m; ++i) next[i] = (cur[i] - qm * up[i]) / (1.0 - qm);
            row.push_back(std::move(next));
        }
        if (!table.empty()) {
            const Vec& prev_best = table.back().back();
            const Vec& cur_best = row.back();
            double diff = sup_norm(vsub(cur_best, prev_best));
            scale = std::max({1.0, sup_norm(cur_best)});
            if (diff < best.error) {
                best.error = diff;
                best.value = cur_best;
            }
        }
        table.push_back(std::move(row));
    }
    if (best.value.empty()) best.value = table.back().back();
    best.converged = best.error < cfg.tol_conv * scale;
    return best;
}

double margin_cap(const SmoothFn& f, const Vec& x, const Vec& u) {
    if (!f.box()) return 0.0;  // 0 means no cap
    double margin = f.box()->interior_margin(x);
    if (!(margin > 0)) throw DomainError("base point not interior to domain box");
    double un = sup_norm(u);
    if (un == 0) return 0.0;
    return 0.5 * margin / un;
}

std::pair<Vec, double> seip_var_impl(const std::function<Vec(const Vec&)>& F, const Vec& x,
                                     const Vec& u, const ExtrapConfig& cfg, double t_cap) {
    ExtrapResult r = extrapolate_quotient(F, x, u, cfg, t_cap);
    double scale = std::max(1.0, sup_norm(r.value));
    bool kink = r.onesided_gap_last / scale > 1e-3 &&
                r.onesided_gap_last > 0.25 * r.onesided_gap_first;
    if (kink)
        throw NotDifferentiable("one-sided quotients do not merge (gap " +
                                std::to_string(r.onesided_gap_last) + ")");
    if (!r.converged)
        throw NoConvergence("extrapolation stalled at error " + std::to_string(r.error));
    return {r.value, r.error};
}

}  // namespace

std::pair<Vec, double> vector_limit_quotient(const std::function<Vec(const Vec&)>& F,
                                             const Vec& x, const Vec& u,
                                             const ExtrapConfig& cfg, double t_cap) {
    return seip_var_impl(F, x, u, cfg, t_cap);
}

Vec difq_num(const SmoothFn& f, const Vec& x, const Vec& u, double t) {
    if (t == 0) throw std::invalid_argument("difq_num: t must be nonzero");
    Vec fx = f(x);
    Vec fxt = f(axpy(x, t, u));
    Vec r(fx.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (fxt[i] - fx[i]) / t;
    return r;
}

std::pair<Vec, double> seip_var(const SmoothFn& f, const Vec& x, const Vec& u,
                                const ExtrapConfig& cfg) {
    EvalCache cache(f);
    return seip_var_impl([&cache](const Vec& p) { return cache(p); }, x, u, cfg,
                         margin_cap(f, x, u));
}

JetTensor seip_var_k(const SmoothFn& f, const Vec& x, const std::vector<Vec>& dirs,
                     const ExtrapConfig& cfg) {
    const int k = static_cast<int>(dirs.size());
    if (k < 1) throw std::invalid_argument("seip_var_k: need at least one direction");
    if (k > 4) throw std::invalid_argument("seip_var_k: numeric nesting capped at k = 4");

    EvalCache cache(f);

    // level(i) evaluates the order-i variation as a function of the base
    // point; outer levels use fewer steps since the inner noise floor
    // amplifies like 1/t.
    std::function<Vec(int, const Vec&)> level = [&](int i, const Vec& p) -> Vec {
        if (i == 0) return cache(p);
        ExtrapConfig inner = cfg;
        inner.max_levels = std::max(4, cfg.max_levels - 3 * (k - i));
        inner.tol_conv = cfg.tol_conv * std::pow(50.0, k - i);
        auto F = [&](const Vec& q) { return level(i - 1, q); };
        ExtrapResult r = extrapolate_quotient(F, p, dirs[i - 1], inner,
                                              i == 1 ? margin_cap(f, p, dirs[0]) : 0.0);
        if (!r.converged)
            throw NoConvergence("seip_var_k: no convergence at level " + std::to_string(i) +
                                " (error " + std::to_string(r.error) + ")");
        return r.value;
    };

    JetTensor jet;
    jet.order = k;
    jet.base = x;
    jet.directions = dirs;

    ExtrapConfig outer = cfg;
    outer.max_levels = std::max(4, cfg.max_levels - 3 * (k - 1));
    outer.tol_conv = cfg.tol_conv * std::pow(50.0, k - 1);
    auto F = [&](const Vec& q) { return level(k - 1, q); };
    ExtrapResult r = extrapolate_quotient(F, x, dirs[k - 1], outer,
                                          k == 1 ? margin_cap(f, x, dirs[0]) : 0.0);
    if (!r.converged)
        throw NoConvergence("seip_var_k: no convergence at level " + std::to_string(k) +
                            " (error " + std::to_string(r.error) + ")");
    jet.value = r.value;
    jet.error_estimate = r.error;
    jet.converged = true;
    return jet;
}

Vec bgn_difq_num(const SmoothFn& f, const Vec& x, const Vec& u, double t,
                 const ExtrapConfig& cfg) {
    if (t != 0) {
        if (!f.in_domain(x) || !f.in_domain(axpy(x, t, u)))
            throw DomainError("bgn_difq_num: segment endpoint outside domain");
        return difq_num(f, x, u, t);
    }
    return seip_var(f, x, u, cfg).first;
}

VerificationReport check_linearity(const SmoothFn& f, const Vec& x, int trials,
                                   std::uint64_t seed, const ExtrapConfig& cfg) {
    VerificationReport rep;
    rep.suite = "linearity";
    rep.seed = seed;
    rep.trials = trials;
    std::mt19937_64 rng(derive_seed(seed, 0x11A1));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int n = f.arity_in();

    double worst = 0.0;
    std::string witness;
    bool ok = true;
    for (int tr = 0; tr < trials; ++tr) {
        Vec u(n), v(n);
        for (auto& c : u) c = unit(rng);
        for (auto& c : v) c = unit(rng);
        double a = unit(rng), b = unit(rng);
        Vec w(n);
        for (int i = 0; i < n; ++i) w[i] = a * u[i] + b * v[i];
        try {
            Vec dw = seip_var(f, x, w, cfg).first;
            Vec du = seip_var(f, x, u, cfg).first;
            Vec dv = seip_var(f, x, v, cfg).first;
            Vec combo = vadd(vscale(a, du), vscale(b, dv));
            double scale = std::max({1.0, sup_norm(dw), sup_norm(combo)});
            double res = sup_norm(vsub(dw, combo)) / scale;
            worst = std::max(worst, res);
            if (res >= 1e-6 && ok) {
                ok = false;
                std::ostringstream os;
                os << "trial " << tr << " residual " << res;
                witness = os.str();
            }
        } catch (const NotDifferentiable& e) {
            if (ok) {
                ok = false;
                witness = std::string("NotDifferentiable: ") + e.what();
            }
        }
    }
    rep.add("variation_linear_in_direction", ok, worst, witness);
    return rep;
}

SmoothFn poly_to_smooth(const PolyMap& f) {
    // flatten to double coefficients once
    struct Term {
        double c;
        std::vector<std::uint32_t> exps;
    };
    std::vector<std::vector<Term>> comps;
    for (const auto& p : f.components()) {
        std::vector<Term> ts;
        for (const auto& t : p.terms()) ts.push_back({t.coeff.to_double(), t.exps});
        comps.push_back(std::move(ts));
    }
    const int n = f.arity_in();
    const int m = f.arity_out();
    return SmoothFn(n, m, [comps = std::move(comps), n, m](const Vec& x) {
        Vec y(m, 0.0);
        for (int c = 0; c < m; ++c)
            for (const auto& t : comps[c]) {
                double v = t.c;
                for (int i = 0; i < n; ++i)
                    for (std::uint32_t e = 0; e < t.exps[i]; ++e) v *= x[i];
                y[c] += v;
            }
        return y;
    });
}

VerificationReport calculus_rule_suite(int trials, std::uint64_t seed,
                                       const ExtrapConfig& cfg) {
    VerificationReport rep;
    rep.suite = "calculus_rules";
    rep.seed = seed;
    rep.trials = trials;
    std::mt19937_64 rng(derive_seed(seed, 0xCA1C));
    std::uniform_real_distribution<double> pt(-0.8, 0.8);
    std::uniform_real_distribution<double> dir(-1.0, 1.0);

    struct Elem {
        const char* name;
        std::function<double(double)> f;
        std::function<double(double)> df;
    };
    const std::vector<Elem> elems = {
        {"sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }},
        {"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }},
        {"cube", [](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }},
        {"cos", [](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }},
    };

    // chain rule, including the fixed sin(exp(.)) witness at 0
    {
        double worst = 0.0;
        bool ok = true;
        std::string witness;
        auto check_pair = [&](const Elem& g, const Elem& f, double x0, double u0) {
            SmoothFn comp = SmoothFn::scalar([&](double x) { return g.f(f.f(x)); });
            SmoothFn gf = SmoothFn::scalar(g.f);
            SmoothFn ff = SmoothFn::scalar(f.f);
            double lhs = seip_var(comp, {x0}, {u0}, cfg).first[0];
            double inner = seip_var(ff, {x0}, {u0}, cfg).first[0];
            double rhs = seip_var(gf, {f.f(x0)}, {inner}, cfg).first[0];
            double res = std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
            worst = std::max(worst, res);
            if (res >= 1e-6 && ok) {
                ok = false;
                std::ostringstream os;
                os << g.name << " o " << f.name << " at x=" << x0 << " u=" << u0
                   << " lhs=" << lhs << " rhs=" << rhs;
                witness = os.str();
            }
        };
        check_pair(elems[0], elems[1], 0.0, 1.0);  // sin o exp: cos(1)
        {
            SmoothFn comp = SmoothFn::scalar([](double x) { return std::sin(std::exp(x)); });
            double v = seip_var(comp, {0.0}, {1.0}, cfg).first[0];
            double res = std::fabs(v - std::cos(1.0));
            rep.add("chain_rule_sin_exp_at_0_equals_cos1", res < 1e-6, res);
        }
        for (int tr = 0; tr < trials; ++tr) {
            const Elem& g = elems[rng() % elems.size()];
            const Elem& f = elems[rng() % elems.size()];
            check_pair(g, f, pt(rng), dir(rng));
        }
        rep.add("chain_rule", ok, worst, witness);
    }

    // constant maps
    {
        SmoothFn c = SmoothFn::scalar([](double) { return 3.25; });
        double v = seip_var(c, {0.3}, {1.0}, cfg).first[0];
        rep.add("constant_variation_zero", v == 0.0, std::fabs(v));
    }

    // linear maps: variation ell(u), independent of base point
    {
        double worst = 0.0;
        bool ok = true;
        SmoothFn ell(2, 1, [](const Vec& x) { return Vec{2.0 * x[0] - 0.5 * x[1]}; });
        for (int tr = 0; tr < std::max(1, trials / 5); ++tr) {
            Vec x{pt(rng), pt(rng)}, u{dir(rng), dir(rng)};
            double v = seip_var(ell, x, u, cfg).first[0];
            double expect = 2.0 * u[0] - 0.5 * u[1];
            double res = std::fabs(v - expect) / std::max(1.0, std::fabs(expect));
            worst = std::max(worst, res);
            ok = ok && res < 1e-9;
        }
        rep.add("linear_map_variation", ok, worst);
    }

    // bilinear b(x,y)=xy: delta b((x,y),(u,v)) = xv + uy
    {
        double worst = 0.0;
        bool ok = true;
        SmoothFn b(2, 1, [](const Vec& p) { return Vec{p[0] * p[1]}; });
        for (int tr = 0; tr < std::max(1, trials / 5); ++tr) {
            Vec p{pt(rng), pt(rng)}, d{dir(rng), dir(rng)};
            double v = seip_var(b, p, d, cfg).first[0];
            double expect = p[0] * d[1] + d[0] * p[1];
            double res = std::fabs(v - expect) / std::max(1.0, std::fabs(expect));
            worst = std::max(worst, res);
            ok = ok && res < 1e-8;
        }
        rep.add("bilinear_map_variation", ok, worst);
    }

    // pairing [f,g]: variation is the pair of variations
    {
        SmoothFn pair_fn(1, 2, [](const Vec& x) { return Vec{std::sin(x[0]), std::exp(x[0])}; });
        SmoothFn f1 = SmoothFn::scalar([](double x) { return std::sin(x); });
        SmoothFn f2 = SmoothFn::scalar([](double x) { return std::exp(x); });
        double worst = 0.0;
        bool ok = true;
        for (int tr = 0; tr < std::max(1, trials / 10); ++tr) {
            double x0 = pt(rng), u0 = dir(rng);
            Vec vp = seip_var(pair_fn, {x0}, {u0}, cfg).first;
            double a = seip_var(f1, {x0}, {u0}, cfg).first[0];
            double b2 = seip_var(f2, {x0}, {u0}, cfg).first[0];
            double res = std::max(std::fabs(vp[0] - a), std::fabs(vp[1] - b2));
            worst = std::max(worst, res);
            ok = ok && res < 1e-8;
        }
        rep.add("pairing_variation", ok, worst);
    }

    // order-2 zero padding: delta^2 f(x)[u,v] = delta(delta f)((x,u))[(v,0)]
    // and permutation symmetry delta^2 f[u,v] = delta^2 f[v,u]
    {
        SmoothFn f(2, 1, [](const Vec& p) { return Vec{std::sin(p[0]) * std::exp(p[1])}; });
        double worst_pad = 0.0, worst_sym = 0.0;
        bool ok_pad = true, ok_sym = true;
        ExtrapConfig inner_cfg = cfg;
        for (int tr = 0; tr < std::max(1, trials / 10); ++tr) {
            Vec x{pt(rng), pt(rng)};
            Vec u{dir(rng), dir(rng)}, v{dir(rng), dir(rng)};
            double d2 = seip_var_k(f, x, {u, v}, cfg).value[0];
            double d2swap = seip_var_k(f, x, {v, u}, cfg).value[0];
            // variation of (x,u) |-> delta f(x)[u] in direction (v, 0)
            SmoothFn var_map(4, 1, [&f, &inner_cfg](const Vec& p) {
                Vec xx{p[0], p[1]}, uu{p[2], p[3]};
                return Vec{seip_var(f, xx, uu, inner_cfg).first[0]};
            });
            Vec base{x[0], x[1], u[0], u[1]};
            Vec pad{v[0], v[1], 0.0, 0.0};
            ExtrapConfig outer = cfg;
            outer.max_levels = 9;
            outer.tol_conv = 1e-5;
            double lhs = seip_var(var_map, base, pad, outer).first[0];
            double scale = std::max({1.0, std::fabs(d2), std::fabs(lhs)});
            double res_pad = std::fabs(lhs - d2) / scale;
            double res_sym = std::fabs(d2 - d2swap) / scale;
            worst_pad = std::max(worst_pad, res_pad);
            worst_sym = std::max(worst_sym, res_sym);
            ok_pad = ok_pad && res_pad < 1e-5;
            ok_sym = ok_sym && res_sym < 1e-6;
        }
        rep.add("order2_zero_padding", ok_pad, worst_pad);
        rep.add("order2_permutation_symmetry", ok_sym, worst_sym);
    }

    return rep;
}

}  // namespace dqcalc
