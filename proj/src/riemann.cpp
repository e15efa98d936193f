#include "dqcalc/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dqcalc/kernels.hpp"

namespace dqcalc {

TaggedPartition::TaggedPartition(std::vector<double> nodes_in, std::vector<double> tags_in)
    : nodes(std::move(nodes_in)), tags(std::move(tags_in)) {
    if (nodes.size() < 2 || tags.size() + 1 != nodes.size())
        throw PartitionMismatch("TaggedPartition: need k+1 nodes and k tags");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i + 1] < nodes[i])
            throw PartitionMismatch("TaggedPartition: nodes must be nondecreasing");
        if (tags[i] < nodes[i] || tags[i] > nodes[i + 1])
            throw PartitionMismatch("TaggedPartition: tag outside its cell");
    }
}

double TaggedPartition::mesh() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        m = std::max(m, nodes[i + 1] - nodes[i]);
    return m;
}

TaggedPartition TaggedPartition::uniform(double a, double b, std::size_t cells, TagRule rule) {
    std::vector<double> nodes(cells + 1), tags(cells);
    double h = (b - a) / static_cast<double>(cells);
    for (std::size_t i = 0; i <= cells; ++i) nodes[i] = a + h * static_cast<double>(i);
    nodes.back() = b;
    for (std::size_t i = 0; i < cells; ++i)
        tags[i] = rule == TagRule::Midpoint ? a + h * (static_cast<double>(i) + 0.5)
                                            : nodes[i];
    return TaggedPartition(std::move(nodes), std::move(tags));
}

namespace {

Vec riemann_sum_with(const Curve& gamma, const TaggedPartition& p, bool parallel) {
    if (std::fabs(p.a() - gamma.a) > 1e-12 || std::fabs(p.b() - gamma.b) > 1e-12)
        throw PartitionMismatch("riemann_sum: partition does not span the curve domain");
    const std::size_t k = p.cells();
    const std::size_t dim = static_cast<std::size_t>(gamma.dim);
    auto term = [&](std::size_t i, double* out) {
        double w = p.nodes[i + 1] - p.nodes[i];
        Vec v = gamma.eval(p.tags[i]);
        for (std::size_t d = 0; d < dim; ++d) out[d] = w * v[d];
    };
    return parallel ? kernels::block_sum_parallel(k, dim, term)
                    : kernels::block_sum_serial(k, dim, term);
}

}  // namespace

Vec riemann_sum(const Curve& gamma, const TaggedPartition& p) {
    return riemann_sum_with(gamma, p, true);
}

Vec riemann_sum_serial(const Curve& gamma, const TaggedPartition& p) {
    return riemann_sum_with(gamma, p, false);
}

IntegrateResult integrate(const Curve& gamma, double a, double b, double tol,
                          std::size_t max_cells) {
    if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
    Curve g = gamma;
    g.a = a;
    g.b = b;
    IntegrateResult res;
    Vec prev;
    for (std::size_t cells = 16; cells <= max_cells; cells *= 2) {
        Vec sum = riemann_sum(g, TaggedPartition::uniform(a, b, cells));
        std::vector<double> row;
        row.push_back(static_cast<double>(cells));
        row.insert(row.end(), sum.begin(), sum.end());
        if (!prev.empty()) {
            double diff = sup_norm(vsub(sum, prev));
            row.push_back(diff);
            res.table.push_back(row);
            if (diff < tol) {
                res.value = sum;
                res.error_estimate = diff;
                res.cells = cells;
                return res;
            }
        } else {
            row.push_back(0.0);
            res.table.push_back(row);
        }
        prev = std::move(sum);
    }
    throw NoConvergence("integrate: no convergence up to " + std::to_string(max_cells) +
                        " cells");
}

Vec integral_op_Ik(const SmoothFn& g, int k, const Vec& x, const Vec& u, double tol) {
    if (k < 0) throw std::invalid_argument("integral_op_Ik: k must be >= 0");
    // the paper-side domain condition: the whole segment must lie in dom g
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0})
        if (!g.in_domain(axpy(x, s, u)))
            throw DomainError("integral_op_Ik: segment leaves the domain box");
    Curve c{0.0, 1.0, g.arity_out(), [&](double s) {
                Vec v = g(axpy(x, s, u));
                double w = std::pow(s, k);
                for (double& t : v) t *= w;
                return v;
            }};
    return integrate(c, 0.0, 1.0, tol).value;
}

VerificationReport mvt_containment_check(const Curve& c, int sample_count, double tol,
                                         const ExtrapConfig& cfg) {
    if (c.dim != 1) throw std::invalid_argument("mvt_containment_check: scalar curves only");
    VerificationReport rep;
    rep.suite = "mvt_containment";
    rep.trials = sample_count;

    SmoothFn fn(1, 1, [&](const Vec& t) { return c.eval(t[0]); },
                Box{{c.a}, {c.b}});
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < sample_count; ++i) {
        double t = c.a + (c.b - c.a) * (static_cast<double>(i) + 0.5) /
                           static_cast<double>(sample_count);
        double d = seip_var(fn, {t}, {1.0}, cfg).first[0];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    double incr = c.eval(c.b)[0] - c.eval(c.a)[0];
    // Def-39 curves are parametrized on [0,1]; general [a,b] scales by b-a.
    double span = (c.b - c.a);
    bool ok = incr >= span * lo - tol && incr <= span * hi + tol;
    std::ostringstream os;
    os << "increment=" << incr << " derivative range=[" << lo << ", " << hi << "] span=" << span;
    rep.add("increment_in_derivative_hull", ok, 0.0, os.str());
    rep.notes.push_back(os.str());
    return rep;
}

double under_integral_deriv_check(const std::function<double(double, double)>& family,
                                  double t, double tol, const ExtrapConfig& cfg) {
    // c(t) = integral_0^1 family(s, t) ds
    SmoothFn c(1, 1, [&](const Vec& tv) {
        Curve slice = Curve::scalar(0.0, 1.0, [&](double s) { return family(s, tv[0]); });
        return Vec{integrate(slice, 0.0, 1.0, tol).value[0]};
    });
    double lhs = seip_var(c, {t}, {1.0}, cfg).first[0];

    // integral of the inner t-derivatives
    Curve deriv_curve = Curve::scalar(0.0, 1.0, [&](double s) {
        SmoothFn slice(1, 1, [&](const Vec& tv) { return Vec{family(s, tv[0])}; });
        return seip_var(slice, {t}, {1.0}, cfg).first[0];
    });
    double rhs = integrate(deriv_curve, 0.0, 1.0, tol).value[0];
    return std::fabs(lhs - rhs);
}

double thm52_identity_residual(const SmoothFn& f, const Vec& x, const Vec& u, double t,
                               const ExtrapConfig& cfg, double quad_tol) {
    Vec lhs = bgn_difq_num(f, x, u, t, cfg);
    Curve c{0.0, 1.0, f.arity_out(), [&](double s) {
                return seip_var(f, axpy(x, s * t, u), u, cfg).first;
            }};
    Vec rhs = integrate(c, 0.0, 1.0, quad_tol).value;
    return sup_norm(vsub(lhs, rhs));
}

double lemma50_variation_residual(const SmoothFn& g, int k, const Vec& x, const Vec& u,
                                  const Vec& y, const Vec& v, const ExtrapConfig& cfg,
                                  double quad_tol) {
    const int n = g.arity_in();
    // numeric variation of (x,u) |-> I^k g(x,u) in direction (y,v)
    SmoothFn H(2 * n, g.arity_out(), [&](const Vec& p) {
        Vec xx(p.begin(), p.begin() + n), uu(p.begin() + n, p.end());
        return integral_op_Ik(g, k, xx, uu, quad_tol);
    });
    Vec base;
    base.insert(base.end(), x.begin(), x.end());
    base.insert(base.end(), u.begin(), u.end());
    Vec dir;
    dir.insert(dir.end(), y.begin(), y.end());
    dir.insert(dir.end(), v.begin(), v.end());
    Vec lhs = seip_var(H, base, dir, cfg).first;

    Curve c{0.0, 1.0, g.arity_out(), [&](double s) {
                Vec p = axpy(x, s, u);
                Vec a = seip_var(g, p, y, cfg).first;
                Vec b = seip_var(g, p, v, cfg).first;
                double sk = std::pow(s, k);
                Vec out(a.size());
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] = sk * a[i] + sk * s * b[i];
                return out;
            }};
    Vec rhs = integrate(c, 0.0, 1.0, quad_tol).value;
    return sup_norm(vsub(lhs, rhs));
}

}  // namespace dqcalc
