#include "dqcalc/funcgrid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dqcalc/kernels.hpp"

namespace dqcalc {

GridFn::GridFn(double a, double b, Vec samples, bool compact_support)
    : a_(a), b_(b), samples_(std::move(samples)), support_(compact_support) {
    if (!(a < b)) throw std::invalid_argument("GridFn: need a < b");
    if (samples_.size() < 2) throw std::invalid_argument("GridFn: need at least 2 samples");
    h_ = (b - a) / static_cast<double>(samples_.size() - 1);
}

GridFn GridFn::constant(double a, double b, std::size_t n_cells, double value,
                        bool compact_support) {
    return GridFn(a, b, Vec(n_cells + 1, value), compact_support);
}

GridFn GridFn::sample(double a, double b, std::size_t n_cells,
                      const std::function<double(double)>& f, bool compact_support) {
    Vec s(n_cells + 1);
    double h = (b - a) / static_cast<double>(n_cells);
    for (std::size_t j = 0; j <= n_cells; ++j) s[j] = f(a + h * static_cast<double>(j));
    return GridFn(a, b, std::move(s), compact_support);
}

GridFn GridFn::operator+(const GridFn& o) const {
    if (!same_grid(o)) throw std::invalid_argument("GridFn: grid mismatch");
    Vec out;
    kernels::map_parallel(samples_.size(),
                          [&](std::size_t j) { return samples_[j] + o.samples_[j]; }, out);
    return GridFn(a_, b_, std::move(out), support_ && o.support_);
}

GridFn GridFn::operator-(const GridFn& o) const {
    if (!same_grid(o)) throw std::invalid_argument("GridFn: grid mismatch");
    Vec out;
    kernels::map_parallel(samples_.size(),
                          [&](std::size_t j) { return samples_[j] - o.samples_[j]; }, out);
    return GridFn(a_, b_, std::move(out), support_ && o.support_);
}

GridFn GridFn::scaled(double c) const {
    Vec out;
    kernels::map_parallel(samples_.size(), [&](std::size_t j) { return c * samples_[j]; },
                          out);
    return GridFn(a_, b_, std::move(out), support_);
}

double GridFn::sup_dist(const GridFn& o) const {
    if (!same_grid(o)) throw std::invalid_argument("GridFn: grid mismatch");
    double m = 0.0;
    for (std::size_t j = 0; j < samples_.size(); ++j)
        m = std::max(m, std::fabs(samples_[j] - o.samples_[j]));
    return m;
}

double GridFn::sup_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::fabs(v));
    return m;
}

namespace {

// First derivative at node j of data f on a uniform grid, 4th order.
// Interior: 5-point central; within two nodes of an end: one-sided,
// mirrored on the right.
double stencil_d1(const Vec& f, std::size_t j, double h) {
    const std::size_t N = f.size() - 1;
    const double inv = 1.0 / (12.0 * h);
    if (j >= 2 && j + 2 <= N)
        return (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) * inv;
    if (j == 0)
        return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
    if (j == 1)
        return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
    if (j == N)
        return (25.0 * f[N] - 48.0 * f[N - 1] + 36.0 * f[N - 2] - 16.0 * f[N - 3] +
                3.0 * f[N - 4]) *
               inv;
    // j == N - 1
    return (3.0 * f[N] + 10.0 * f[N - 1] - 18.0 * f[N - 2] + 6.0 * f[N - 3] - f[N - 4]) *
           inv;
}

}  // namespace

GridFn GridFn::stencil_derivative(int m) const {
    if (m < 0 || m > 4)
        throw OrderUnsupported("stencil_derivative: order must be in [0, 4]");
    if (m == 0) return *this;
    if (samples_.size() < 5)
        throw OrderUnsupported("stencil_derivative: need at least 5 nodes");
    Vec cur = samples_;
    for (int r = 0; r < m; ++r) {
        Vec next;
        kernels::map_parallel(cur.size(),
                              [&](std::size_t j) { return stencil_d1(cur, j, h_); }, next);
        cur = std::move(next);
    }
    return GridFn(a_, b_, std::move(cur), support_);
}

void GridFn::ensure_spline() const {
    if (!spline_m_.empty()) return;
    const std::size_t N = samples_.size() - 1;
    spline_m_.assign(N + 1, 0.0);
    if (N < 2) return;  // linear interpolant, second derivatives stay zero
    // Natural conditions M_0 = M_N = 0; uniform-grid tridiagonal system
    // M_{i-1} + 4 M_i + M_{i+1} = 6 (f_{i+1} - 2 f_i + f_{i-1}) / h^2.
    const std::size_t n = N - 1;
    Vec diag(n, 4.0), rhs(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = 6.0 * (samples_[i + 2] - 2.0 * samples_[i + 1] + samples_[i]) / (h_ * h_);
    for (std::size_t i = 1; i < n; ++i) {
        double w = 1.0 / diag[i - 1];
        diag[i] -= w;
        rhs[i] -= w * rhs[i - 1];
    }
    spline_m_[n] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        spline_m_[i + 1] = (rhs[i] - spline_m_[i + 2]) / diag[i];
}

double GridFn::spline_eval(double t) const {
    if (t < a_ || t > b_) {
        if (support_) return 0.0;
        throw DomainError("spline_eval: point outside the interval");
    }
    const std::size_t N = samples_.size() - 1;
    auto j = static_cast<std::size_t>((t - a_) / h_);
    if (j >= N) j = N - 1;

    if (samples_.size() < 5) {
        // too few nodes for the stencils: natural cubic fallback
        ensure_spline();
        double A = (node(j + 1) - t) / h_;
        double B = (t - node(j)) / h_;
        return A * samples_[j] + B * samples_[j + 1] +
               ((A * A * A - A) * spline_m_[j] + (B * B * B - B) * spline_m_[j + 1]) *
                   h_ * h_ / 6.0;
    }

    // quintic Hermite from the stencil first and second derivatives;
    // both are 4th-order accurate, so the interpolant derivative is too
    if (herm_d1_.empty()) {
        herm_d1_ = stencil_derivative(1).samples();
        herm_d2_ = stencil_derivative(2).samples();
    }
    double s = (t - node(j)) / h_;
    double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    double H2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
    double H3 = 10 * s3 - 15 * s4 + 6 * s5;
    double H4 = -4 * s3 + 7 * s4 - 3 * s5;
    double H5 = 0.5 * (s3 - 2 * s4 + s5);
    return H0 * samples_[j] + H1 * h_ * herm_d1_[j] + H2 * h_ * h_ * herm_d2_[j] +
           H3 * samples_[j + 1] + H4 * h_ * herm_d1_[j + 1] +
           H5 * h_ * h_ * herm_d2_[j + 1];
}

std::string GridFn::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "t,value\n";
    for (std::size_t j = 0; j < samples_.size(); ++j)
        os << node(j) << "," << samples_[j] << "\n";
    return os.str();
}

std::string GridFn::to_dat() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t j = 0; j < samples_.size(); ++j)
        os << node(j) << " " << samples_[j] << "\n";
    return os.str();
}

GridFn superpose(const SmoothFn& phi, const GridFn& x) {
    if (phi.arity_in() != 1 || phi.arity_out() != 1)
        throw std::invalid_argument("superpose: phi must be scalar 1 -> 1");
    Vec out;
    kernels::map_parallel(x.n_nodes(), [&](std::size_t j) { return phi(Vec{x[j]})[0]; },
                          out);
    bool keeps_zero = x.compact_support() && std::fabs(phi(Vec{0.0})[0]) == 0.0;
    return GridFn(x.a(), x.b(), std::move(out), keeps_zero);
}

GridFn compose_shift(const GridFn& x, const GridFn& y) {
    Vec out;
    kernels::map_parallel(y.n_nodes(),
                          [&](std::size_t j) { return x.spline_eval(y.node(j) + y[j]); },
                          out);
    return GridFn(y.a(), y.b(), std::move(out), false);
}

GridFn operator_var(const GridOperator& F, const std::vector<GridFn>& base,
                    const std::vector<GridFn>& dir, const ExtrapConfig& cfg) {
    if (static_cast<int>(base.size()) != F.arity || base.size() != dir.size())
        throw std::invalid_argument("operator_var: arity mismatch");
    for (std::size_t i = 0; i < base.size(); ++i)
        if (!base[i].same_grid(dir[i]))
            throw std::invalid_argument("operator_var: base/direction grid mismatch");

    Vec flat_base, flat_dir;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const Vec& s = base[i].samples();
        const Vec& d = dir[i].samples();
        flat_base.insert(flat_base.end(), s.begin(), s.end());
        flat_dir.insert(flat_dir.end(), d.begin(), d.end());
    }

    auto unflatten = [&](const Vec& p) {
        std::vector<GridFn> args;
        args.reserve(base.size());
        std::size_t off = 0;
        for (const GridFn& b : base) {
            Vec s(p.begin() + static_cast<std::ptrdiff_t>(off),
                  p.begin() + static_cast<std::ptrdiff_t>(off + b.n_nodes()));
            off += b.n_nodes();
            args.push_back(b.with_samples(std::move(s)));
        }
        return args;
    };

    GridFn shape = F.eval(base);
    auto evaluator = [&](const Vec& p) { return F.eval(unflatten(p)).samples(); };
    Vec value = vector_limit_quotient(evaluator, flat_base, flat_dir, cfg).first;
    return shape.with_samples(std::move(value));
}

double seminorm(const GridFn& x, int m, double k_lo, double k_hi) {
    if (!(k_lo <= k_hi)) throw std::invalid_argument("seminorm: need k_lo <= k_hi");
    GridFn d = x.stencil_derivative(m);
    double res = 0.0;
    const double eps = 0.5 * x.step();
    for (std::size_t j = 0; j < d.n_nodes(); ++j) {
        double t = d.node(j);
        if (t >= k_lo - eps && t <= k_hi + eps) res = std::max(res, std::fabs(d[j]));
    }
    return res;
}

FixedPointResult seip_norm_fixed_point(const SmoothFn& phi, double a, double b,
                                       std::size_t n_cells, double tol) {
    if (phi.arity_in() != 2 || phi.arity_out() != 1)
        throw std::invalid_argument("seip_norm_fixed_point: phi must be (s, x) -> scalar");

    FixedPointResult res;
    res.report.suite = "seip_norm_fixed_point";

    GridFn zero = GridFn::constant(a, b, n_cells, 0.0);

    // Contraction implies every iterate from 0 stays within radius
    // 2 * sup |phi(s, 0)|; certify the sampled Lipschitz bound there.
    double m0 = 0.0;
    for (std::size_t j = 0; j <= n_cells; ++j)
        m0 = std::max(m0, std::fabs(phi(Vec{zero.node(j), 0.0})[0]));
    double R = 2.0 * m0 + 1.0;

    const int nx = 64;
    double L = 0.0;
    for (std::size_t j = 0; j <= n_cells; ++j) {
        double s = zero.node(j);
        double prev = phi(Vec{s, -R})[0];
        for (int i = 1; i <= nx; ++i) {
            double x = -R + 2.0 * R * static_cast<double>(i) / nx;
            double cur = phi(Vec{s, x})[0];
            L = std::max(L, std::fabs(cur - prev) / (2.0 * R / nx));
            prev = cur;
        }
    }
    res.lipschitz_estimate = L;
    if (L > 0.5 + 1e-6) {
        std::ostringstream os;
        os << "sampled Lipschitz bound " << L << " exceeds 1/2 on |x| <= " << R;
        throw LipschitzViolated(os.str());
    }
    res.report.add("lipschitz_bound_half", true, L, "radius " + std::to_string(R));

    auto step = [&](const GridFn& x) {
        Vec out;
        kernels::map_parallel(x.n_nodes(),
                              [&](std::size_t j) { return phi(Vec{x.node(j), x[j]})[0]; },
                              out);
        return x.with_samples(std::move(out));
    };

    GridFn x = zero;
    const int max_iter = 10000;
    double change = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        GridFn next = step(x);
        change = next.sup_dist(x);
        x = next;
        if (change < tol) break;
    }
    if (change >= tol)
        throw NoConvergence("seip_norm_fixed_point: no convergence in " +
                            std::to_string(max_iter) + " iterations");
    res.fixed_point = x;
    res.iterations = it + 1;
    res.final_change = change;

    // contraction of the superposition map itself on sampled pairs
    std::uint64_t st = 0x5eed5eedULL;
    auto rng = [&]() {
        st += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = st;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
    };
    bool contract_ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        Vec su(n_cells + 1), sv(n_cells + 1);
        for (std::size_t j = 0; j <= n_cells; ++j) {
            su[j] = (2.0 * rng() - 1.0) * (R - 1.0);
            sv[j] = (2.0 * rng() - 1.0) * (R - 1.0);
        }
        GridFn u = zero.with_samples(std::move(su));
        GridFn v = zero.with_samples(std::move(sv));
        double num = step(u).sup_dist(step(v));
        double den = u.sup_dist(v);
        if (den > 0) {
            double q = num / den;
            worst = std::max(worst, q);
            if (q > 0.5 + 1e-6) contract_ok = false;
        }
    }
    res.report.add("superposition_contraction", contract_ok, worst,
                   "worst ratio over 8 sampled pairs");
    res.report.trials = 8;
    if (!contract_ok)
        throw LipschitzViolated("seip_norm_fixed_point: contraction ratio " +
                                std::to_string(worst));
    return res;
}

}  // namespace dqcalc
