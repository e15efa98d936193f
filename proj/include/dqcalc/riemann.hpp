#pragma once

/**
 * @file riemann.hpp
 * @brief Riemann integration of vector-valued curves via tagged
 * partitions, the I^k integral operators, and the associated identity
 * checks (mean value containment, differentiation under the integral,
 * the quotient-vs-variation integral identity).
 */

#include "dqcalc/numdiff.hpp"
#include "dqcalc/report.hpp"
#include "dqcalc/smoothfn.hpp"

namespace dqcalc {

struct PartitionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Partition nodes t0 <= ... <= tk of [a,b] with one tag per cell,
/// t_i <= s_i <= t_{i+1}.
struct TaggedPartition {
    std::vector<double> nodes;
    std::vector<double> tags;

    TaggedPartition(std::vector<double> nodes, std::vector<double> tags);

    double a() const { return nodes.front(); }
    double b() const { return nodes.back(); }
    std::size_t cells() const { return tags.size(); }
    double mesh() const;

    enum class TagRule { Midpoint, Left };
    static TaggedPartition uniform(double a, double b, std::size_t cells,
                                   TagRule rule = TagRule::Midpoint);
};

/// Curve on [a,b] into R^m.
struct Curve {
    double a = 0.0, b = 1.0;
    int dim = 1;
    std::function<Vec(double)> eval;

    static Curve scalar(double a, double b, std::function<double(double)> f) {
        return Curve{a, b, 1, [f = std::move(f)](double s) { return Vec{f(s)}; }};
    }
};

/// Plain tagged Riemann sum: sum (t_{i+1}-t_i) * gamma(s_i).
Vec riemann_sum(const Curve& gamma, const TaggedPartition& partition);

/// Serial reference for riemann_sum (same blocking, no OpenMP); kept
/// for the determinism test and the kernel benchmark.
Vec riemann_sum_serial(const Curve& gamma, const TaggedPartition& partition);

struct IntegrateResult {
    Vec value;
    double error_estimate = 0.0;
    std::size_t cells = 0;
    /// Convergence history rows: (cells, sum components..., successive diff).
    std::vector<std::vector<double>> table;
};

/// Uniform midpoint-tagged partitions with doubling cell counts; stops
/// when two successive sums differ (sup norm) by less than tol.
IntegrateResult integrate(const Curve& gamma, double a, double b, double tol,
                          std::size_t max_cells = (std::size_t{1} << 20));

/// I^k g(x, u) = integral_0^1 s^k g(x + s u) ds.
Vec integral_op_Ik(const SmoothFn& g, int k, const Vec& x, const Vec& u,
                   double tol = 1e-9);

/// c(1) - c(0) lies in the interval hull of sampled derivative values.
VerificationReport mvt_containment_check(const Curve& c, int sample_count, double tol,
                                         const ExtrapConfig& cfg = {});

/// | D c(t) - integral of D(Gamma(s))(t) ds | for c(t) = integral of
/// Gamma(s)(t) ds; both sides numeric.
double under_integral_deriv_check(const std::function<double(double, double)>& family,
                                  double t, double tol, const ExtrapConfig& cfg = {});

/// Sup-norm of bgn_difq_num(f,x,u,t) minus integral_0^1 delta f(x+stu, u) ds.
double thm52_identity_residual(const SmoothFn& f, const Vec& x, const Vec& u, double t,
                               const ExtrapConfig& cfg = {}, double quad_tol = 1e-10);

/// Sup-norm of the numeric variation of I^k g at ((x,u),(y,v)) minus
/// integral_0^1 (s^k delta g(x+su, y) + s^{k+1} delta g(x+su, v)) ds.
double lemma50_variation_residual(const SmoothFn& g, int k, const Vec& x, const Vec& u,
                                  const Vec& y, const Vec& v, const ExtrapConfig& cfg = {},
                                  double quad_tol = 1e-10);

}  // namespace dqcalc
