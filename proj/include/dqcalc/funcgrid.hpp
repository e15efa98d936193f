#pragma once

/**
 * @file funcgrid.hpp
 * @brief Grid-discretized surrogate for spaces of smooth functions on
 * an interval: superposition and composition operators, compact-open
 * style seminorms, operator variations, and the Seip-norm fixed point.
 */

#include "dqcalc/numdiff.hpp"
#include "dqcalc/report.hpp"
#include "dqcalc/smoothfn.hpp"

namespace dqcalc {

struct OrderUnsupported : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct LipschitzViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniformly sampled function on [a,b].  Compact-support functions
/// (support_flag) extend by zero outside the interval when evaluated
/// off-grid; plain interval functions treat that as a domain error.
class GridFn {
  public:
    GridFn() = default;
    GridFn(double a, double b, Vec samples, bool compact_support = false);

    static GridFn constant(double a, double b, std::size_t n_cells, double value,
                           bool compact_support = false);
    static GridFn sample(double a, double b, std::size_t n_cells,
                         const std::function<double(double)>& f,
                         bool compact_support = false);

    double a() const { return a_; }
    double b() const { return b_; }
    double step() const { return h_; }
    std::size_t n_cells() const { return samples_.size() - 1; }
    std::size_t n_nodes() const { return samples_.size(); }
    bool compact_support() const { return support_; }
    const Vec& samples() const { return samples_; }
    double node(std::size_t j) const { return a_ + h_ * static_cast<double>(j); }
    double operator[](std::size_t j) const { return samples_[j]; }

    bool same_grid(const GridFn& o) const {
        return a_ == o.a_ && b_ == o.b_ && samples_.size() == o.samples_.size();
    }

    GridFn with_samples(Vec samples) const { return GridFn(a_, b_, std::move(samples), support_); }

    GridFn operator+(const GridFn& o) const;
    GridFn operator-(const GridFn& o) const;
    GridFn scaled(double c) const;

    double sup_dist(const GridFn& o) const;
    double sup_abs() const;

    /// m-th derivative samples by repeated 4th-order stencils (central
    /// interior, one-sided within two cells of each boundary); exact on
    /// polynomial data of degree <= 4.  m in [0,4].
    GridFn stencil_derivative(int m) const;

    /// Smooth interpolant through the samples, evaluated at t: piecewise
    /// quintic Hermite with node derivatives from the 4th-order stencils
    /// (natural cubic fallback below 5 nodes).  For compact-support
    /// functions, zero outside [a,b]; otherwise throws DomainError.
    double spline_eval(double t) const;

    /// CSV rows "t,value".
    std::string to_csv() const;
    /// Two-column whitespace-separated plot data.
    std::string to_dat() const;

  private:
    void ensure_spline() const;

    double a_ = 0.0, b_ = 1.0, h_ = 0.0;
    Vec samples_;
    bool support_ = false;
    mutable Vec spline_m_;           // cubic fallback: node second derivatives
    mutable Vec herm_d1_, herm_d2_;  // stencil derivatives at nodes, lazy
};

/// Map taking a tuple of grid functions to one grid function.
struct GridOperator {
    int arity = 1;
    std::function<GridFn(const std::vector<GridFn>&)> eval;
};

/// Pointwise phi(x(t_j)) for a scalar 1 -> 1 map.
GridFn superpose(const SmoothFn& phi, const GridFn& x);

/// t_j |-> spline(x)(t_j + y(t_j)).
GridFn compose_shift(const GridFn& x, const GridFn& y);

/// Richardson-extrapolated samplewise limit of t^-1 (F(base+t dir) - F(base)).
GridFn operator_var(const GridOperator& F, const std::vector<GridFn>& base,
                    const std::vector<GridFn>& dir, const ExtrapConfig& cfg = {});

/// max over grid nodes in [k_lo, k_hi] of |m-th stencil derivative|.
double seminorm(const GridFn& x, int m, double k_lo, double k_hi);

struct FixedPointResult {
    GridFn fixed_point;
    int iterations = 0;
    double final_change = 0.0;
    double lipschitz_estimate = 0.0;
    VerificationReport report;
};

/// Iterates x_{n+1}(s) = phi(s, x_n(s)) from x_0 = 0 after certifying
/// the sampled Lipschitz bound <= 1/2 in the second argument; verifies
/// the Seip-norm contraction pointwise on sampled pairs.
FixedPointResult seip_norm_fixed_point(const SmoothFn& phi, double a, double b,
                                       std::size_t n_cells, double tol);

}  // namespace dqcalc
