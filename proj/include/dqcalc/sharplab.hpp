#pragma once

/**
 * @file sharplab.hpp
 * @brief Non-injectivity lab for the remainder-derivative map.
 *
 * For a scalar function phi and base point xi, the quadratic remainder
 * is rho(u)(t) = phi(xi + u(t)) - phi(xi) - phi'(xi) u(t) and the map
 * under study is h(u) = u + (rho(u))'.  The preimages of the constant
 * u0 = eps are solutions of the scalar ODE u' = (eps - u) / A(u) with
 * A(eta) = int_0^1 int_0^1 (s1 s^2 phi'''(xi + s1 s eta) eta^2
 *                           + 2 s phi''(xi + s1 s eta) eta) ds ds1,
 * so distinct initial values give distinct functions with the same
 * image: h is not injective.
 */

#include "dqcalc/funcgrid.hpp"
#include "dqcalc/report.hpp"

namespace dqcalc {

struct SingularCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResidualTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// phi with its first three derivatives, supplied analytically: the
/// A-integrand needs third derivatives at quadrature accuracy.
struct PhiPack {
    std::function<double(double)> phi, d1, d2, d3;
    double dom_lo = -std::numeric_limits<double>::infinity();
    double dom_hi = std::numeric_limits<double>::infinity();
};

struct SharpConfig {
    PhiPack phi;
    double xi = 0.0;
    double eps = 0.1;
    double eta0 = 0.12;
    std::size_t grid_n = 2000;   // output grid cells on [0,1]
    int ode_steps = 1000;        // fixed RK4 steps
    int quad_nodes = 65;         // per-axis Simpson nodes, odd >= 17
    double tol_demo = 1e-5;

    void validate() const;

    /// phi(t) = t + e^t at xi = 0, the standard witness.
    static SharpConfig exp_default();
};

/// A(eta) by nested composite Simpson; if err_est is non-null it gets
/// the change under one node-doubling.
double coefficient_A(double eta, const SharpConfig& cfg, double* err_est = nullptr);

/// Pointwise quadratic remainder rho(u).
GridFn remainder_rho(const GridFn& u, const SharpConfig& cfg);

/// Max gap between the pointwise remainder and its double-integral form
/// int int s phi''(xi + s1 s u) u^2 ds ds1.
double remainder_rho_crosscheck(const GridFn& u, const SharpConfig& cfg);

/// h(u) = u + stencil derivative of rho(u).
GridFn h_map(const GridFn& u, const SharpConfig& cfg);

/// RK4 solve of u' = (eps - u)/A(u), u(0) = eta0, resampled onto the
/// grid_n grid; verifies max_t |u - eps + u' A(u)| < tol_demo.  If
/// err_est is non-null it gets the step-halving difference.
GridFn solve_ode(double eta0, const SharpConfig& cfg, double* err_est = nullptr);

struct DemoResult {
    VerificationReport report;
    GridFn u0, u1, h_u1;
    double A_eps = 0.0;
    double sup_dist_u = 0.0;    // ||u1 - u0||_inf
    double sup_dist_h = 0.0;    // ||h(u1) - u0||_inf
};

/// Two distinct preimages of the constant eps under h: u0 = eps itself
/// and the ODE solution from eta0.
DemoResult noninjectivity_demo(const SharpConfig& cfg);

}  // namespace dqcalc
