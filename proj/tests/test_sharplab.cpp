#include <doctest.h>

#include <cmath>

#include "dqcalc/sharplab.hpp"

using namespace dqcalc;

namespace {

SharpConfig affine_cfg() {
    SharpConfig cfg;
    cfg.phi.phi = [](double t) { return 2.0 * t + 1.0; };
    cfg.phi.d1 = [](double) { return 2.0; };
    cfg.phi.d2 = [](double) { return 0.0; };
    cfg.phi.d3 = [](double) { return 0.0; };
    return cfg;
}

SharpConfig square_cfg() {
    SharpConfig cfg;
    cfg.phi.phi = [](double t) { return t * t; };
    cfg.phi.d1 = [](double t) { return 2.0 * t; };
    cfg.phi.d2 = [](double) { return 2.0; };
    cfg.phi.d3 = [](double) { return 0.0; };
    return cfg;
}

}  // namespace

TEST_CASE("config invariants are enforced") {
    auto cfg = SharpConfig::exp_default();
    cfg.grid_n = 100;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SharpConfig::exp_default();
    cfg.quad_nodes = 16;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("coefficient quadrature against the closed form") {
    auto cfg = SharpConfig::exp_default();
    // for phi = t + e^t, xi = 0 the double integral collapses to
    // phi'(eta) - phi'(0) = e^eta - 1
    for (double eta : {0.05, 0.1, 0.2}) {
        double err = 0.0;
        double a = coefficient_A(eta, cfg, &err);
        CHECK(a == doctest::Approx(std::exp(eta) - 1.0).epsilon(1e-9));
        CHECK(err < 1e-9);
    }
    CHECK(coefficient_A(0.0, cfg) == 0.0);
    CHECK(coefficient_A(0.1, affine_cfg()) == 0.0);
}

TEST_CASE("remainder: pointwise form and its integral cross-check") {
    auto cfg = SharpConfig::exp_default();
    GridFn zero = GridFn::constant(0.0, 1.0, 256, 0.0);
    CHECK(remainder_rho(zero, cfg).sup_abs() == 0.0);

    GridFn c = GridFn::constant(0.0, 1.0, 256, 0.1);
    GridFn rho = remainder_rho(c, cfg);
    double expected = std::exp(0.1) - 1.0 - 0.1;
    for (std::size_t j = 0; j < rho.n_nodes(); j += 50)
        CHECK(rho[j] == doctest::Approx(expected).epsilon(1e-12));

    // phi = t^2 gives rho(u) = u^2 exactly
    GridFn u = GridFn::sample(0.0, 1.0, 256, [](double t) { return 0.3 * t; });
    GridFn rho2 = remainder_rho(u, square_cfg());
    for (std::size_t j = 0; j < rho2.n_nodes(); j += 50)
        CHECK(rho2[j] == doctest::Approx(u[j] * u[j]).epsilon(1e-12));

    CHECK(remainder_rho_crosscheck(u, SharpConfig::exp_default()) < 1e-9);
}

TEST_CASE("remainder is quadratically small") {
    auto cfg = SharpConfig::exp_default();
    GridFn u = GridFn::sample(0.0, 1.0, 256, [](double t) { return std::sin(3 * t); });
    double r2 = remainder_rho(u.scaled(1e-2), cfg).sup_abs() / 1e-4;
    double r3 = remainder_rho(u.scaled(1e-3), cfg).sup_abs() / 1e-6;
    CHECK(std::fabs(r2 - r3) / r3 < 0.1);
}

TEST_CASE("h fixes constants and matches the hand identity on linear data") {
    auto cfg = SharpConfig::exp_default();
    GridFn u0 = GridFn::constant(0.0, 1.0, cfg.grid_n, cfg.eps);
    CHECK(h_map(u0, cfg).sup_dist(u0) == 0.0);
    GridFn zero = GridFn::constant(0.0, 1.0, cfg.grid_n, 0.0);
    CHECK(h_map(zero, cfg).sup_abs() == 0.0);

    // u(t) = eps t: (rho(u))' = u' (phi'(xi+u) - phi'(xi)) = eps(e^{eps t} - 1)
    double eps = cfg.eps;
    GridFn lin = GridFn::sample(0.0, 1.0, cfg.grid_n, [&](double t) { return eps * t; });
    GridFn h = h_map(lin, cfg);
    for (std::size_t j = 0; j < h.n_nodes(); j += 100) {
        double t = h.node(j);
        double expect = eps * t + eps * (std::exp(eps * t) - 1.0);
        CHECK(h[j] == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("h(u) equals u + u' A(u) samplewise") {
    auto cfg = SharpConfig::exp_default();
    cfg.grid_n = 512;
    GridFn u = GridFn::sample(0.0, 1.0, cfg.grid_n,
                              [](double t) { return 0.1 + 0.05 * std::sin(2 * t); });
    GridFn h = h_map(u, cfg);
    GridFn du = u.stencil_derivative(1);
    double worst = 0.0;
    for (std::size_t j = 0; j < h.n_nodes(); ++j) {
        double rhs = u[j] + du[j] * coefficient_A(u[j], cfg);
        worst = std::max(worst, std::fabs(h[j] - rhs));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("the stationary initial value gives the constant solution") {
    auto cfg = SharpConfig::exp_default();
    GridFn u = solve_ode(cfg.eps, cfg);
    CHECK(u.sup_dist(GridFn::constant(0.0, 1.0, cfg.grid_n, cfg.eps)) < 1e-14);
}

TEST_CASE("solutions from above decrease monotonically toward eps") {
    auto cfg = SharpConfig::exp_default();
    double err = 0.0;
    GridFn u = solve_ode(cfg.eta0, cfg, &err);
    CHECK(err < 1e-10);
    CHECK(u[0] == doctest::Approx(cfg.eta0));
    for (std::size_t j = 1; j < u.n_nodes(); ++j) CHECK(u[j] <= u[j - 1] + 1e-14);
    CHECK(u[u.n_nodes() - 1] > cfg.eps);
}

TEST_CASE("RK4 residual order is 4 under step halving") {
    auto cfg = SharpConfig::exp_default();
    std::vector<double> errs;
    for (int steps : {100, 200, 400}) {
        cfg.ode_steps = steps;
        double err = 0.0;
        solve_ode(cfg.eta0, cfg, &err);
        errs.push_back(err);
    }
    double o1 = std::log2(errs[0] / errs[1]);
    double o2 = std::log2(errs[1] / errs[2]);
    CHECK(o1 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(o2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("demo produces two distinct preimages of the constant") {
    auto cfg = SharpConfig::exp_default();
    DemoResult demo = noninjectivity_demo(cfg);
    CHECK(demo.report.all_passed());
    CHECK(demo.A_eps == doctest::Approx(0.105).epsilon(0.05));
    CHECK(demo.sup_dist_u >= 0.019);
    CHECK(demo.sup_dist_h < 1e-4);
}

TEST_CASE("degenerate and singular configurations are refused") {
    auto cfg = SharpConfig::exp_default();
    cfg.eta0 = cfg.eps;
    CHECK_THROWS_AS(noninjectivity_demo(cfg), DegenerateConfig);
    auto aff = affine_cfg();
    CHECK_THROWS_AS(noninjectivity_demo(aff), SingularCoefficient);
}
