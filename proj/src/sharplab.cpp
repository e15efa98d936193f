#include "dqcalc/sharplab.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace dqcalc {

void SharpConfig::validate() const {
    if (!phi.phi || !phi.d1 || !phi.d2 || !phi.d3)
        throw std::invalid_argument("SharpConfig: phi and three derivatives required");
    if (!(eps > 0)) throw std::invalid_argument("SharpConfig: eps must be > 0");
    if (grid_n < 256) throw std::invalid_argument("SharpConfig: grid_n must be >= 256");
    if (ode_steps < 100) throw std::invalid_argument("SharpConfig: ode_steps must be >= 100");
    if (quad_nodes < 17 || quad_nodes % 2 == 0)
        throw std::invalid_argument("SharpConfig: quad_nodes must be odd and >= 17");
}

SharpConfig SharpConfig::exp_default() {
    SharpConfig cfg;
    cfg.phi.phi = [](double t) { return t + std::exp(t); };
    cfg.phi.d1 = [](double t) { return 1.0 + std::exp(t); };
    cfg.phi.d2 = [](double t) { return std::exp(t); };
    cfg.phi.d3 = [](double t) { return std::exp(t); };
    return cfg;
}

namespace {

void check_phi_domain(const SharpConfig& cfg, double t) {
    if (t < cfg.phi.dom_lo || t > cfg.phi.dom_hi)
        throw DomainError("sharplab: point outside phi's domain");
}

// composite Simpson on [0,1] with n odd nodes
double simpson01(int n, const std::function<double(double)>& f) {
    double h = 1.0 / static_cast<double>(n - 1);
    double acc = f(0.0) + f(1.0);
    for (int i = 1; i + 1 < n; ++i)
        acc += (i % 2 == 1 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
    return acc * h / 3.0;
}

double coefficient_A_at(double eta, const SharpConfig& cfg, int nodes) {
    check_phi_domain(cfg, cfg.xi);
    check_phi_domain(cfg, cfg.xi + eta);
    auto inner = [&](double s1) {
        return simpson01(nodes, [&](double s) {
            double p = cfg.xi + s1 * s * eta;
            return s1 * s * s * cfg.phi.d3(p) * eta * eta + 2.0 * s * cfg.phi.d2(p) * eta;
        });
    };
    return simpson01(nodes, inner);
}

}  // namespace

double coefficient_A(double eta, const SharpConfig& cfg, double* err_est) {
    double coarse = coefficient_A_at(eta, cfg, cfg.quad_nodes);
    double fine = coefficient_A_at(eta, cfg, 2 * cfg.quad_nodes - 1);
    double err = std::fabs(fine - coarse);
    if (err_est) *err_est = err;
    if (err > 1e-6 * std::max(1.0, std::fabs(fine)))
        throw NoConvergence("coefficient_A: node doubling changed the value by " +
                            std::to_string(err));
    return fine;
}

GridFn remainder_rho(const GridFn& u, const SharpConfig& cfg) {
    check_phi_domain(cfg, cfg.xi);
    Vec out(u.n_nodes());
    double pxi = cfg.phi.phi(cfg.xi);
    double dxi = cfg.phi.d1(cfg.xi);
    for (std::size_t j = 0; j < out.size(); ++j) {
        check_phi_domain(cfg, cfg.xi + u[j]);
        out[j] = cfg.phi.phi(cfg.xi + u[j]) - pxi - dxi * u[j];
    }
    return u.with_samples(std::move(out));
}

double remainder_rho_crosscheck(const GridFn& u, const SharpConfig& cfg) {
    GridFn rho = remainder_rho(u, cfg);
    double worst = 0.0;
    for (std::size_t j = 0; j < u.n_nodes(); ++j) {
        double uj = u[j];
        auto inner = [&](double s1) {
            return simpson01(cfg.quad_nodes, [&](double s) {
                return s * cfg.phi.d2(cfg.xi + s1 * s * uj) * uj * uj;
            });
        };
        double integral = simpson01(cfg.quad_nodes, inner);
        worst = std::max(worst, std::fabs(integral - rho[j]));
    }
    return worst;
}

GridFn h_map(const GridFn& u, const SharpConfig& cfg) {
    return u + remainder_rho(u, cfg).stencil_derivative(1);
}

GridFn solve_ode(double eta0, const SharpConfig& cfg, double* err_est) {
    cfg.validate();

    // A is smooth and cheap but hit 4x per step; memo on quantized eta.
    std::map<long long, double> memo;
    auto A = [&](double eta) {
        auto key = static_cast<long long>(std::llround(eta * 1e12));
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        double v = coefficient_A(eta, cfg);
        if (std::fabs(v) <= 1e-6)
            throw SingularCoefficient("solve_ode: |A(" + std::to_string(eta) +
                                      ")| <= 1e-6 along the trajectory");
        memo.emplace(key, v);
        return v;
    };
    auto rhs = [&](double u) {
        if (u == cfg.eps) return 0.0;  // stationary point, A not needed
        return (cfg.eps - u) / A(u);
    };

    auto rk4 = [&](int steps) {
        Vec traj(static_cast<std::size_t>(steps) + 1);
        double h = 1.0 / static_cast<double>(steps);
        double u = eta0;
        traj[0] = u;
        for (int i = 0; i < steps; ++i) {
            double k1 = rhs(u);
            double k2 = rhs(u + 0.5 * h * k1);
            double k3 = rhs(u + 0.5 * h * k2);
            double k4 = rhs(u + h * k3);
            u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            traj[static_cast<std::size_t>(i) + 1] = u;
        }
        return traj;
    };

    Vec traj = rk4(cfg.ode_steps);
    if (err_est) {
        Vec fine = rk4(2 * cfg.ode_steps);
        double worst = 0.0;
        for (std::size_t j = 0; j < traj.size(); ++j)
            worst = std::max(worst, std::fabs(traj[j] - fine[2 * j]));
        *err_est = worst;
    }

    // Dense output by cubic Hermite on each step, with the node slopes
    // taken from the ODE itself; keeps 4th-order accuracy off-grid.
    Vec slope(traj.size());
    for (std::size_t j = 0; j < traj.size(); ++j) slope[j] = rhs(traj[j]);
    double hstep = 1.0 / static_cast<double>(cfg.ode_steps);
    auto dense = [&](double t) {
        auto i = static_cast<std::size_t>(t / hstep);
        if (i + 1 >= traj.size()) i = traj.size() - 2;
        double s = (t - hstep * static_cast<double>(i)) / hstep;
        double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        double h10 = s * (1 - s) * (1 - s);
        double h01 = s * s * (3 - 2 * s);
        double h11 = s * s * (s - 1);
        return h00 * traj[i] + h10 * hstep * slope[i] + h01 * traj[i + 1] +
               h11 * hstep * slope[i + 1];
    };
    GridFn u = GridFn::sample(0.0, 1.0, cfg.grid_n, dense);

    GridFn du = u.stencil_derivative(1);
    double resid = 0.0;
    for (std::size_t j = 0; j < u.n_nodes(); ++j) {
        double chi = u[j] - cfg.eps + du[j] * (u[j] == cfg.eps ? 1.0 : A(u[j]));
        resid = std::max(resid, std::fabs(chi));
    }
    if (resid >= cfg.tol_demo)
        throw ResidualTooLarge("solve_ode: ODE residual " + std::to_string(resid) +
                               " >= " + std::to_string(cfg.tol_demo));
    return u;
}

DemoResult noninjectivity_demo(const SharpConfig& cfg) {
    cfg.validate();
    if (cfg.eta0 == cfg.eps)
        throw DegenerateConfig("noninjectivity_demo: eta0 must differ from eps");

    DemoResult res;
    res.report.suite = "noninjectivity_demo";

    double a_err = 0.0;
    res.A_eps = coefficient_A(cfg.eps, cfg, &a_err);
    if (std::fabs(res.A_eps) <= 1e-6)
        throw SingularCoefficient("noninjectivity_demo: A(eps) = " +
                                  std::to_string(res.A_eps) + " is too close to 0");
    res.report.add("coefficient_nonzero", true, a_err,
                   "A(eps) = " + std::to_string(res.A_eps));

    res.u0 = GridFn::constant(0.0, 1.0, cfg.grid_n, cfg.eps);
    res.u1 = solve_ode(cfg.eta0, cfg);
    res.h_u1 = h_map(res.u1, cfg);

    res.sup_dist_u = res.u1.sup_dist(res.u0);
    bool distinct = res.sup_dist_u >= std::fabs(cfg.eta0 - cfg.eps) - 1e-12;
    res.report.add("inputs_distinct", distinct, res.sup_dist_u,
                   "||u1 - u0|| vs |eta0 - eps| = " +
                       std::to_string(std::fabs(cfg.eta0 - cfg.eps)));

    double fixed = h_map(res.u0, cfg).sup_dist(res.u0);
    res.report.add("h_fixes_constant", fixed == 0.0, fixed, "h(u0) = u0 exactly");

    res.sup_dist_h = res.h_u1.sup_dist(res.u0);
    res.report.add("images_collide", res.sup_dist_h < cfg.tol_demo, res.sup_dist_h,
                   "||h(u1) - u0|| < " + std::to_string(cfg.tol_demo));

    std::ostringstream os;
    os << "two preimages of the constant " << cfg.eps << ": sup gap " << res.sup_dist_u
       << " in, " << res.sup_dist_h << " out";
    res.report.notes.push_back(os.str());
    return res;
}

}  // namespace dqcalc
