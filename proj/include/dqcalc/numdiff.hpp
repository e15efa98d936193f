#pragma once

/**
 * @file numdiff.hpp
 * @brief Numeric difference quotients and variations of black-box maps.
 *
 * The limit t -> 0 is estimated from symmetric two-sided quotients over
 * a geometric step sequence, followed by Richardson extrapolation.  The
 * averaging cancels even-order error terms and lets one-sided mismatch
 * reveal kinks (NotDifferentiable) as opposed to mere slow convergence
 * (NoConvergence).
 */

#include <map>

#include "dqcalc/report.hpp"
#include "dqcalc/smoothfn.hpp"

namespace dqcalc {

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotDifferentiable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExtrapConfig {
    double t0 = 0.1;         // initial step
    double ratio = 0.5;      // geometric step ratio, in (0,1)
    int max_levels = 12;     // number of steps t0 * ratio^j
    int richardson_order = 4;  // extrapolation table width
    double tol_conv = 1e-9;  // convergence threshold on extrapolants

    void validate() const {
        if (!(t0 > 0) || !(ratio > 0 && ratio < 1) || max_levels < 3)
            throw std::invalid_argument("ExtrapConfig: need t0>0, 0<ratio<1, max_levels>=3");
    }
};

/// Value of a higher-order variation with its error estimate.
struct JetTensor {
    int order = 0;
    Vec base;
    std::vector<Vec> directions;
    Vec value;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Shared per-call evaluation cache; nested differentiation re-requests
/// the same points many times.
class EvalCache {
  public:
    explicit EvalCache(const SmoothFn& f) : f_(&f) {}
    Vec operator()(const Vec& x) {
        auto it = memo_.find(x);
        if (it != memo_.end()) return it->second;
        Vec y = (*f_)(x);
        memo_.emplace(x, y);
        return y;
    }
    std::size_t size() const { return memo_.size(); }

  private:
    const SmoothFn* f_;
    std::map<Vec, Vec> memo_;
};

/// Plain quotient (f(x+tu) - f(x)) / t at t != 0.
Vec difq_num(const SmoothFn& f, const Vec& x, const Vec& u, double t);

/// First-order variation delta f(x, u) with error estimate.
std::pair<Vec, double> seip_var(const SmoothFn& f, const Vec& x, const Vec& u,
                                const ExtrapConfig& cfg = {});

/// Order-k variation along the nested recursion: level i differentiates
/// level i-1 in direction dirs[i-1] as a function of the base point.
JetTensor seip_var_k(const SmoothFn& f, const Vec& x, const std::vector<Vec>& dirs,
                     const ExtrapConfig& cfg = {});

/// t != 0: exact quotient; t = 0: extrapolated variation.
Vec bgn_difq_num(const SmoothFn& f, const Vec& x, const Vec& u, double t,
                 const ExtrapConfig& cfg = {});

/// Linearity of u -> delta f(x, u) on seeded random directions.
VerificationReport check_linearity(const SmoothFn& f, const Vec& x, int trials,
                                   std::uint64_t seed, const ExtrapConfig& cfg = {});

/// Chain rule, constants, linear and bilinear maps, pairing, order-2
/// zero padding, and permutation symmetry, on a fixed smooth test set.
VerificationReport calculus_rule_suite(int trials, std::uint64_t seed,
                                       const ExtrapConfig& cfg = {});

/// Converts an exact polynomial map to a black-box double evaluator.
class PolyMap;
SmoothFn poly_to_smooth(const PolyMap& f);

/// Extrapolated limit t -> 0 of t^-1 (F(x+tu) - F(x)) for an arbitrary
/// evaluator; the machinery behind seip_var, shared with the grid
/// operators.  t_cap > 0 bounds the initial step.
std::pair<Vec, double> vector_limit_quotient(const std::function<Vec(const Vec&)>& F,
                                             const Vec& x, const Vec& u,
                                             const ExtrapConfig& cfg, double t_cap = 0.0);

}  // namespace dqcalc
