#pragma once

/**
 * @file smoothfn.hpp
 * @brief Black-box numeric maps on finite-dimensional real spaces.
 */

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dqcalc {

using Vec = std::vector<double>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Axis-aligned domain box.
struct Box {
    Vec lo, hi;
    bool contains(const Vec& x) const {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
    /// Distance from x to the nearest face, negative outside.
    double interior_margin(const Vec& x) const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < x.size(); ++i)
            m = std::min({m, x[i] - lo[i], hi[i] - x[i]});
        return m;
    }
};

/// Pure numeric map with known arity and optional domain box.
class SmoothFn {
  public:
    SmoothFn() = default;
    SmoothFn(int arity_in, int arity_out, std::function<Vec(const Vec&)> eval,
             std::optional<Box> box = std::nullopt)
        : arity_in_(arity_in), arity_out_(arity_out), eval_(std::move(eval)),
          box_(std::move(box)) {}

    /// Scalar 1 -> 1 convenience wrapper.
    static SmoothFn scalar(std::function<double(double)> f,
                           std::optional<std::pair<double, double>> interval = std::nullopt) {
        std::optional<Box> box;
        if (interval) box = Box{{interval->first}, {interval->second}};
        return SmoothFn(1, 1, [f = std::move(f)](const Vec& x) { return Vec{f(x[0])}; },
                        std::move(box));
    }

    int arity_in() const { return arity_in_; }
    int arity_out() const { return arity_out_; }
    const std::optional<Box>& box() const { return box_; }

    Vec operator()(const Vec& x) const {
        if (static_cast<int>(x.size()) != arity_in_)
            throw std::invalid_argument("SmoothFn: arity mismatch");
        if (box_ && !box_->contains(x)) throw DomainError("SmoothFn: point outside domain box");
        Vec y = eval_(x);
        if (static_cast<int>(y.size()) != arity_out_)
            throw std::logic_error("SmoothFn: evaluator returned wrong arity");
        for (double v : y)
            if (!std::isfinite(v)) throw NonFinite("SmoothFn: non-finite output");
        return y;
    }

    bool in_domain(const Vec& x) const { return !box_ || box_->contains(x); }

  private:
    int arity_in_ = 0;
    int arity_out_ = 0;
    std::function<Vec(const Vec&)> eval_;
    std::optional<Box> box_;
};

inline Vec axpy(const Vec& x, double t, const Vec& u) {
    Vec r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += t * u[i];
    return r;
}

inline double sup_norm(const Vec& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline Vec vsub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec vadd(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec vscale(double c, const Vec& a) {
    Vec r = a;
    for (double& x : r) x *= c;
    return r;
}

}  // namespace dqcalc
