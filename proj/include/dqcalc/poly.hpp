#pragma once

/**
 * @file poly.hpp
 * @brief Exact multivariate polynomial maps over the exact rings.
 *
 * Sparse monomial representation in graded lexicographic order, so that
 * polynomial identity is list identity.  These maps are the ground-truth
 * oracle for the numeric engine: difference quotients and variations are
 * computed symbolically and exactly.
 */

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dqcalc/rings.hpp"

namespace dqcalc {

struct ArityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SizeLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Monomial {
    RingElem coeff;
    std::vector<std::uint32_t> exps;  // one exponent per variable
};

/// Single polynomial in a fixed number of variables.
class Poly {
  public:
    Poly() = default;
    Poly(RingId rid, int nvars) : rid_(rid), nvars_(nvars) {}

    static Poly zero(RingId rid, int nvars) { return Poly(rid, nvars); }
    static Poly constant(RingId rid, int nvars, const RingElem& c);
    /// The monomial c * prod v_i^e_i.
    static Poly monomial(RingId rid, int nvars, const RingElem& c,
                         const std::vector<std::uint32_t>& exps);
    /// The single variable v_index (0-based).
    static Poly variable(RingId rid, int nvars, int index);

    RingId ring() const { return rid_; }
    int nvars() const { return nvars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int total_degree() const;
    /// Largest exponent of variable v across all terms.
    std::uint32_t degree_in(int v) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const RingElem& c) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    RingElem eval(const std::vector<RingElem>& point) const;

    /// Substitutes args[i] for variable i; args are polynomials in a
    /// common variable set of the output.
    Poly substitute(const std::vector<Poly>& args) const;

    /// Fixes variable v to the constant c; the variable slot stays (its
    /// exponent becomes 0 everywhere).
    Poly fix_variable(int v, const RingElem& c) const;

    /// Removes variable slot v; requires degree_in(v) == 0.
    Poly drop_variable(int v) const;

    /// Divides by variable v, i.e. shifts its exponents down by one.
    /// Requires every term to have exponent >= 1 in v.
    Poly divide_by_variable(int v) const;

    std::string str(const std::vector<std::string>& var_names) const;

  private:
    void canonicalize();

    RingId rid_ = RingId::rationals();
    int nvars_ = 0;
    std::vector<Monomial> terms_;
};

/// Polynomial map between finite free modules; holds one Poly per
/// output component plus the printable variable names.
class PolyMap {
  public:
    PolyMap() = default;
    PolyMap(std::vector<Poly> components, std::vector<std::string> var_names);
    /// Default variable names x1..xn.
    explicit PolyMap(std::vector<Poly> components);

    RingId ring() const { return ring_; }
    int arity_in() const { return arity_in_; }
    int arity_out() const { return static_cast<int>(components_.size()); }
    const std::vector<Poly>& components() const { return components_; }
    const std::vector<std::string>& var_names() const { return var_names_; }

    std::vector<RingElem> eval(const std::vector<RingElem>& point) const;
    std::string str() const;

    std::size_t term_count() const;

  private:
    std::vector<Poly> components_;
    std::vector<std::string> var_names_;
    RingId ring_ = RingId::rationals();
    int arity_in_ = 0;
};

/// Default monomial-count cap for nested difference quotients.
inline constexpr std::size_t kDefaultTermCap = 1000000;

/// First-order symbolic difference quotient: for f in variables
/// (x1..xn) returns g in (x1..xn, u1..un, t) with t*g = f(x+tu) - f(x)
/// exactly.  At t=0, g is the formal directional derivative.
PolyMap sym_difq1(const PolyMap& f);

/// k-fold nesting of sym_difq1; arity 2^k(n+1)-1.  The flattening order
/// is fixed: base tuple first, direction tuple second, final t last, so
/// the recursion-rule reindexing is the identity.  k = 0 returns f.
PolyMap sym_difq_k(const PolyMap& f, int k, std::size_t term_cap = kDefaultTermCap);

/// Formal variation delta f(x, u): sym_difq1 with t fixed to 0 and the
/// t slot dropped; linear in u.
PolyMap formal_var(const PolyMap& f);

/// Canonical-form identity (not functional equality).
bool poly_equal(const PolyMap& f, const PolyMap& g);

/// Composition f o g where g maps k -> n and f maps n -> m.
PolyMap compose(const PolyMap& f, const PolyMap& g);

/// Seeded random polynomial map for property tests.
PolyMap random_poly_map(RingId rid, int arity_in, int arity_out, int max_degree,
                        int terms_per_component, std::mt19937_64& rng);

}  // namespace dqcalc
