#pragma once

/**
 * @file axioms.hpp
 * @brief Property checks for the difference-quotient calculus postulates
 * on the exact polynomial function class: productive (product/pairing)
 * structure, closure postulates, determination, uniqueness of the first
 * order quotient map, and the nesting recursion rule.
 */

#include <cstdint>

#include "dqcalc/poly.hpp"
#include "dqcalc/report.hpp"

namespace dqcalc {

struct DegreeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional instance of a function class: objects are the
/// module ranks n standing for K^n, members are polynomial maps between
/// them.  The closure switches exist to build deliberately broken
/// instances for negative tests.
struct FnClassInstance {
    RingId ring = RingId::rationals();
    std::vector<int> objects;  // declared ranks
    std::vector<PolyMap> generators;
    bool allow_compose = true;
    bool allow_pair = true;
    bool allow_constant = true;
    bool allow_identity = true;

    /// Generators must map between declared ranks.
    void validate() const;

    /// The full polynomial class with objects 1..max_rank.
    static FnClassInstance polynomial_class(RingId rid, int max_rank);
};

/// Product structure: projections are members, pairing [f, g] recovers
/// f and g under the projections, and the product rank is additive and
/// symmetric up to the swap isomorphism.
VerificationReport check_productive(const FnClassInstance& inst, int trials,
                                    std::uint64_t seed);

/// Closure postulates: composition, constants and identity, inversion
/// as the built-in partial unit evaluator, and determination (members
/// agreeing on enough invertible points are formally equal).
VerificationReport check_bgn_postulates(const FnClassInstance& inst, int trials,
                                        std::uint64_t seed);

/// The symbolic first-order quotient map against an independent route:
/// Lagrange interpolation of t -> inv(t) (f(x+tu) - f(x)) through
/// distinct nonzero nodes at seeded random (x, u).
VerificationReport prop9_uniqueness(const PolyMap& f, std::uint64_t seed, int trials = 10);

/// Nesting recursion: the (k+1)-fold quotient of f equals the k-fold
/// quotient of the 1-fold quotient; the chosen slot order makes the
/// reindexing the identity.
VerificationReport prop10_recursion(const PolyMap& f, int k,
                                    std::size_t term_cap = kDefaultTermCap);

}  // namespace dqcalc
