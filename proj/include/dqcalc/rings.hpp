#pragma once

/**
 * @file rings.hpp
 * @brief Scalar arithmetic over the supported coefficient rings.
 *
 * Four rings are available: exact rationals (arbitrary precision),
 * prime fields F_p with p < 2^31, ordinary double floats, and dual
 * numbers a + b*eps with eps^2 = 0.  Inversion is a partial operation:
 * non-units throw NotInvertible.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace dqcalc {

enum class RingTag { Rational, PrimeField, Float64, Dual };

struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};
struct RingMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Identifies a ring: the tag plus the modulus for prime fields.
struct RingId {
    RingTag tag = RingTag::Rational;
    std::uint32_t p = 0;  // modulus, PrimeField only

    friend bool operator==(const RingId&, const RingId&) = default;

    static RingId rationals() { return {RingTag::Rational, 0}; }
    static RingId prime_field(std::uint32_t p);
    static RingId float64() { return {RingTag::Float64, 0}; }
    static RingId dual() { return {RingTag::Dual, 0}; }

    /// "Q", "Fp:7", "F64", "Dual" -- the spelling used by the CLI.
    std::string name() const;
    static RingId parse(const std::string& s);
};

struct DualPayload {
    double re = 0.0;
    double eps = 0.0;
    friend bool operator==(const DualPayload&, const DualPayload&) = default;
};

/// Immutable scalar in one of the supported rings.
class RingElem {
  public:
    RingElem() = default;

    static RingElem rational(const mpq_class& q);
    static RingElem rational(long num, long den = 1);
    static RingElem mod(std::uint32_t p, std::int64_t value);
    static RingElem f64(double x);
    static RingElem dual(double re, double eps);

    static RingElem zero(RingId rid);
    static RingElem one(RingId rid);
    static RingElem from_long(RingId rid, long n);

    RingId ring() const { return rid_; }

    bool is_zero() const;
    bool is_one() const;

    /// Units: nonzero in a field, nonzero real part for duals.
    bool is_unit() const;

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator-() const;
    RingElem operator*(const RingElem& o) const;

    /// Partial inversion; throws NotInvertible on non-units.
    RingElem inv() const;

    friend bool operator==(const RingElem& a, const RingElem& b);
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

    /// Total order used only for canonical sorting of coefficients.
    bool less(const RingElem& o) const;

    const mpq_class& rational_value() const { return std::get<mpq_class>(payload_); }
    std::uint32_t residue() const { return std::get<std::uint32_t>(payload_); }
    double f64_value() const { return std::get<double>(payload_); }
    DualPayload dual_value() const { return std::get<DualPayload>(payload_); }

    /// Numeric image of the element: exact rings map to double via
    /// their canonical embedding (residues as plain integers).
    double to_double() const;

    /// "num/den", "r mod p", decimal, or "a+b*eps".
    std::string str() const;

  private:
    RingElem(RingId rid, std::variant<mpq_class, std::uint32_t, double, DualPayload> payload)
        : rid_(rid), payload_(std::move(payload)) {}
    void check_same_ring(const RingElem& o) const;

    RingId rid_ = RingId::rationals();
    std::variant<mpq_class, std::uint32_t, double, DualPayload> payload_ = mpq_class(0);
};

/// Deterministic 64-bit mix (splitmix64); all seeded streams in the
/// project derive from one user seed through this function.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from (seed, stream_id).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id);

}  // namespace dqcalc
