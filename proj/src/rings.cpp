#include "dqcalc/rings.hpp"

#include <cmath>
#include <sstream>

namespace dqcalc {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

std::uint32_t mod_pow(std::uint32_t base, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1, b = base % p;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

}  // namespace

RingId RingId::prime_field(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime_u32(p))
        throw std::invalid_argument("prime_field: p must be a prime < 2^31");
    return {RingTag::PrimeField, p};
}

std::string RingId::name() const {
    switch (tag) {
        case RingTag::Rational: return "Q";
        case RingTag::PrimeField: return "Fp:" + std::to_string(p);
        case RingTag::Float64: return "F64";
        case RingTag::Dual: return "Dual";
    }
    return "?";
}

RingId RingId::parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s == "F64") return float64();
    if (s == "Dual") return dual();
    if (s.rfind("Fp:", 0) == 0) return prime_field(static_cast<std::uint32_t>(std::stoul(s.substr(3))));
    throw std::invalid_argument("unknown ring id: " + s);
}

RingElem RingElem::rational(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return RingElem(RingId::rationals(), std::move(c));
}

RingElem RingElem::rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return RingElem(RingId::rationals(), std::move(q));
}

RingElem RingElem::mod(std::uint32_t p, std::int64_t value) {
    RingId rid = RingId::prime_field(p);
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return RingElem(rid, static_cast<std::uint32_t>(r));
}

RingElem RingElem::f64(double x) { return RingElem(RingId::float64(), x); }

RingElem RingElem::dual(double re, double eps) {
    if (!std::isfinite(re) || !std::isfinite(eps))
        throw std::invalid_argument("dual: components must be finite");
    return RingElem(RingId::dual(), DualPayload{re, eps});
}

RingElem RingElem::zero(RingId rid) { return from_long(rid, 0); }
RingElem RingElem::one(RingId rid) { return from_long(rid, 1); }

RingElem RingElem::from_long(RingId rid, long n) {
    switch (rid.tag) {
        case RingTag::Rational: return rational(n);
        case RingTag::PrimeField: return mod(rid.p, n);
        case RingTag::Float64: return f64(static_cast<double>(n));
        case RingTag::Dual: return dual(static_cast<double>(n), 0.0);
    }
    throw std::logic_error("bad ring tag");
}

bool RingElem::is_zero() const { return *this == zero(rid_); }
bool RingElem::is_one() const { return *this == one(rid_); }

bool RingElem::is_unit() const {
    switch (rid_.tag) {
        case RingTag::Rational: return rational_value() != 0;
        case RingTag::PrimeField: return residue() != 0;
        case RingTag::Float64: return f64_value() != 0.0;
        case RingTag::Dual: return dual_value().re != 0.0;
    }
    return false;
}

void RingElem::check_same_ring(const RingElem& o) const {
    if (rid_ != o.rid_)
        throw RingMismatch("ring mismatch: " + rid_.name() + " vs " + o.rid_.name());
}

RingElem RingElem::operator+(const RingElem& o) const {
    check_same_ring(o);
    switch (rid_.tag) {
        case RingTag::Rational: return rational(rational_value() + o.rational_value());
        case RingTag::PrimeField: {
            std::uint64_t s = static_cast<std::uint64_t>(residue()) + o.residue();
            return RingElem(rid_, static_cast<std::uint32_t>(s % rid_.p));
        }
        case RingTag::Float64: return f64(f64_value() + o.f64_value());
        case RingTag::Dual: {
            auto a = dual_value(), b = o.dual_value();
            return dual(a.re + b.re, a.eps + b.eps);
        }
    }
    throw std::logic_error("bad ring tag");
}

RingElem RingElem::operator-() const {
    switch (rid_.tag) {
        case RingTag::Rational: return rational(-rational_value());
        case RingTag::PrimeField:
            return RingElem(rid_, residue() == 0 ? 0u : rid_.p - residue());
        case RingTag::Float64: return f64(-f64_value());
        case RingTag::Dual: {
            auto a = dual_value();
            return dual(-a.re, -a.eps);
        }
    }
    throw std::logic_error("bad ring tag");
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator*(const RingElem& o) const {
    check_same_ring(o);
    switch (rid_.tag) {
        case RingTag::Rational: return rational(rational_value() * o.rational_value());
        case RingTag::PrimeField:
            return RingElem(rid_, mod_mul(residue(), o.residue(), rid_.p));
        case RingTag::Float64: return f64(f64_value() * o.f64_value());
        case RingTag::Dual: {
            // (a+b eps)(c+d eps) = ac + (ad+bc) eps
            auto a = dual_value(), b = o.dual_value();
            return dual(a.re * b.re, a.re * b.eps + a.eps * b.re);
        }
    }
    throw std::logic_error("bad ring tag");
}

RingElem RingElem::inv() const {
    if (!is_unit()) throw NotInvertible("inv: not a unit in " + rid_.name());
    switch (rid_.tag) {
        case RingTag::Rational: return rational(1 / rational_value());
        case RingTag::PrimeField:
            // Fermat: a^(p-2) mod p
            return RingElem(rid_, mod_pow(residue(), rid_.p - 2, rid_.p));
        case RingTag::Float64: return f64(1.0 / f64_value());
        case RingTag::Dual: {
            // (a+b eps)^-1 = a^-1 - a^-2 b eps
            auto a = dual_value();
            return dual(1.0 / a.re, -a.eps / (a.re * a.re));
        }
    }
    throw std::logic_error("bad ring tag");
}

bool operator==(const RingElem& a, const RingElem& b) {
    if (a.rid_ != b.rid_) return false;
    switch (a.rid_.tag) {
        case RingTag::Rational: return a.rational_value() == b.rational_value();
        case RingTag::PrimeField: return a.residue() == b.residue();
        case RingTag::Float64: return a.f64_value() == b.f64_value();
        case RingTag::Dual: return a.dual_value() == b.dual_value();
    }
    return false;
}

bool RingElem::less(const RingElem& o) const {
    check_same_ring(o);
    switch (rid_.tag) {
        case RingTag::Rational: return rational_value() < o.rational_value();
        case RingTag::PrimeField: return residue() < o.residue();
        case RingTag::Float64: return f64_value() < o.f64_value();
        case RingTag::Dual: {
            auto a = dual_value(), b = o.dual_value();
            return a.re < b.re || (a.re == b.re && a.eps < b.eps);
        }
    }
    return false;
}

double RingElem::to_double() const {
    switch (rid_.tag) {
        case RingTag::Rational: return rational_value().get_d();
        case RingTag::PrimeField: return static_cast<double>(residue());
        case RingTag::Float64: return f64_value();
        case RingTag::Dual: return dual_value().re;
    }
    return 0.0;
}

std::string RingElem::str() const {
    std::ostringstream os;
    switch (rid_.tag) {
        case RingTag::Rational: {
            const mpq_class& q = rational_value();
            os << q.get_num().get_str();
            if (q.get_den() != 1) os << "/" << q.get_den().get_str();
            break;
        }
        case RingTag::PrimeField:
            os << residue() << " mod " << rid_.p;
            break;
        case RingTag::Float64:
            os.precision(17);
            os << f64_value();
            break;
        case RingTag::Dual: {
            auto d = dual_value();
            os.precision(17);
            os << d.re << (d.eps < 0 ? "" : "+") << d.eps << "*eps";
            break;
        }
    }
    return os.str();
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) {
    return mix64(mix64(seed) ^ mix64(stream_id + 0x517cc1b727220a95ull));
}

}  // namespace dqcalc
