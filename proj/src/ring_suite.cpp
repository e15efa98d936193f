#include "dqcalc/ring_suite.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace dqcalc {

namespace {

RingElem random_elem(RingId rid, std::mt19937_64& rng) {
    switch (rid.tag) {
        case RingTag::Rational: {
            std::uniform_int_distribution<long> num(-50, 50);
            std::uniform_int_distribution<long> den(1, 20);
            return RingElem::rational(num(rng), den(rng));
        }
        case RingTag::PrimeField: {
            std::uniform_int_distribution<std::int64_t> d(0, rid.p - 1);
            return RingElem::mod(rid.p, d(rng));
        }
        case RingTag::Float64: {
            std::uniform_real_distribution<double> d(-10.0, 10.0);
            return RingElem::f64(d(rng));
        }
        case RingTag::Dual: {
            std::uniform_real_distribution<double> d(-10.0, 10.0);
            return RingElem::dual(d(rng), d(rng));
        }
    }
    throw std::logic_error("bad ring tag");
}

// Relative distance in the float/dual image; exact rings compare exactly.
bool close(const RingElem& a, const RingElem& b, double rel_tol) {
    if (a.ring().tag == RingTag::Rational || a.ring().tag == RingTag::PrimeField)
        return a == b;
    auto dist = [rel_tol](double x, double y) {
        double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
        return std::fabs(x - y) <= rel_tol * scale;
    };
    if (a.ring().tag == RingTag::Dual)
        return dist(a.dual_value().re, b.dual_value().re) &&
               dist(a.dual_value().eps, b.dual_value().eps);
    return dist(a.f64_value(), b.f64_value());
}

}  // namespace

VerificationReport ring_axiom_suite(RingId rid, int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
    VerificationReport rep;
    rep.suite = "ring_axioms:" + rid.name();
    rep.seed = seed;
    rep.trials = sample_count;

    const double tol = 1e-12;
    std::mt19937_64 rng(derive_seed(seed, 0xA410));

    struct Law {
        const char* name;
        bool ok = true;
        double worst = 0.0;
        std::string witness;
    };
    Law laws[] = {{"add_assoc"}, {"add_comm"}, {"mul_assoc"}, {"mul_comm"},
                  {"distributive"}, {"unity"}, {"inv_round_trip"}};

    auto note_fail = [&](Law& law, const RingElem& a, const RingElem& b, const RingElem& c,
                         const RingElem& lhs, const RingElem& rhs) {
        if (!law.ok) return;
        law.ok = false;
        std::ostringstream os;
        os << "a=" << a.str() << " b=" << b.str() << " c=" << c.str()
           << " lhs=" << lhs.str() << " rhs=" << rhs.str();
        law.witness = os.str();
    };

    for (int i = 0; i < sample_count; ++i) {
        RingElem a = random_elem(rid, rng);
        RingElem b = random_elem(rid, rng);
        RingElem c = random_elem(rid, rng);

        RingElem l0 = (a + b) + c, r0 = a + (b + c);
        if (!close(l0, r0, tol)) note_fail(laws[0], a, b, c, l0, r0);
        RingElem l1 = a + b, r1 = b + a;
        if (!close(l1, r1, tol)) note_fail(laws[1], a, b, c, l1, r1);
        RingElem l2 = (a * b) * c, r2 = a * (b * c);
        if (!close(l2, r2, tol)) note_fail(laws[2], a, b, c, l2, r2);
        RingElem l3 = a * b, r3 = b * a;
        if (!close(l3, r3, tol)) note_fail(laws[3], a, b, c, l3, r3);
        RingElem l4 = a * (b + c), r4 = a * b + a * c;
        if (!close(l4, r4, tol)) note_fail(laws[4], a, b, c, l4, r4);
        RingElem one = RingElem::one(rid);
        RingElem l5 = a * one;
        if (!close(l5, a, tol)) note_fail(laws[5], a, b, c, l5, a);

        if (a.is_unit()) {
            RingElem ia = a.inv();
            RingElem prod = a * ia;
            RingElem back = ia.inv();
            // iota o iota subset id: inv(inv(a)) = a where defined
            bool ok = close(prod, one, tol) && close(back, a, 1e-14);
            if (!ok) note_fail(laws[6], a, b, c, prod, back);
        }
    }

    for (const auto& law : laws)
        rep.add(law.name, law.ok, law.worst, law.witness);
    return rep;
}

}  // namespace dqcalc
