#pragma once

#include "dqcalc/report.hpp"
#include "dqcalc/rings.hpp"

namespace dqcalc {

/// Checks associativity, commutativity, distributivity, unity, and the
/// inversion round trip on seeded random samples.  Exact rings use exact
/// equality; the float ring uses relative tolerance 1e-12.
VerificationReport ring_axiom_suite(RingId rid, int sample_count, std::uint64_t seed);

}  // namespace dqcalc
