#pragma once

#include <cstdint>

#include "amalgamkit/words.hpp"

namespace amk {

// Element surgery x -> x' = i * x * (i^k * i^x)^3. The pivot i must have odd
// order; k is the power of i that conjugation by x induces (1 when x
// centralizes i, 6 for an inverting element, 2 for a squaring one).
struct LiftSpec {
  GroupElt i;
  GroupElt x;
  long long k = 1;
  uint64_t order_bound = 1000000;
};

// Requires the enabling identity: (i^k * i^x)^3 conjugates i^x to i^k.
// EnablerFails when it does not hold; VerificationFails if the returned
// element does not conjugate i to i^k. When x centralizes a fixed-point-free
// pivot modulo a normal 2-group, the result is the centralizing
// representative of x's coset.
GroupElt lift_formula(const LiftSpec& spec);

// Least n >= 1 with v * M^n = v. Divides the multiplicative order of M.
// ZeroVector on v = 0; BoundExceeded past `bound`.
uint64_t probable_order(const DenseMatrix& M, const DenseMatrix& v,
                        uint64_t bound = 1000000);

}  // namespace amk
