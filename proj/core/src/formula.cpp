#include "amalgamkit/formula.hpp"

#include "amalgamkit/errors.hpp"

namespace amk {

GroupElt lift_formula(const LiftSpec& spec) {
  if (elt_is_identity(spec.i))
    fail(Errc::BadConfig, "lift pivot must not be the identity");
  uint64_t oi = elt_order(spec.i, spec.order_bound);
  if (oi % 2 == 0) fail(Errc::EvenOrder, "lift pivot has even order");

  GroupElt ik = elt_pow(spec.i, spec.k);
  GroupElt ix = elt_conj(spec.i, spec.x);
  GroupElt u = elt_pow(elt_mul(ik, ix), 3);
  if (!elt_eq(elt_conj(ix, u), ik))
    fail(Errc::EnablerFails, "cube does not conjugate i^x back to i^k");

  GroupElt xp = elt_mul(elt_mul(spec.i, spec.x), u);
  if (!elt_eq(elt_conj(spec.i, xp), ik))
    fail(Errc::VerificationFails, "lifted element does not induce power k on i");
  return xp;
}

uint64_t probable_order(const DenseMatrix& M, const DenseMatrix& v,
                        uint64_t bound) {
  if (v.rows() != 1 || v.cols() != M.rows() || M.rows() != M.cols())
    fail(Errc::ShapeMismatch, "need a row vector matching a square matrix");
  if (v.is_zero()) fail(Errc::ZeroVector, "probe vector is zero");
  DenseMatrix w = v * M;
  for (uint64_t n = 1; n <= bound; ++n) {
    if (w == v) return n;
    w = w * M;
  }
  fail(Errc::BoundExceeded, "no fixing power within the bound");
}

}  // namespace amk
