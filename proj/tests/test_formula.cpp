#include "amalgamkit/formula.hpp"

#include <numeric>
#include <random>

#include "amalgamkit/errors.hpp"
#include "doctest.h"

using namespace amk;

namespace {

PermImage cycle(int n, std::vector<int> pts) {
  PermImage p(n);
  std::iota(p.begin(), p.end(), 0);
  for (size_t i = 0; i < pts.size(); ++i) p[pts[i]] = pts[(i + 1) % pts.size()];
  return p;
}

// Affine maps v -> g(v) + c on the 8 field elements, indexed by bit value:
// the split extension of the translations by the multiplications and the
// squaring map.
PermImage aff_mult(uint32_t m) {
  auto F = BinaryField::get(3);
  PermImage p(8);
  for (uint32_t v = 0; v < 8; ++v) p[v] = F->mul(m, v);
  return p;
}

PermImage aff_trans(uint32_t c) {
  PermImage p(8);
  for (uint32_t v = 0; v < 8; ++v) p[v] = v ^ c;
  return p;
}

PermImage aff_frob() {
  auto F = BinaryField::get(3);
  PermImage p(8);
  for (uint32_t v = 0; v < 8; ++v) p[v] = F->mul(v, v);
  return p;
}

DenseMatrix companion(FieldPtr F, const Poly2& p) {
  int n = p.deg();
  DenseMatrix m(F, n, n);
  for (int i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1);
  for (int j = 0; j < n; ++j)
    if (p.get(j)) m.set(n - 1, j, 1);
  return m;
}

DenseMatrix random_matrix(std::mt19937_64& rng, FieldPtr F, int r, int c) {
  DenseMatrix m(F, r, c);
  std::uniform_int_distribution<uint32_t> d(0, static_cast<uint32_t>(F->order()) - 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

}  // namespace

TEST_CASE("lift of a commuting element is the element itself") {
  GroupElt i = cycle(9, {0, 1, 2, 3, 4, 5, 6});
  GroupElt disjoint = cycle(9, {7, 8});
  GroupElt power = elt_pow(i, 3);
  CHECK(elt_eq(lift_formula({i, disjoint}), disjoint));
  CHECK(elt_eq(lift_formula({i, power}), power));
  CHECK(elt_eq(lift_formula({i, elt_pow(i, 0)}), elt_pow(i, 0)));
}

TEST_CASE("translations collapse to the identity in the affine model") {
  GroupElt i = aff_mult(2);
  REQUIRE(elt_order(i) == 7);
  for (uint32_t c = 0; c < 8; ++c) {
    GroupElt lifted = lift_formula({i, aff_trans(c)});
    CHECK(elt_is_identity(lifted));
  }
}

TEST_CASE("lifts strip the translation part of a mixed element") {
  GroupElt i = aff_mult(2);
  auto F = BinaryField::get(3);
  for (uint32_t c = 0; c < 8; ++c) {
    for (uint32_t mexp = 0; mexp < 7; ++mexp) {
      uint32_t m = F->pow(2, mexp);
      GroupElt x = elt_mul(GroupElt(aff_trans(c)), GroupElt(aff_mult(m)));
      GroupElt lifted = lift_formula({i, x});
      CHECK(elt_eq(lifted, GroupElt(aff_mult(m))));
      CHECK(elt_eq(elt_mul(lifted, i), elt_mul(i, lifted)));
      // The lift stays in the translation coset of the input.
      GroupElt quot = elt_mul(lifted, elt_inv(x));
      PermImage q = std::get<PermImage>(quot);
      PermImage expect = aff_trans(static_cast<uint32_t>(q[0]));
      CHECK(q == expect);
    }
  }
}

TEST_CASE("normalizing lifts insert the matching power") {
  GroupElt i = aff_mult(2);
  GroupElt y = aff_frob();
  REQUIRE(elt_eq(elt_conj(i, y), elt_pow(i, 2)));

  for (uint32_t c = 0; c < 8; ++c) {
    GroupElt x = elt_mul(GroupElt(aff_trans(c)), y);
    GroupElt lifted = lift_formula({i, x, 2});
    CHECK(elt_eq(lifted, y));
  }
  GroupElt y2 = elt_mul(y, y);
  for (uint32_t c = 0; c < 8; ++c) {
    GroupElt x = elt_mul(GroupElt(aff_trans(c)), y2);
    CHECK(elt_eq(lift_formula({i, x, 4}), y2));
  }
}

TEST_CASE("inverting element lifts with sixth power") {
  GroupElt i = cycle(7, {0, 1, 2, 3, 4, 5, 6});
  PermImage rev(7);
  for (int v = 0; v < 7; ++v) rev[v] = (7 - v) % 7;
  GroupElt x = rev;
  REQUIRE(elt_eq(elt_conj(i, x), elt_pow(i, 6)));
  GroupElt lifted = lift_formula({i, x, 6});
  CHECK(elt_eq(elt_conj(i, lifted), elt_pow(i, 6)));
  CHECK(elt_eq(lifted, elt_mul(elt_mul(i, x), elt_pow(i, 36))));
}

TEST_CASE("enabler failures are loud") {
  GroupElt i = cycle(7, {0, 1, 2, 3, 4, 5, 6});
  bool saw_enabler = false;
  for (const PermImage& xp :
       {cycle(7, {0, 1}), cycle(7, {1, 4, 2}), cycle(7, {0, 3, 1, 5})}) {
    try {
      lift_formula({i, GroupElt(xp)});
    } catch (const Error& e) {
      CHECK(e.code == Errc::EnablerFails);
      saw_enabler = true;
    }
  }
  CHECK(saw_enabler);

  CHECK_THROWS_AS(lift_formula({GroupElt(cycle(7, {0, 1})), i}), Error);
  try {
    lift_formula({GroupElt(cycle(7, {0, 1})), i});
  } catch (const Error& e) {
    CHECK(e.code == Errc::EvenOrder);
  }
  CHECK_THROWS_AS(lift_formula({GroupElt(perm_identity(7)), i}), Error);
}

TEST_CASE("matrix elements run through the same surgery") {
  auto F2 = BinaryField::get(1);
  DenseMatrix c7 = companion(F2, Poly2(0x7f));
  GroupElt i = c7;
  GroupElt x = c7 * c7;
  CHECK(elt_eq(lift_formula({i, x}), x));
  GroupElt id = DenseMatrix::identity(F2, 6);
  CHECK(elt_eq(lift_formula({i, id}), id));

  std::mt19937_64 rng(5);
  int rejected = 0;
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix m = random_matrix(rng, F2, 6, 6);
    if (mat_rank(m) != 6) continue;
    try {
      GroupElt lifted = lift_formula({i, GroupElt(m)});
      CHECK(elt_eq(elt_conj(i, lifted), i));
    } catch (const Error& e) {
      CHECK(e.code == Errc::EnablerFails);
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("probable order on direct iterates") {
  auto F2 = BinaryField::get(1);
  DenseMatrix id = DenseMatrix::identity(F2, 4);
  DenseMatrix v(F2, 1, 4);
  v.set(0, 2, 1);
  CHECK(probable_order(id, v) == 1);

  DenseMatrix c7 = companion(F2, Poly2(0x7f));
  DenseMatrix e0(F2, 1, 6);
  e0.set(0, 0, 1);
  CHECK(probable_order(c7, e0) == 7);

  DenseMatrix zero(F2, 1, 6);
  CHECK_THROWS_AS(probable_order(c7, zero), Error);
  CHECK_THROWS_AS(probable_order(c7, e0, 3), Error);
  CHECK_THROWS_AS(probable_order(c7, v), Error);
}

TEST_CASE("probable order divides the element order") {
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 1000) {
    int k = (rng() % 2) ? 1 : 3;
    auto F = BinaryField::get(k);
    int n = 2 + static_cast<int>(rng() % (k == 1 ? 11 : 4));
    DenseMatrix m = random_matrix(rng, F, n, n);
    if (mat_rank(m) != n) continue;
    uint64_t full = element_order(m, 1u << 20);
    for (int reps = 0; reps < 5 && done < 1000; ++reps) {
      DenseMatrix v = random_matrix(rng, F, 1, n);
      if (v.is_zero()) continue;
      uint64_t po = probable_order(m, v, full);
      CHECK(full % po == 0);
      ++done;
    }
  }
}
