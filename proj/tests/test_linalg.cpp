#include "amalgamkit/linalg.hpp"

#include <random>

#include "amalgamkit/errors.hpp"
#include "doctest.h"

using namespace amk;

namespace {

DenseMatrix random_matrix(std::mt19937_64& rng, FieldPtr F, int r, int c) {
  DenseMatrix m(F, r, c);
  std::uniform_int_distribution<uint32_t> d(0, static_cast<uint32_t>(F->order()) - 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

DenseMatrix random_invertible(std::mt19937_64& rng, FieldPtr F, int n) {
  for (;;) {
    DenseMatrix m = random_matrix(rng, F, n, n);
    if (mat_rank(m) == n) return m;
  }
}

// Companion matrix acting on row vectors: e_i -> e_{i+1}, last row = coeffs.
DenseMatrix companion(FieldPtr F, const Poly2& p) {
  int n = p.deg();
  DenseMatrix m(F, n, n);
  for (int i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1);
  for (int j = 0; j < n; ++j)
    if (p.get(j)) m.set(n - 1, j, 1);
  return m;
}

DenseMatrix block_diag(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.set(i, j, a.get(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      m.set(a.rows() + i, a.cols() + j, b.get(i, j));
  return m;
}

const Poly2 kCubicA(0b1011);   // x^3+x+1
const Poly2 kCubicB(0b1101);   // x^3+x^2+1
const Poly2 kCyc7(0x7f);       // product of the two cubics

}  // namespace

TEST_CASE("packed entry access across word boundaries") {
  for (int k : {1, 3, 5, 7, 12, 16}) {
    auto F = BinaryField::get(k);
    std::mt19937_64 rng(k * 99u);
    DenseMatrix m(F, 7, 23);
    std::vector<uint32_t> mirror(7 * 23, 0);
    std::uniform_int_distribution<uint32_t> d(0, static_cast<uint32_t>(F->order()) - 1);
    for (int pass = 0; pass < 3; ++pass)
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 23; ++j) {
          uint32_t v = d(rng);
          m.set(i, j, v);
          mirror[i * 23 + j] = v;
        }
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 23; ++j) CHECK(m.get(i, j) == mirror[i * 23 + j]);
  }
}

TEST_CASE("matrix product against schoolbook") {
  std::mt19937_64 rng(4242);
  for (int k : {1, 3, 4}) {
    auto F = BinaryField::get(k);
    for (int trial = 0; trial < 30; ++trial) {
      DenseMatrix a = random_matrix(rng, F, 9, 13);
      DenseMatrix b = random_matrix(rng, F, 13, 6);
      DenseMatrix c = a * b;
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 6; ++j) {
          uint32_t s = 0;
          for (int t = 0; t < 13; ++t)
            s = F->add(s, F->mul(a.get(i, t), b.get(t, j)));
          CHECK(c.get(i, j) == s);
        }
    }
  }
  auto F = BinaryField::get(1);
  CHECK_THROWS_AS(random_matrix(rng, F, 2, 3) * random_matrix(rng, F, 2, 3), Error);
}

TEST_CASE("identity, associativity, transpose") {
  std::mt19937_64 rng(555);
  auto F = BinaryField::get(3);
  DenseMatrix a = random_matrix(rng, F, 5, 7);
  DenseMatrix b = random_matrix(rng, F, 7, 4);
  DenseMatrix c = random_matrix(rng, F, 4, 6);
  CHECK((a * b) * c == a * (b * c));
  CHECK(DenseMatrix::identity(F, 5) * a == a);
  CHECK(a * DenseMatrix::identity(F, 7) == a);
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(a.transpose().transpose() == a);
}

TEST_CASE("inverse round trip and singular detection") {
  std::mt19937_64 rng(31337);
  for (int k : {1, 3}) {
    auto F = BinaryField::get(k);
    for (int trial = 0; trial < 25; ++trial) {
      DenseMatrix m = random_invertible(rng, F, 8);
      DenseMatrix mi = mat_inv(m);
      CHECK((m * mi).is_identity());
      CHECK((mi * m).is_identity());
    }
  }
  auto F = BinaryField::get(1);
  DenseMatrix sing(F, 3, 3);
  sing.set(0, 0, 1);
  sing.set(1, 1, 1);
  try {
    mat_inv(sing);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code == Errc::Singular);
  }
  CHECK_THROWS_AS(mat_inv(DenseMatrix(F, 2, 3)), Error);
}

TEST_CASE("rank and nullity add up") {
  std::mt19937_64 rng(9090);
  for (int k : {1, 4}) {
    auto F = BinaryField::get(k);
    for (int trial = 0; trial < 50; ++trial) {
      DenseMatrix m = random_matrix(rng, F, 10, 7);
      int r = mat_rank(m);
      Subspace ns = nullspace(m);
      CHECK(r + ns.dim() == 10);
      for (int t = 0; t < ns.dim(); ++t)
        CHECK((ns.basis.row(t) * m).is_zero());
      Subspace rs = row_space(m);
      CHECK(rs.dim() == r);
      for (int t = 0; t < rs.dim(); ++t) CHECK(rs.contains(rs.basis.row(t)));
    }
  }
}

TEST_CASE("subspace membership and coordinates") {
  auto F = BinaryField::get(1);
  std::mt19937_64 rng(808);
  DenseMatrix gen = random_matrix(rng, F, 4, 9);
  Subspace s = row_space(gen);
  for (int trial = 0; trial < 40; ++trial) {
    DenseMatrix combo(F, 1, 9);
    for (int t = 0; t < s.dim(); ++t)
      if (rng() & 1) combo = combo + s.basis.row(t);
    CHECK(s.contains(combo));
    DenseMatrix c = s.coords(combo);
    DenseMatrix back(F, 1, 9);
    for (int t = 0; t < s.dim(); ++t)
      if (c.get(0, t)) back = back + s.basis.row(t);
    CHECK(back == combo);
  }
  if (s.dim() < 9) {
    // a vector with support on a non-pivot column escapes the row space
    DenseMatrix outside(F, 1, 9);
    for (int j = 0; j < 9; ++j) {
      bool piv = false;
      for (int t : s.pivots) piv |= (t == j);
      if (!piv) {
        outside.set(0, j, 1);
        break;
      }
    }
    bool in = s.contains(outside);
    if (!in) CHECK_THROWS_AS(s.coords(outside), Error);
  }
}

TEST_CASE("pow matches repeated multiplication") {
  std::mt19937_64 rng(616);
  auto F = BinaryField::get(2);
  DenseMatrix m = random_invertible(rng, F, 5);
  DenseMatrix acc = DenseMatrix::identity(F, 5);
  for (uint64_t e = 0; e < 12; ++e) {
    CHECK(m.pow(e) == acc);
    acc = acc * m;
  }
  CHECK(m.pow(3) * m.pow(9) == m.pow(12));
}

TEST_CASE("minimal polynomial of a companion matrix is its polynomial") {
  auto F2 = BinaryField::get(1);
  std::mt19937_64 rng(717);
  for (int trial = 0; trial < 50; ++trial) {
    Poly2 p = Poly2::x_pow(3 + static_cast<int>(rng() % 6));
    for (int i = 0; i < p.deg(); ++i)
      if (rng() & 1) p.set(i, true);
    p.set(0, true);  // keep it invertible for later reuse
    DenseMatrix m = companion(F2, p);
    PolyF mp = min_poly(m);
    CHECK(poly2_from_polyf(mp) == p);
    CHECK(polyf_eval_at_matrix(mp, m).is_zero());
  }
}

TEST_CASE("minimal polynomial sees repeated blocks once") {
  auto F2 = BinaryField::get(1);
  DenseMatrix two = block_diag(companion(F2, kCubicA), companion(F2, kCubicA));
  CHECK(poly2_from_polyf(min_poly(two)) == kCubicA);
  DenseMatrix mixed = block_diag(companion(F2, kCubicA), companion(F2, kCubicB));
  CHECK(poly2_from_polyf(min_poly(mixed)) == kCyc7);
}

TEST_CASE("minimal polynomial over GF(8)") {
  auto F8 = BinaryField::get(3);
  DenseMatrix m(F8, 2, 2);
  m.set(0, 0, 2);
  m.set(1, 1, 2);
  PolyF mp = min_poly(m);  // x + 2, the scalar is a root
  CHECK(mp.deg() == 1);
  CHECK(mp.c[0] == 2);
  CHECK(mp.c[1] == 1);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix r = random_matrix(rng, F8, 4, 4);
    PolyF p = min_poly(r);
    CHECK(p.deg() <= 4);
    CHECK(polyf_eval_at_matrix(p, r).is_zero());
  }
}

TEST_CASE("poly evaluation at a matrix") {
  auto F2 = BinaryField::get(1);
  DenseMatrix m = companion(F2, kCyc7);
  CHECK(poly_eval_at_matrix(kCyc7, m).is_zero());
  CHECK(poly_eval_at_matrix(Poly2::one(), m).is_identity());
  CHECK(poly_eval_at_matrix(Poly2::zero(), m).is_zero());
  // x^7+1 also annihilates because the order is 7
  Poly2 x7p1 = Poly2::x_pow(7) + Poly2::one();
  CHECK(poly_eval_at_matrix(x7p1, m).is_zero());
  DenseMatrix a = poly_eval_at_matrix(kCubicA, m);
  DenseMatrix b = poly_eval_at_matrix(kCubicB, m);
  CHECK((a * b).is_zero());
  CHECK(!a.is_zero());
  CHECK(!b.is_zero());
}

TEST_CASE("element order via minimal polynomial factorization") {
  auto F2 = BinaryField::get(1);
  CHECK(element_order(DenseMatrix::identity(F2, 4)) == 1);
  CHECK(element_order(companion(F2, kCubicA)) == 7);
  CHECK(element_order(companion(F2, kCubicB)) == 7);
  CHECK(element_order(companion(F2, kCyc7)) == 7);
  CHECK(element_order(companion(F2, Poly2(0b10011))) == 15);
  CHECK(element_order(companion(F2, Poly2(0b111))) == 3);

  // unipotent blocks contribute powers of two
  DenseMatrix u2(F2, 2, 2);
  u2.set(0, 0, 1);
  u2.set(0, 1, 1);
  u2.set(1, 1, 1);
  CHECK(element_order(u2) == 2);
  DenseMatrix u3(F2, 3, 3);
  for (int i = 0; i < 3; ++i) u3.set(i, i, 1);
  u3.set(0, 1, 1);
  u3.set(1, 2, 1);
  CHECK(element_order(u3) == 4);
  CHECK(element_order(block_diag(u2, companion(F2, kCubicA))) == 14);

  DenseMatrix sing(F2, 2, 2);
  sing.set(0, 0, 1);
  try {
    element_order(sing);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code == Errc::Singular);
  }
  try {
    element_order(companion(F2, Poly2(0b10011)), 10);
    FAIL("expected OrderExceedsBound");
  } catch (const Error& e) {
    CHECK(e.code == Errc::OrderExceedsBound);
  }
}

TEST_CASE("element order by iteration over GF(8)") {
  auto F8 = BinaryField::get(3);
  DenseMatrix s(F8, 3, 3);
  for (int i = 0; i < 3; ++i) s.set(i, i, 2);
  CHECK(element_order(s) == 7);
  DenseMatrix id8 = DenseMatrix::identity(F8, 3);
  CHECK(element_order(id8) == 1);
  try {
    element_order(s, 3);
    FAIL("expected OrderExceedsBound");
  } catch (const Error& e) {
    CHECK(e.code == Errc::OrderExceedsBound);
  }
}

TEST_CASE("order property: exact on random invertibles") {
  auto F2 = BinaryField::get(1);
  std::mt19937_64 rng(0xc0de);
  for (int trial = 0; trial < 100; ++trial) {
    DenseMatrix m = random_invertible(rng, F2, 7);
    uint64_t o = element_order(m);
    CHECK(m.pow(o).is_identity());
    for (uint64_t p = 2; p * p <= o; ++p)
      if (o % p == 0) {
        CHECK(!m.pow(o / p).is_identity());
        while (o % p == 0) o /= p;
      }
    if (o > 1) CHECK(!m.pow(element_order(m) / o).is_identity());
  }
}

TEST_CASE("homogeneous split of the companion of the degree-6 cyclotomic") {
  auto F2 = BinaryField::get(1);
  DenseMatrix m = companion(F2, kCyc7);
  auto [c1, c2] = split_homogeneous(m);
  CHECK(c1.dim() == 3);
  CHECK(c2.dim() == 3);
  CHECK(subspace_sum_dim(c1, c2) == 6);
  CHECK(c1.is_invariant(m));
  CHECK(c2.is_invariant(m));
  // the first component is killed by x^3+x^2+1, the second by x^3+x+1
  DenseMatrix ka = poly_eval_at_matrix(kCubicB, m);
  DenseMatrix kb = poly_eval_at_matrix(kCubicA, m);
  for (int t = 0; t < 3; ++t) {
    CHECK((c1.basis.row(t) * ka).is_zero());
    CHECK((c2.basis.row(t) * kb).is_zero());
  }
}

TEST_CASE("homogeneous split with unbalanced multiplicities") {
  auto F2 = BinaryField::get(1);
  DenseMatrix m = block_diag(block_diag(companion(F2, kCubicA), companion(F2, kCubicA)),
                             companion(F2, kCubicB));
  auto [c1, c2] = split_homogeneous(m);
  CHECK(c1.dim() == 3);
  CHECK(c2.dim() == 6);
  CHECK(subspace_sum_dim(c1, c2) == 9);
}

TEST_CASE("homogeneous split rejects bad inputs") {
  auto F2 = BinaryField::get(1);
  try {
    split_homogeneous(DenseMatrix::identity(F2, 6));
    FAIL("expected WrongOrder");
  } catch (const Error& e) {
    CHECK(e.code == Errc::WrongOrder);
  }
  try {
    split_homogeneous(companion(F2, Poly2(0b10011)));
    FAIL("expected WrongOrder");
  } catch (const Error& e) {
    CHECK(e.code == Errc::WrongOrder);
  }
  try {
    split_homogeneous(block_diag(companion(F2, kCyc7), DenseMatrix::identity(F2, 1)));
    FAIL("expected NotFixedPointFree");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotFixedPointFree);
  }
  try {
    split_homogeneous(companion(F2, kCubicA));  // order 7 but only one component
    FAIL("expected WrongOrder");
  } catch (const Error& e) {
    CHECK(e.code == Errc::WrongOrder);
  }
}

TEST_CASE("gf8 rebase of the cyclotomic companion components") {
  auto F2 = BinaryField::get(1);
  DenseMatrix m = companion(F2, kCyc7);
  auto [c1, c2] = split_homogeneous(m);

  GF8Structure g1 = rebase_as_gf8(m, c1);
  CHECK(g1.gf8_dim() == 1);
  CHECK(g1.scalar() == 3);  // least root of x^3+x^2+1 in the default GF(8)
  DenseMatrix r1 = g1.rebase_matrix(m);
  uint32_t s1 = 0;
  CHECK(r1.is_scalar(&s1));
  CHECK(s1 == g1.scalar());

  GF8Structure g2 = rebase_as_gf8(m, c2);
  CHECK(g2.gf8_dim() == 1);
  CHECK(g2.scalar() == 2);  // the residue class of x under x^3+x+1
  uint32_t s2 = 0;
  CHECK(g2.rebase_matrix(m).is_scalar(&s2));
  CHECK(s2 == 2);

  // powers rebase to powers of the scalar
  auto F8 = g2.gf8();
  for (int e = 1; e < 7; ++e) {
    uint32_t se = 0;
    CHECK(g2.rebase_matrix(m.pow(e)).is_scalar(&se));
    CHECK(se == F8->pow(2, e));
  }
}

TEST_CASE("gf8 rebase sees block swaps as permutation matrices") {
  auto F2 = BinaryField::get(1);
  DenseMatrix block = companion(F2, kCubicA);
  DenseMatrix m = block_diag(block, block);
  Subspace full = row_space(DenseMatrix::identity(F2, 6));
  GF8Structure g = rebase_as_gf8(m, full);
  CHECK(g.gf8_dim() == 2);
  CHECK(g.scalar() == 2);

  DenseMatrix swap(F2, 6, 6);
  for (int i = 0; i < 3; ++i) {
    swap.set(i, i + 3, 1);
    swap.set(i + 3, i, 1);
  }
  DenseMatrix r = g.rebase_matrix(swap);
  CHECK(r.rows() == 2);
  CHECK(r.get(0, 0) == 0);
  CHECK(r.get(0, 1) == 1);
  CHECK(r.get(1, 0) == 1);
  CHECK(r.get(1, 1) == 0);

  // the scalar action itself rebases to scalar times identity
  uint32_t s = 0;
  CHECK(g.rebase_matrix(m).is_scalar(&s));
  CHECK(s == 2);
}

TEST_CASE("gf8 vector map is gf8 linear") {
  auto F2 = BinaryField::get(1);
  DenseMatrix m = companion(F2, kCyc7);
  auto comps = split_homogeneous(m);
  GF8Structure g = rebase_as_gf8(m, comps.first);
  auto F8 = g.gf8();
  std::mt19937_64 rng(246);
  for (int trial = 0; trial < 30; ++trial) {
    DenseMatrix v(F2, 1, 6);
    for (int t = 0; t < comps.first.dim(); ++t)
      if (rng() & 1) v = v + comps.first.basis.row(t);
    DenseMatrix lhs = g.to_gf8(v * m);
    DenseMatrix rhs = g.to_gf8(v);
    for (int j = 0; j < g.gf8_dim(); ++j)
      CHECK(lhs.get(0, j) == F8->mul(g.scalar(), rhs.get(0, j)));
  }
}

TEST_CASE("gf8 rebase rejects what it cannot express") {
  auto F2 = BinaryField::get(1);
  DenseMatrix block = companion(F2, kCubicA);
  DenseMatrix m = block_diag(block, block);
  Subspace full = row_space(DenseMatrix::identity(F2, 6));
  GF8Structure g = rebase_as_gf8(m, full);

  // shuffling inside one block breaks commutation with the scalar action
  DenseMatrix bad = DenseMatrix::identity(F2, 6);
  bad.set(0, 0, 0);
  bad.set(0, 1, 1);
  bad.set(1, 1, 0);
  bad.set(1, 0, 1);
  try {
    g.rebase_matrix(bad);
    FAIL("expected NotScalarizable");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotScalarizable);
  }

  // a unipotent has no irreducible cubic action anywhere
  DenseMatrix u = DenseMatrix::identity(F2, 6);
  u.set(0, 1, 1);
  try {
    rebase_as_gf8(u, full);
    FAIL("expected NotScalarizable");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotScalarizable);
  }

  // component not preserved by the matrix
  auto comps = split_homogeneous(companion(F2, kCyc7));
  DenseMatrix other = DenseMatrix::identity(F2, 6);
  other.set(0, 1, 1);
  try {
    rebase_as_gf8(other, comps.first);
    FAIL("expected NotInvariant");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotInvariant);
  }

  // vectors outside the component are rejected by the coordinate map
  GF8Structure gc = rebase_as_gf8(companion(F2, kCyc7), comps.first);
  DenseMatrix stray(F2, 1, 6);
  stray.set(0, 5, 1);
  if (!comps.first.contains(stray)) {
    try {
      gc.to_gf8(stray);
      FAIL("expected NotInvariant");
    } catch (const Error& e) {
      CHECK(e.code == Errc::NotInvariant);
    }
  }
}
