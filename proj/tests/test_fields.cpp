#include "amalgamkit/fields.hpp"

#include <algorithm>
#include <random>

#include "amalgamkit/errors.hpp"
#include "doctest.h"

using namespace amk;

namespace {

Poly2 random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> dd(0, max_deg);
  int d = dd(rng);
  Poly2 p = Poly2::x_pow(d);
  for (int i = 0; i < d; ++i)
    if (rng() & 1) p.set(i, true);
  return p;
}

}  // namespace

TEST_CASE("poly2 basics") {
  Poly2 z = Poly2::zero();
  CHECK(z.is_zero());
  CHECK(z.deg() == -1);
  CHECK(Poly2::one().deg() == 0);
  CHECK(Poly2::x().deg() == 1);
  CHECK(Poly2::x_pow(100).deg() == 100);

  Poly2 a(0b1011);  // x^3+x+1
  CHECK(a.deg() == 3);
  CHECK(a.get(0));
  CHECK(a.get(1));
  CHECK(!a.get(2));
  CHECK(a.get(3));
  CHECK(a + a == Poly2::zero());
  CHECK(a * Poly2::one() == a);
  CHECK(a * Poly2::zero() == Poly2::zero());
  CHECK(a.shifted(2) == Poly2(0b101100));

  // (x+1)^2 = x^2+1 in characteristic 2
  CHECK(Poly2(0b11) * Poly2(0b11) == Poly2(0b101));
}

TEST_CASE("poly2 canonical order sorts coefficients from the top") {
  CHECK(Poly2(0b1011) < Poly2(0b1101));   // x^3+x+1 before x^3+x^2+1
  CHECK(Poly2(0b11) < Poly2(0b1011));     // lower degree first
  CHECK(!(Poly2(0b1101) < Poly2(0b1101)));
  std::vector<Poly2> v{Poly2(0b1101), Poly2(0b111), Poly2(0b1011)};
  std::sort(v.begin(), v.end());
  CHECK(v[0] == Poly2(0b111));
  CHECK(v[1] == Poly2(0b1011));
  CHECK(v[2] == Poly2(0b1101));
}

TEST_CASE("poly2 division invariant") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 500; ++trial) {
    Poly2 a = random_poly(rng, 80);
    Poly2 b = random_poly(rng, 40);
    auto qr = poly2_divmod(a, b);
    CHECK(qr.quot * b + qr.rem == a);
    CHECK(qr.rem.deg() < b.deg());
  }
  CHECK_THROWS_AS(poly2_divmod(Poly2(0b101), Poly2::zero()), Error);
}

TEST_CASE("poly2 gcd divides both inputs") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    Poly2 a = random_poly(rng, 40);
    Poly2 b = random_poly(rng, 40);
    Poly2 g = poly2_gcd(a, b);
    CHECK(poly2_mod(a, g).is_zero());
    CHECK(poly2_mod(b, g).is_zero());
    CHECK(poly2_gcd(a, b) == poly2_gcd(b, a));
  }
  Poly2 c = random_poly(rng, 10);
  CHECK(poly2_gcd(c, Poly2::zero()) == c);
}

TEST_CASE("poly2 text round trip") {
  CHECK(poly2_to_string(Poly2::zero()) == "0");
  CHECK(poly2_to_string(Poly2::one()) == "1");
  CHECK(poly2_to_string(Poly2::x()) == "x");
  CHECK(poly2_to_string(Poly2(0b1011)) == "x^3+x+1");
  CHECK(poly2_parse("x^6+x^5+x^4+x^3+x^2+x+1") == Poly2(0x7f));
  CHECK(poly2_parse(" x^3 + x + 1 ") == Poly2(0b1011));
  CHECK_THROWS_AS(poly2_parse("x^"), Error);
  CHECK_THROWS_AS(poly2_parse("y+1"), Error);
  CHECK_THROWS_AS(poly2_parse(""), Error);

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    Poly2 p = random_poly(rng, 70);
    CHECK(poly2_parse(poly2_to_string(p)) == p);
  }
}

TEST_CASE("irreducibility witnesses") {
  CHECK(poly2_is_irreducible(Poly2(0b10)));      // x
  CHECK(poly2_is_irreducible(Poly2(0b11)));      // x+1
  CHECK(poly2_is_irreducible(Poly2(0b111)));     // x^2+x+1
  CHECK(poly2_is_irreducible(Poly2(0b1011)));    // x^3+x+1
  CHECK(poly2_is_irreducible(Poly2(0b1101)));    // x^3+x^2+1
  CHECK(poly2_is_irreducible(Poly2(0b10011)));   // x^4+x+1
  CHECK(!poly2_is_irreducible(Poly2(0b101)));    // (x+1)^2
  CHECK(!poly2_is_irreducible(Poly2(0b1111)));   // (x+1)(x^2+x+1)
  CHECK(!poly2_is_irreducible(Poly2(0x7f)));     // product of two cubics
  CHECK(!poly2_is_irreducible(Poly2::one()));
  CHECK(!poly2_is_irreducible(Poly2::zero()));
}

TEST_CASE("factor: seventh cyclotomic splits into the two cubics") {
  auto f = poly_factor_gf2(Poly2(0x7f));
  REQUIRE(f.size() == 2);
  CHECK(f[0].factor == Poly2(0b1011));
  CHECK(f[0].multiplicity == 1);
  CHECK(f[1].factor == Poly2(0b1101));
  CHECK(f[1].multiplicity == 1);
}

TEST_CASE("factor: repeated and mixed multiplicities") {
  auto sq = poly_factor_gf2(Poly2(0b101));  // x^2+1
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].factor == Poly2(0b11));
  CHECK(sq[0].multiplicity == 2);

  auto cube = poly_factor_gf2(Poly2(0b1111));  // x^3+x^2+x+1 = (x+1)^3
  REQUIRE(cube.size() == 1);
  CHECK(cube[0].factor == Poly2(0b11));
  CHECK(cube[0].multiplicity == 3);

  auto irr = poly_factor_gf2(Poly2(0b10011));
  REQUIRE(irr.size() == 1);
  CHECK(irr[0].factor == Poly2(0b10011));
  CHECK(irr[0].multiplicity == 1);

  auto unit = poly_factor_gf2(Poly2::one());
  CHECK(unit.empty());
  CHECK_THROWS_AS(poly_factor_gf2(Poly2::zero()), Error);
}

TEST_CASE("factor round trip on random polynomials") {
  std::mt19937_64 rng(0xfade);
  for (int trial = 0; trial < 1000; ++trial) {
    Poly2 p = random_poly(rng, 24);
    if (trial % 3 == 0) p = p * p;                      // force even multiplicities
    if (trial % 5 == 0) p = p * random_poly(rng, 6);    // mix in small factors
    auto factors = poly_factor_gf2(p);
    Poly2 prod = Poly2::one();
    for (size_t i = 0; i < factors.size(); ++i) {
      CHECK(poly2_is_irreducible(factors[i].factor));
      CHECK(factors[i].multiplicity >= 1);
      if (i) CHECK(factors[i - 1].factor < factors[i].factor);
      for (int m = 0; m < factors[i].multiplicity; ++m)
        prod = prod * factors[i].factor;
    }
    CHECK(prod == p);
  }
}

TEST_CASE("default moduli are irreducible of the right degree") {
  for (int k = 1; k <= 16; ++k) {
    auto F = BinaryField::get(k);
    CHECK(F->degree() == k);
    CHECK(F->modulus().deg() == k);
    CHECK(poly2_is_irreducible(F->modulus()));
  }
  CHECK(BinaryField::get(3)->modulus() == Poly2(0b1011));
  CHECK_THROWS_AS(BinaryField::get(0), Error);
  CHECK_THROWS_AS(BinaryField::get(17), Error);
}

TEST_CASE("field construction rejects bad moduli") {
  try {
    BinaryField::make(3, Poly2(0b1111));  // (x+1)(x^2+x+1)
    FAIL("expected ReducibleModulus");
  } catch (const Error& e) {
    CHECK(e.code == Errc::ReducibleModulus);
  }
  try {
    BinaryField::make(4, Poly2(0b1011));
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.code == Errc::DegreeMismatch);
  }
  // the other irreducible cubic is a legitimate alternative modulus
  auto F = BinaryField::make(3, Poly2(0b1101));
  CHECK(!F->same_as(*BinaryField::get(3)));
  CHECK(F->mul(2, 2) == 4);
  CHECK(F->mul(4, 2) == 5);  // x^3 = x^2+1 under x^3+x^2+1
}

TEST_CASE("field axioms hold exhaustively for small degrees") {
  for (int k = 1; k <= 4; ++k) {
    auto F = BinaryField::get(k);
    uint32_t n = static_cast<uint32_t>(F->order());
    for (uint32_t a = 0; a < n; ++a) {
      CHECK(F->add(a, 0) == a);
      CHECK(F->mul(a, 1) == a);
      CHECK(F->mul(a, 0) == 0);
      CHECK(F->add(a, a) == 0);
      if (a) {
        uint32_t ai = F->inv(a);
        CHECK(F->mul(a, ai) == 1);
        CHECK(F->pow(a, F->order() - 1) == 1);
      }
      for (uint32_t b = 0; b < n; ++b) {
        CHECK(F->mul(a, b) == F->mul(b, a));
        CHECK(F->sqr(F->add(a, b)) == F->add(F->sqr(a), F->sqr(b)));
        for (uint32_t c = 0; c < n; ++c) {
          CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
          CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        }
      }
    }
    CHECK_THROWS_AS(F->inv(0), Error);
  }
}

TEST_CASE("multiplicative orders in GF(8) and GF(16)") {
  auto F8 = BinaryField::get(3);
  for (uint32_t a = 1; a < 8; ++a) {
    CHECK(F8->pow(a, 7) == 1);
    CHECK(F8->elt_order(a) == (a == 1 ? 1u : 7u));
  }

  auto F16 = BinaryField::get(4);
  int primitive = 0;
  for (uint32_t a = 1; a < 16; ++a) {
    uint64_t o = F16->elt_order(a);
    CHECK(15 % o == 0);
    CHECK(F16->pow(a, o) == 1);
    for (uint64_t p : {3, 5})
      if (o % p == 0) CHECK(F16->pow(a, o / p) != 1);
    if (o == 15) ++primitive;
  }
  CHECK(primitive == 8);  // phi(15)
}

TEST_CASE("powmod and frobenius agree") {
  Poly2 m(0b10011);
  Poly2 x = Poly2::x();
  CHECK(poly2_powmod(x, 16, m) == poly2_frob_powmod(4, m));
  CHECK(poly2_frob_powmod(4, m) == x);  // x^(2^4) = x in GF(16)
  CHECK(poly2_powmod(x, 15, m) == Poly2::one());
}

TEST_CASE("polyf arithmetic over GF(8)") {
  auto F = BinaryField::get(3);
  PolyF one = polyf_one(F);
  // (x+2)(x+3) then gcd with (x+2)(x+4)
  PolyF a{F, {2, 1}};
  PolyF b{F, {3, 1}};
  PolyF c{F, {4, 1}};
  PolyF ab = polyf_mul(a, b);
  PolyF ac = polyf_mul(a, c);
  CHECK(ab.deg() == 2);
  PolyF g = polyf_gcd(ab, ac);
  CHECK(polyf_eq(g, a));
  PolyF l = polyf_lcm(a, b);
  CHECK(polyf_eq(l, ab));
  CHECK(polyf_eq(polyf_lcm(ab, a), ab));

  PolyF rem;
  PolyF q = polyf_divmod(ab, a, &rem);
  CHECK(rem.is_zero());
  CHECK(polyf_eq(q, b));
  CHECK(polyf_eq(polyf_add(ab, ab), polyf_zero(F)));

  auto F2 = BinaryField::get(1);
  CHECK_THROWS_AS(polyf_mul(a, polyf_one(F2)), Error);
}

TEST_CASE("polyf bridges to poly2 only in degree one") {
  auto F2 = BinaryField::get(1);
  Poly2 p(0b1101);
  PolyF q = polyf_from_poly2(p, F2);
  CHECK(q.deg() == 3);
  CHECK(poly2_from_polyf(q) == p);
  auto F8 = BinaryField::get(3);
  PolyF over8{F8, {5, 1}};
  CHECK_THROWS_AS(poly2_from_polyf(over8), Error);
}
