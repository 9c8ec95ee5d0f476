#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "amalgamkit/errors.hpp"

namespace amk {

// Dense polynomial over GF(2). Bit i of the word vector is the coefficient
// of x^i; the vector carries no trailing zero words. The zero polynomial is
// the empty vector (degree -1).
class Poly2 {
 public:
  Poly2() = default;
  explicit Poly2(uint64_t low_bits);
  static Poly2 zero() { return Poly2(); }
  static Poly2 one() { return Poly2(1); }
  static Poly2 x() { return Poly2(2); }
  static Poly2 x_pow(int n);

  int deg() const;
  bool is_zero() const { return w_.empty(); }
  bool get(int i) const;
  void set(int i, bool v);
  uint64_t low64() const { return w_.empty() ? 0 : w_[0]; }

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.w_ == b.w_; }
  friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

  // Canonical order: by degree, ties broken lexicographically scanning
  // coefficients from the highest degree down.
  friend bool operator<(const Poly2& a, const Poly2& b);

  Poly2 shifted(int n) const;  // multiply by x^n
  void normalize();

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  std::vector<uint64_t> w_;
};

struct Poly2DivMod {
  Poly2 quot, rem;
};

Poly2DivMod poly2_divmod(const Poly2& a, const Poly2& b);  // DivisionByZero
Poly2 poly2_mod(const Poly2& a, const Poly2& b);
Poly2 poly2_gcd(Poly2 a, Poly2 b);
Poly2 poly2_derivative(const Poly2& a);
Poly2 poly2_powmod(const Poly2& a, uint64_t e, const Poly2& m);
// x^(2^e) mod m via repeated squaring.
Poly2 poly2_frob_powmod(int e, const Poly2& m);
bool poly2_is_irreducible(const Poly2& f);

// Text form "x^6+x^5+x^4+x^3+x^2+x+1"; "1" and "0" for the constants.
std::string poly2_to_string(const Poly2& p);
Poly2 poly2_parse(const std::string& text);  // SyntaxError

struct Poly2Factor {
  Poly2 factor;
  int multiplicity;
};

// Complete factorization into irreducibles: squarefree split, then
// distinct-degree, then equal-degree splitting. Result sorted in the
// canonical polynomial order; multiplicities multiply back to the input.
// ZeroPolynomial on zero input; units factor to an empty list.
std::vector<Poly2Factor> poly_factor_gf2(const Poly2& f);

// GF(2^k) for 1 <= k <= 16 with an explicit irreducible modulus.
// Elements are uint32_t bit vectors of the residue polynomials.
class BinaryField {
 public:
  using Elt = uint32_t;

  // DegreeOutOfRange unless 1 <= k <= 16; ReducibleModulus if the modulus
  // fails the irreducibility check; DegreeMismatch if deg(modulus) != k.
  static std::shared_ptr<const BinaryField> make(int k, const Poly2& modulus);
  // Field with the default modulus for k (table below, fixed in source).
  static std::shared_ptr<const BinaryField> get(int k);
  static Poly2 default_modulus(int k);

  int degree() const { return k_; }
  uint64_t order() const { return 1ull << k_; }
  uint32_t modulus_bits() const { return mod_bits_; }
  Poly2 modulus() const;

  Elt add(Elt a, Elt b) const { return a ^ b; }
  Elt mul(Elt a, Elt b) const;
  Elt sqr(Elt a) const { return mul(a, a); }
  Elt inv(Elt a) const;  // DivisionByZero on 0
  Elt pow(Elt a, uint64_t e) const;
  // Multiplicative order of a nonzero element (DivisionByZero on 0).
  uint64_t elt_order(Elt a) const;

  bool same_as(const BinaryField& o) const {
    return k_ == o.k_ && mod_bits_ == o.mod_bits_;
  }

 private:
  BinaryField(int k, uint32_t mod_bits) : k_(k), mod_bits_(mod_bits) {}
  int k_;
  uint32_t mod_bits_;
};

using FieldPtr = std::shared_ptr<const BinaryField>;

// Polynomial with coefficients in a BinaryField, dense, index = degree.
// Used for minimal polynomials of matrices over any GF(2^k).
struct PolyF {
  FieldPtr F;
  std::vector<uint32_t> c;  // no trailing zeros

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void normalize();
  void make_monic();
};

PolyF polyf_zero(FieldPtr F);
PolyF polyf_one(FieldPtr F);
PolyF polyf_add(const PolyF& a, const PolyF& b);
PolyF polyf_mul(const PolyF& a, const PolyF& b);
PolyF polyf_divmod(const PolyF& a, const PolyF& b, PolyF* rem);
PolyF polyf_gcd(PolyF a, PolyF b);
PolyF polyf_lcm(const PolyF& a, const PolyF& b);
bool polyf_eq(const PolyF& a, const PolyF& b);

// GF(2) bridge: PolyF over a degree-1 field <-> Poly2.
PolyF polyf_from_poly2(const Poly2& p, FieldPtr F2);
Poly2 poly2_from_polyf(const PolyF& p);  // UnsupportedField unless k == 1

}  // namespace amk
