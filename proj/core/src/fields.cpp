#include "amalgamkit/fields.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace amk {

// ---------------------------------------------------------------- Poly2 --

Poly2::Poly2(uint64_t low_bits) {
  if (low_bits) w_.push_back(low_bits);
}

Poly2 Poly2::x_pow(int n) {
  Poly2 p;
  p.set(n, true);
  return p;
}

int Poly2::deg() const {
  if (w_.empty()) return -1;
  int top = static_cast<int>(w_.size()) - 1;
  return top * 64 + 63 - __builtin_clzll(w_[top]);
}

bool Poly2::get(int i) const {
  size_t word = static_cast<size_t>(i) / 64;
  if (i < 0 || word >= w_.size()) return false;
  return (w_[word] >> (i % 64)) & 1;
}

void Poly2::set(int i, bool v) {
  if (i < 0) fail(Errc::DegreeOutOfRange, "negative exponent");
  size_t word = static_cast<size_t>(i) / 64;
  if (word >= w_.size()) {
    if (!v) return;
    w_.resize(word + 1, 0);
  }
  uint64_t bit = 1ull << (i % 64);
  if (v)
    w_[word] |= bit;
  else
    w_[word] &= ~bit;
  if (!v) normalize();
}

void Poly2::normalize() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 r;
  r.w_.resize(std::max(a.w_.size(), b.w_.size()), 0);
  for (size_t i = 0; i < a.w_.size(); ++i) r.w_[i] ^= a.w_[i];
  for (size_t i = 0; i < b.w_.size(); ++i) r.w_[i] ^= b.w_[i];
  r.normalize();
  return r;
}

Poly2 Poly2::shifted(int n) const {
  if (is_zero() || n == 0) return n >= 0 ? *this : Poly2();
  Poly2 r;
  int wordshift = n / 64, bitshift = n % 64;
  r.w_.assign(w_.size() + wordshift + 1, 0);
  for (size_t i = 0; i < w_.size(); ++i) {
    r.w_[i + wordshift] |= w_[i] << bitshift;
    if (bitshift) r.w_[i + wordshift + 1] |= w_[i] >> (64 - bitshift);
  }
  r.normalize();
  return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  if (a.is_zero() || b.is_zero()) return Poly2();
  Poly2 r;
  r.w_.assign(a.w_.size() + b.w_.size(), 0);
  for (size_t i = 0; i < a.w_.size(); ++i) {
    uint64_t av = a.w_[i];
    while (av) {
      int bit = __builtin_ctzll(av);
      av &= av - 1;
      int shift = static_cast<int>(i) * 64 + bit;
      int wordshift = shift / 64, bitshift = shift % 64;
      for (size_t j = 0; j < b.w_.size(); ++j) {
        r.w_[j + wordshift] ^= b.w_[j] << bitshift;
        if (bitshift) r.w_[j + wordshift + 1] ^= b.w_[j] >> (64 - bitshift);
      }
    }
  }
  r.normalize();
  return r;
}

bool operator<(const Poly2& a, const Poly2& b) {
  int da = a.deg(), db = b.deg();
  if (da != db) return da < db;
  for (int i = da; i >= 0; --i) {
    bool ba = a.get(i), bb = b.get(i);
    if (ba != bb) return bb;  // coefficient 0 sorts before 1
  }
  return false;
}

Poly2DivMod poly2_divmod(const Poly2& a, const Poly2& b) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  Poly2DivMod r{Poly2(), a};
  int db = b.deg();
  while (!r.rem.is_zero() && r.rem.deg() >= db) {
    int shift = r.rem.deg() - db;
    r.quot.set(shift, !r.quot.get(shift));
    r.rem = r.rem + b.shifted(shift);
  }
  return r;
}

Poly2 poly2_mod(const Poly2& a, const Poly2& b) { return poly2_divmod(a, b).rem; }

Poly2 poly2_gcd(Poly2 a, Poly2 b) {
  while (!b.is_zero()) {
    Poly2 r = poly2_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

Poly2 poly2_derivative(const Poly2& a) {
  Poly2 r;
  // Over GF(2) only odd-degree terms survive, dropping one degree.
  for (int i = 1; i <= a.deg(); i += 2)
    if (a.get(i)) r.set(i - 1, true);
  return r;
}

Poly2 poly2_powmod(const Poly2& a, uint64_t e, const Poly2& m) {
  Poly2 base = poly2_mod(a, m);
  Poly2 acc = Poly2::one();
  while (e) {
    if (e & 1) acc = poly2_mod(acc * base, m);
    base = poly2_mod(base * base, m);
    e >>= 1;
  }
  return acc;
}

Poly2 poly2_frob_powmod(int e, const Poly2& m) {
  Poly2 r = poly2_mod(Poly2::x(), m);
  for (int i = 0; i < e; ++i) r = poly2_mod(r * r, m);
  return r;
}

bool poly2_is_irreducible(const Poly2& f) {
  int n = f.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  // x^(2^n) == x mod f, and x^(2^(n/p)) - x coprime to f for primes p | n.
  Poly2 xq = poly2_frob_powmod(n, f);
  if (xq != poly2_mod(Poly2::x(), f)) return false;
  for (int p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    Poly2 g = poly2_gcd(poly2_frob_powmod(n / p, f) + Poly2::x(), f);
    if (g.deg() != 0) return false;
  }
  return true;
}

std::string poly2_to_string(const Poly2& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.deg(); i >= 0; --i) {
    if (!p.get(i)) continue;
    if (!out.empty()) out += "+";
    if (i == 0)
      out += "1";
    else if (i == 1)
      out += "x";
    else
      out += "x^" + std::to_string(i);
  }
  return out;
}

Poly2 poly2_parse(const std::string& text) {
  Poly2 p;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i >= text.size()) fail(Errc::SyntaxError, "empty polynomial");
  bool expect_term = true;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (!expect_term) {
      if (text[i] != '+') fail(Errc::SyntaxError, "expected '+' in polynomial");
      ++i;
      expect_term = true;
      continue;
    }
    if (text[i] == 'x') {
      ++i;
      int e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
          fail(Errc::SyntaxError, "expected exponent digits");
        e = 0;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
          e = e * 10 + (text[i++] - '0');
      }
      p.set(e, !p.get(e));
    } else if (text[i] == '1') {
      ++i;
      p.set(0, !p.get(0));
    } else if (text[i] == '0') {
      ++i;
    } else {
      fail(Errc::SyntaxError, std::string("unexpected character '") + text[i] +
                                  "' in polynomial");
    }
    expect_term = false;
  }
  if (expect_term) fail(Errc::SyntaxError, "dangling '+' in polynomial");
  return p;
}

// --------------------------------------------------------- factorization --

namespace {

// Square root of a polynomial that is a perfect square (all exponents even).
Poly2 poly2_sqrt(const Poly2& f) {
  Poly2 r;
  for (int i = 0; i <= f.deg(); i += 2)
    if (f.get(i)) r.set(i / 2, true);
  return r;
}

// Trace map r + r^2 + r^4 + ... + r^(2^(d-1)) mod f.
Poly2 trace_map(const Poly2& r, int d, const Poly2& f) {
  Poly2 acc = poly2_mod(r, f);
  Poly2 t = acc;
  for (int i = 1; i < d; ++i) {
    t = poly2_mod(t * t, f);
    acc = acc + t;
  }
  return acc;
}

// Equal-degree splitting of f = product of distinct irreducibles of degree d.
void edf(const Poly2& f, int d, std::mt19937_64& rng,
         std::vector<Poly2>& out) {
  if (f.deg() == d) {
    out.push_back(f);
    return;
  }
  for (;;) {
    Poly2 r;
    for (int i = 0; i < f.deg(); ++i)
      if (rng() & 1) r.set(i, true);
    if (r.is_zero()) continue;
    Poly2 g = poly2_gcd(trace_map(r, d, f), f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, rng, out);
      edf(poly2_divmod(f, g).quot, d, rng, out);
      return;
    }
  }
}

// Distinct-degree then equal-degree factorization of a squarefree input.
void factor_squarefree(Poly2 f, std::mt19937_64& rng, std::vector<Poly2>& out) {
  Poly2 h = poly2_mod(Poly2::x(), f);
  int d = 0;
  while (f.deg() > 0) {
    ++d;
    if (2 * d > f.deg()) {
      out.push_back(f);
      return;
    }
    h = poly2_mod(h * h, f);
    Poly2 g = poly2_gcd(h + Poly2::x(), f);
    if (g.deg() > 0) {
      edf(g, d, rng, out);
      f = poly2_divmod(f, g).quot;
      h = poly2_mod(h, f);
    }
  }
}

}  // namespace

std::vector<Poly2Factor> poly_factor_gf2(const Poly2& f) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "cannot factor zero");
  std::map<Poly2, int> found;
  // Deterministic seed: equal-degree splitting stays reproducible.
  std::mt19937_64 rng(0x5eedf00d1234abcdull);
  Poly2 rest = f;
  int power = 1;  // every factor of `rest` counts with this multiplicity
  while (rest.deg() > 0) {
    Poly2 der = poly2_derivative(rest);
    if (der.is_zero()) {
      rest = poly2_sqrt(rest);
      power *= 2;
      continue;
    }
    Poly2 sf = poly2_divmod(rest, poly2_gcd(rest, der)).quot;  // squarefree part
    std::vector<Poly2> irr;
    factor_squarefree(sf, rng, irr);
    for (const Poly2& p : irr) {
      int m = 0;
      while (poly2_mod(rest, p).is_zero()) {
        rest = poly2_divmod(rest, p).quot;
        ++m;
      }
      found[p] += m * power;
    }
  }
  std::vector<Poly2Factor> out;
  for (auto& [p, m] : found) out.push_back({p, m});
  return out;  // std::map iterates in the canonical Poly2 order
}

// ---------------------------------------------------------- BinaryField --

Poly2 BinaryField::default_modulus(int k) {
  // Low-weight irreducible (primitive) polynomials, one per degree.
  static const uint32_t table[17] = {
      0,
      0b11,                 // x+1
      0b111,                // x^2+x+1
      0b1011,               // x^3+x+1
      0b10011,              // x^4+x+1
      0b100101,             // x^5+x^2+1
      0b1000011,            // x^6+x+1
      0b10000011,           // x^7+x+1
      0b100011101,          // x^8+x^4+x^3+x^2+1
      0b1000010001,         // x^9+x^4+1
      0b10000001001,        // x^10+x^3+1
      0b100000000101,       // x^11+x^2+1
      0b1000001010011,      // x^12+x^6+x^4+x+1
      0b10000000011011,     // x^13+x^4+x^3+x+1
      0b100010001000011,    // x^14+x^10+x^6+x+1
      0b1000000000000011,   // x^15+x+1
      0b10001000000001011,  // x^16+x^12+x^3+x+1
  };
  if (k < 1 || k > 16) fail(Errc::DegreeOutOfRange, "field degree must be 1..16");
  return Poly2(table[k]);
}

std::shared_ptr<const BinaryField> BinaryField::make(int k, const Poly2& modulus) {
  if (k < 1 || k > 16) fail(Errc::DegreeOutOfRange, "field degree must be 1..16");
  if (modulus.deg() != k)
    fail(Errc::DegreeMismatch, "modulus degree " + std::to_string(modulus.deg()) +
                                   " does not match field degree " +
                                   std::to_string(k));
  if (!poly2_is_irreducible(modulus))
    fail(Errc::ReducibleModulus, "modulus " + poly2_to_string(modulus) +
                                     " is reducible over GF(2)");
  uint32_t bits = static_cast<uint32_t>(modulus.low64());
  return std::shared_ptr<const BinaryField>(new BinaryField(k, bits));
}

std::shared_ptr<const BinaryField> BinaryField::get(int k) {
  static std::map<int, std::shared_ptr<const BinaryField>> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto f = make(k, default_modulus(k));
  cache[k] = f;
  return f;
}

Poly2 BinaryField::modulus() const { return Poly2(mod_bits_); }

BinaryField::Elt BinaryField::mul(Elt a, Elt b) const {
  if (k_ == 1) return a & b;
  uint32_t acc = 0;
  uint32_t top = 1u << k_;
  while (b) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= mod_bits_;
  }
  return acc;
}

BinaryField::Elt BinaryField::pow(Elt a, uint64_t e) const {
  Elt acc = 1, base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

BinaryField::Elt BinaryField::inv(Elt a) const {
  if (a == 0) fail(Errc::DivisionByZero, "inverse of zero field element");
  return pow(a, order() - 2);
}

uint64_t BinaryField::elt_order(Elt a) const {
  if (a == 0) fail(Errc::DivisionByZero, "order of zero field element");
  uint64_t n = order() - 1;
  uint64_t ord = n;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (ord % p == 0 && pow(a, ord / p) == 1) ord /= p;
    while (n % p == 0) n /= p;
  }
  if (n > 1)
    while (ord % n == 0 && pow(a, ord / n) == 1) ord /= n;
  return ord;
}

// ----------------------------------------------------------------- PolyF --

void PolyF::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void PolyF::make_monic() {
  normalize();
  if (c.empty()) return;
  uint32_t lead = c.back();
  if (lead == 1) return;
  uint32_t li = F->inv(lead);
  for (auto& x : c) x = F->mul(x, li);
}

PolyF polyf_zero(FieldPtr F) { return PolyF{std::move(F), {}}; }

PolyF polyf_one(FieldPtr F) { return PolyF{std::move(F), {1}}; }

static void check_fields(const PolyF& a, const PolyF& b) {
  if (!a.F->same_as(*b.F))
    fail(Errc::FieldMismatch, "polynomial operands over different fields");
}

PolyF polyf_add(const PolyF& a, const PolyF& b) {
  check_fields(a, b);
  PolyF r{a.F, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] ^= a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] ^= b.c[i];
  r.normalize();
  return r;
}

PolyF polyf_mul(const PolyF& a, const PolyF& b) {
  check_fields(a, b);
  if (a.is_zero() || b.is_zero()) return polyf_zero(a.F);
  PolyF r{a.F, std::vector<uint32_t>(a.c.size() + b.c.size() - 1, 0)};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] ^= a.F->mul(a.c[i], b.c[j]);
  }
  r.normalize();
  return r;
}

PolyF polyf_divmod(const PolyF& a, const PolyF& b, PolyF* rem) {
  check_fields(a, b);
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  PolyF q = polyf_zero(a.F);
  PolyF r = a;
  uint32_t lead_inv = a.F->inv(b.c.back());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    uint32_t coef = a.F->mul(r.c.back(), lead_inv);
    if (static_cast<int>(q.c.size()) < shift + 1) q.c.resize(shift + 1, 0);
    q.c[shift] ^= coef;
    for (size_t i = 0; i < b.c.size(); ++i)
      r.c[i + shift] ^= a.F->mul(coef, b.c[i]);
    r.normalize();
  }
  q.normalize();
  if (rem) *rem = r;
  return q;
}

PolyF polyf_gcd(PolyF a, PolyF b) {
  while (!b.is_zero()) {
    PolyF r = polyf_zero(a.F);
    polyf_divmod(a, b, &r);
    a = std::move(b);
    b = std::move(r);
  }
  a.make_monic();
  return a;
}

PolyF polyf_lcm(const PolyF& a, const PolyF& b) {
  if (a.is_zero() || b.is_zero()) return polyf_zero(a.F);
  PolyF g = polyf_gcd(a, b);
  PolyF q = polyf_divmod(a, g, nullptr);
  PolyF r = polyf_mul(q, b);
  r.make_monic();
  return r;
}

bool polyf_eq(const PolyF& a, const PolyF& b) {
  return a.F->same_as(*b.F) && a.c == b.c;
}

PolyF polyf_from_poly2(const Poly2& p, FieldPtr F2) {
  PolyF r{std::move(F2), {}};
  for (int i = 0; i <= p.deg(); ++i) r.c.push_back(p.get(i) ? 1 : 0);
  r.normalize();
  return r;
}

Poly2 poly2_from_polyf(const PolyF& p) {
  if (p.F->degree() != 1)
    fail(Errc::UnsupportedField, "only GF(2) polynomials convert to Poly2");
  Poly2 r;
  for (int i = 0; i <= p.deg(); ++i)
    if (p.c[i]) r.set(i, true);
  return r;
}

}  // namespace amk
