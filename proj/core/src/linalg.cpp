#include "amalgamkit/linalg.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "amalgamkit/errors.hpp"

namespace amk {

namespace {

void check_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a || !b || !a->same_as(*b))
    fail(Errc::FieldMismatch, "matrices live over different fields");
}

// dst (1 x n, row `drow`) += c * src row `srow`
void vec_addmul(DenseMatrix& dst, int drow, const DenseMatrix& src, int srow,
                uint32_t c) {
  if (!c) return;
  const auto& F = dst.field();
  if (F->degree() == 1) {
    dst.row_xor(drow, src.row_words(srow));
    return;
  }
  for (int j = 0; j < dst.cols(); ++j)
    dst.set(drow, j, F->add(dst.get(drow, j), F->mul(c, src.get(srow, j))));
}

int leading_col(const DenseMatrix& m, int row) {
  for (int j = 0; j < m.cols(); ++j)
    if (m.get(row, j)) return j;
  return -1;
}

// In-place row echelon form; mirrors every row operation onto *aug.
// Returns the rank and appends pivot columns to *pivcols.
int echelonize(DenseMatrix& A, DenseMatrix* aug, bool reduced,
               std::vector<int>* pivcols) {
  const auto& F = A.field();
  int r = 0;
  for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
    int p = -1;
    for (int i = r; i < A.rows(); ++i)
      if (A.get(i, c)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    A.swap_rows(p, r);
    if (aug) aug->swap_rows(p, r);
    uint32_t li = F->inv(A.get(r, c));
    if (li != 1) {
      A.row_scale(r, li);
      if (aug) aug->row_scale(r, li);
    }
    int lo = reduced ? 0 : r + 1;
    for (int i = lo; i < A.rows(); ++i) {
      if (i == r) continue;
      uint32_t v = A.get(i, c);
      if (!v) continue;
      A.row_addmul(i, r, v);
      if (aug) aug->row_addmul(i, r, v);
    }
    if (pivcols) pivcols->push_back(c);
    ++r;
  }
  return r;
}

}  // namespace

DenseMatrix::DenseMatrix(FieldPtr F, int rows, int cols) : F_(std::move(F)) {
  if (!F_) fail(Errc::BadConfig, "matrix needs a field");
  if (rows < 0 || cols < 0) fail(Errc::ShapeMismatch, "negative dimension");
  rows_ = rows;
  cols_ = cols;
  wpr_ = (cols * F_->degree() + 63) / 64;
  if (wpr_ == 0) wpr_ = 1;
  w_.assign(static_cast<size_t>(rows_) * wpr_, 0);
}

DenseMatrix DenseMatrix::identity(FieldPtr F, int n) {
  DenseMatrix m(std::move(F), n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

uint32_t DenseMatrix::get(int i, int j) const {
  int k = F_->degree();
  int bitpos = j * k;
  int w = bitpos >> 6, off = bitpos & 63;
  const uint64_t* row = row_words(i);
  uint64_t v = row[w] >> off;
  if (off + k > 64) v |= row[w + 1] << (64 - off);
  return static_cast<uint32_t>(v & ((1u << k) - 1));
}

void DenseMatrix::set(int i, int j, uint32_t v) {
  int k = F_->degree();
  uint64_t mask = (1u << k) - 1;
  int bitpos = j * k;
  int w = bitpos >> 6, off = bitpos & 63;
  uint64_t* row = row_words(i);
  row[w] = (row[w] & ~(mask << off)) | (static_cast<uint64_t>(v & mask) << off);
  if (off + k > 64) {
    int spill = off + k - 64;
    uint64_t hi_mask = (1ull << spill) - 1;
    row[w + 1] = (row[w + 1] & ~hi_mask) |
                 (static_cast<uint64_t>(v & mask) >> (64 - off));
  }
}

void DenseMatrix::row_xor(int dst, const uint64_t* src) {
  uint64_t* d = row_words(dst);
  for (int w = 0; w < wpr_; ++w) d[w] ^= src[w];
}

void DenseMatrix::row_addmul(int dst, int src, uint32_t c) {
  if (!c) return;
  if (F_->degree() == 1) {
    row_xor(dst, row_words(src));
    return;
  }
  for (int j = 0; j < cols_; ++j)
    set(dst, j, F_->add(get(dst, j), F_->mul(c, get(src, j))));
}

void DenseMatrix::row_scale(int i, uint32_t c) {
  if (c == 1) return;
  for (int j = 0; j < cols_; ++j) set(i, j, F_->mul(c, get(i, j)));
}

void DenseMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  std::swap_ranges(row_words(i), row_words(i) + wpr_, row_words(j));
}

DenseMatrix DenseMatrix::row(int i) const {
  DenseMatrix v(F_, 1, cols_);
  std::copy(row_words(i), row_words(i) + wpr_, v.row_words(0));
  return v;
}

void DenseMatrix::set_row(int i, const DenseMatrix& v) {
  check_field(F_, v.F_);
  if (v.rows_ != 1 || v.cols_ != cols_)
    fail(Errc::ShapeMismatch, "row assignment length mismatch");
  std::copy(v.row_words(0), v.row_words(0) + wpr_, row_words(i));
}

bool DenseMatrix::is_zero_row(int i) const {
  const uint64_t* r = row_words(i);
  for (int w = 0; w < wpr_; ++w)
    if (r[w]) return false;
  return true;
}

bool DenseMatrix::is_zero() const {
  for (uint64_t w : w_)
    if (w) return false;
  return true;
}

bool DenseMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (get(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool DenseMatrix::is_scalar(uint32_t* val) const {
  if (rows_ != cols_ || rows_ == 0) return false;
  uint32_t d = get(0, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (get(i, j) != (i == j ? d : 0u)) return false;
  if (val) *val = d;
  return true;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.rows_ == 0 || a.cols_ == 0) return true;
  check_field(a.F_, b.F_);
  return a.w_ == b.w_;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  check_field(a.F_, b.F_);
  if (a.cols_ != b.rows_)
    fail(Errc::ShapeMismatch,
         "product of " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
             " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  DenseMatrix c(a.F_, a.rows_, b.cols_);
  if (a.F_->degree() == 1) {
    for (int i = 0; i < a.rows_; ++i) {
      const uint64_t* ar = a.row_words(i);
      for (int w = 0; w < a.wpr_; ++w) {
        uint64_t bits = ar[w];
        while (bits) {
          int j = w * 64 + std::countr_zero(bits);
          c.row_xor(i, b.row_words(j));
          bits &= bits - 1;
        }
      }
    }
    return c;
  }
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) {
      uint32_t v = a.get(i, j);
      if (v) vec_addmul(c, i, b, j, v);
    }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  check_field(a.F_, b.F_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(Errc::ShapeMismatch, "sum of unlike shapes");
  DenseMatrix c = a;
  for (size_t t = 0; t < c.w_.size(); ++t) c.w_[t] ^= b.w_[t];
  return c;
}

DenseMatrix DenseMatrix::pow(uint64_t e) const {
  if (rows_ != cols_) fail(Errc::NonSquare, "power of a non-square matrix");
  DenseMatrix result = identity(F_, rows_);
  DenseMatrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, get(i, j));
  return t;
}

uint64_t DenseMatrix::packed_row() const {
  if (rows_ != 1 || cols_ * F_->degree() > 64)
    fail(Errc::ShapeMismatch, "packing needs a single row of at most 64 bits");
  return w_[0];
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) { return a * b; }

DenseMatrix mat_inv(const DenseMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::NonSquare, "inverse of a non-square matrix");
  DenseMatrix a = m;
  DenseMatrix aug = DenseMatrix::identity(m.field(), m.rows());
  int rank = echelonize(a, &aug, true, nullptr);
  if (rank < m.rows()) fail(Errc::Singular, "matrix is singular");
  return aug;
}

int mat_rank(DenseMatrix m) { return echelonize(m, nullptr, false, nullptr); }

Subspace row_space(const DenseMatrix& A) {
  DenseMatrix m = A;
  std::vector<int> piv;
  int rank = echelonize(m, nullptr, true, &piv);
  Subspace s;
  s.basis = DenseMatrix(A.field(), rank, A.cols());
  for (int i = 0; i < rank; ++i) s.basis.set_row(i, m.row(i));
  s.pivots = std::move(piv);
  return s;
}

Subspace nullspace(const DenseMatrix& A) {
  DenseMatrix m = A;
  DenseMatrix track = DenseMatrix::identity(A.field(), A.rows());
  int rank = echelonize(m, &track, false, nullptr);
  DenseMatrix n(A.field(), A.rows() - rank, A.rows());
  for (int i = rank; i < A.rows(); ++i) n.set_row(i - rank, track.row(i));
  return row_space(n);
}

int subspace_sum_dim(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    fail(Errc::ShapeMismatch, "subspaces of different ambient spaces");
  DenseMatrix stacked(a.basis.field(), a.dim() + b.dim(), a.ambient());
  for (int i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis.row(i));
  for (int i = 0; i < b.dim(); ++i) stacked.set_row(a.dim() + i, b.basis.row(i));
  return mat_rank(stacked);
}

bool Subspace::contains(const DenseMatrix& v) const {
  if (v.rows() != 1 || v.cols() != ambient())
    fail(Errc::ShapeMismatch, "membership test needs a 1 x ambient row");
  DenseMatrix w = v;
  const auto& F = basis.field();
  for (int t = 0; t < dim(); ++t) {
    uint32_t c = w.get(0, pivots[t]);
    if (c) vec_addmul(w, 0, basis, t, c);
  }
  return w.is_zero();
}

DenseMatrix Subspace::coords(const DenseMatrix& v) const {
  if (v.rows() != 1 || v.cols() != ambient())
    fail(Errc::ShapeMismatch, "coordinate map needs a 1 x ambient row");
  DenseMatrix w = v;
  DenseMatrix c(basis.field(), 1, dim());
  for (int t = 0; t < dim(); ++t) {
    uint32_t coeff = w.get(0, pivots[t]);
    if (coeff) {
      c.set(0, t, coeff);
      vec_addmul(w, 0, basis, t, coeff);
    }
  }
  if (!w.is_zero()) fail(Errc::NotInvariant, "vector lies outside the subspace");
  return c;
}

bool Subspace::is_invariant(const DenseMatrix& M) const {
  if (M.rows() != ambient() || M.cols() != ambient())
    fail(Errc::ShapeMismatch, "invariance test needs an ambient square matrix");
  for (int t = 0; t < dim(); ++t)
    if (!contains(basis.row(t) * M)) return false;
  return true;
}

DenseMatrix poly_eval_at_matrix(const Poly2& p, const DenseMatrix& M) {
  if (M.rows() != M.cols()) fail(Errc::NonSquare, "polynomial of a non-square matrix");
  DenseMatrix r(M.field(), M.rows(), M.cols());
  if (p.is_zero()) return r;
  for (int i = p.deg(); i >= 0; --i) {
    if (i < p.deg()) r = r * M;
    if (p.get(i))
      for (int t = 0; t < M.rows(); ++t)
        r.set(t, t, M.field()->add(r.get(t, t), 1));
  }
  return r;
}

DenseMatrix polyf_eval_at_matrix(const PolyF& p, const DenseMatrix& M) {
  if (M.rows() != M.cols()) fail(Errc::NonSquare, "polynomial of a non-square matrix");
  check_field(p.F, M.field());
  DenseMatrix r(M.field(), M.rows(), M.cols());
  if (p.is_zero()) return r;
  for (int i = p.deg(); i >= 0; --i) {
    if (i < p.deg()) r = r * M;
    uint32_t c = p.c[i];
    if (c)
      for (int t = 0; t < M.rows(); ++t)
        r.set(t, t, M.field()->add(r.get(t, t), c));
  }
  return r;
}

PolyF min_poly(const DenseMatrix& M) {
  if (M.rows() != M.cols())
    fail(Errc::NonSquare, "minimal polynomial of a non-square matrix");
  const FieldPtr& F = M.field();
  int n = M.rows();
  PolyF result = polyf_one(F);
  for (int s = 0; s < n && result.deg() < n; ++s) {
    std::vector<DenseMatrix> erow;
    std::vector<int> epiv;
    std::vector<std::vector<uint32_t>> ecombo;
    DenseMatrix raw(F, 1, n);
    raw.set(0, s, 1);
    PolyF ann;
    for (int t = 0;; ++t) {
      DenseMatrix cur = raw;
      std::vector<uint32_t> combo(t + 1, 0);
      combo[t] = 1;
      for (size_t r = 0; r < erow.size(); ++r) {
        uint32_t c = cur.get(0, epiv[r]);
        if (!c) continue;
        vec_addmul(cur, 0, erow[r], 0, c);
        for (size_t j = 0; j < ecombo[r].size(); ++j)
          combo[j] = F->add(combo[j], F->mul(c, ecombo[r][j]));
      }
      int piv = leading_col(cur, 0);
      if (piv < 0) {
        ann = PolyF{F, std::move(combo)};
        break;
      }
      uint32_t li = F->inv(cur.get(0, piv));
      if (li != 1) {
        cur.row_scale(0, li);
        for (auto& x : combo) x = F->mul(x, li);
      }
      erow.push_back(std::move(cur));
      epiv.push_back(piv);
      ecombo.push_back(std::move(combo));
      raw = raw * M;
    }
    result = polyf_lcm(result, ann);
  }
  result.make_monic();
  return result;
}

namespace {

uint64_t gcd64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

uint64_t lcm64(uint64_t a, uint64_t b) { return a / gcd64(a, b) * b; }

// Multiplicative order of a root of the irreducible f in GF(2^deg f).
uint64_t root_order_gf2(const Poly2& f) {
  int d = f.deg();
  uint64_t n = (1ull << d) - 1;
  uint64_t ord = n;
  uint64_t m = n;
  for (uint64_t q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    while (ord % q == 0 &&
           poly2_powmod(Poly2::x(), ord / q, f) == Poly2::one())
      ord /= q;
  }
  if (m > 1)
    while (ord % m == 0 &&
           poly2_powmod(Poly2::x(), ord / m, f) == Poly2::one())
      ord /= m;
  return ord;
}

}  // namespace

uint64_t element_order(const DenseMatrix& M, uint64_t bound) {
  if (M.rows() != M.cols()) fail(Errc::NonSquare, "order of a non-square matrix");
  if (M.rows() == 0) return 1;
  PolyF mp = min_poly(M);
  if (mp.c[0] == 0) fail(Errc::Singular, "singular matrices have no order");
  if (M.field()->degree() == 1 && mp.deg() < 64) {
    auto factors = poly_factor_gf2(poly2_from_polyf(mp));
    uint64_t ord = 1;
    int max_mult = 1;
    for (const auto& pf : factors) {
      ord = lcm64(ord, root_order_gf2(pf.factor));
      max_mult = std::max(max_mult, pf.multiplicity);
    }
    uint64_t two = 1;
    while (two < static_cast<uint64_t>(max_mult)) two <<= 1;
    ord *= two;
    if (ord > bound)
      fail(Errc::OrderExceedsBound,
           "order " + std::to_string(ord) + " exceeds bound " + std::to_string(bound));
    return ord;
  }
  DenseMatrix p = M;
  uint64_t k = 1;
  while (!p.is_identity()) {
    p = p * M;
    if (++k > bound)
      fail(Errc::OrderExceedsBound,
           "no identity power within bound " + std::to_string(bound));
  }
  return k;
}

std::pair<Subspace, Subspace> split_homogeneous(const DenseMatrix& M) {
  if (M.field()->degree() != 1)
    fail(Errc::UnsupportedField, "homogeneous split works over GF(2) only");
  uint64_t o = element_order(M);
  if (o != 7)
    fail(Errc::WrongOrder, "element order " + std::to_string(o) + ", need 7");
  DenseMatrix fixed = M + DenseMatrix::identity(M.field(), M.rows());
  if (nullspace(fixed).dim() != 0)
    fail(Errc::NotFixedPointFree, "nonzero fixed vectors present");
  PolyF mp = min_poly(M);
  if (poly2_from_polyf(mp) != Poly2(0x7f))
    fail(Errc::WrongOrder,
         "minimal polynomial must be the full degree-6 factor of x^7+1");
  Subspace c1 = nullspace(poly_eval_at_matrix(Poly2(0b1101), M));
  Subspace c2 = nullspace(poly_eval_at_matrix(Poly2(0b1011), M));
  return {c1, c2};
}

GF8Structure rebase_as_gf8(const DenseMatrix& M, const Subspace& C) {
  if (M.field()->degree() != 1)
    fail(Errc::UnsupportedField, "rebase works over GF(2) only");
  if (!C.is_invariant(M))
    fail(Errc::NotInvariant, "component is not preserved by the matrix");
  int d = C.dim();
  if (d == 0 || d % 3)
    fail(Errc::ShapeMismatch, "component dimension must be a positive multiple of 3");
  GF8Structure g;
  g.comp_ = C;
  g.R_ = DenseMatrix(M.field(), d, d);
  for (int t = 0; t < d; ++t) g.R_.set_row(t, C.coords(C.basis.row(t) * M));
  PolyF mp = min_poly(g.R_);
  Poly2 cubic = poly2_from_polyf(mp);
  if (cubic.deg() != 3 || !poly2_is_irreducible(cubic))
    fail(Errc::NotScalarizable,
         "restriction needs an irreducible cubic minimal polynomial");
  g.F8_ = BinaryField::get(3);
  g.scalar_ = 0;
  for (uint32_t s = 2; s < 8; ++s) {
    uint32_t acc = 0, p = 1;
    for (int i = 0; i <= 3; ++i) {
      if (cubic.get(i)) acc = g.F8_->add(acc, p);
      p = g.F8_->mul(p, s);
    }
    if (acc == 0) {
      g.scalar_ = s;
      break;
    }
  }
  if (!g.scalar_) fail(Errc::NotScalarizable, "cubic has no root in GF(8)");
  g.dim8_ = d / 3;
  g.T_ = DenseMatrix(M.field(), d, d);
  std::vector<DenseMatrix> erow;
  std::vector<int> epiv;
  int used = 0;
  for (int cand = 0; cand < d && used < d; ++cand) {
    DenseMatrix v(M.field(), 1, d);
    v.set(0, cand, 1);
    DenseMatrix probe = v;
    for (size_t r = 0; r < erow.size(); ++r) {
      uint32_t c = probe.get(0, epiv[r]);
      if (c) vec_addmul(probe, 0, erow[r], 0, c);
    }
    if (leading_col(probe, 0) < 0) continue;
    DenseMatrix w = v;
    for (int e = 0; e < 3; ++e) {
      g.T_.set_row(used + e, w);
      DenseMatrix red = w;
      for (size_t r = 0; r < erow.size(); ++r) {
        uint32_t c = red.get(0, epiv[r]);
        if (c) vec_addmul(red, 0, erow[r], 0, c);
      }
      int piv = leading_col(red, 0);
      if (piv < 0)
        fail(Errc::NotScalarizable, "orbit of a basis candidate collapsed early");
      uint32_t li = M.field()->inv(red.get(0, piv));
      if (li != 1) red.row_scale(0, li);
      erow.push_back(std::move(red));
      epiv.push_back(piv);
      w = w * g.R_;
    }
    used += 3;
  }
  if (used != d) fail(Errc::NotScalarizable, "triple basis construction fell short");
  g.Tinv_ = mat_inv(g.T_);
  return g;
}

DenseMatrix GF8Structure::coords_to_gf8(const DenseMatrix& c) const {
  DenseMatrix y = c * Tinv_;
  DenseMatrix out(F8_, 1, dim8_);
  uint32_t s2 = F8_->mul(scalar_, scalar_);
  for (int t = 0; t < dim8_; ++t) {
    uint32_t v = y.get(0, 3 * t);
    if (y.get(0, 3 * t + 1)) v = F8_->add(v, scalar_);
    if (y.get(0, 3 * t + 2)) v = F8_->add(v, s2);
    out.set(0, t, v);
  }
  return out;
}

DenseMatrix GF8Structure::to_gf8(const DenseMatrix& v) const {
  return coords_to_gf8(comp_.coords(v));
}

DenseMatrix GF8Structure::rebase_matrix(const DenseMatrix& X) const {
  if (X.rows() != X.cols() || X.rows() != comp_.ambient())
    fail(Errc::ShapeMismatch, "rebase needs an ambient square matrix");
  if (!comp_.is_invariant(X))
    fail(Errc::NotInvariant, "matrix does not preserve the component");
  int d = comp_.dim();
  DenseMatrix xc(X.field(), d, d);
  for (int t = 0; t < d; ++t) xc.set_row(t, comp_.coords(comp_.basis.row(t) * X));
  if (xc * R_ != R_ * xc)
    fail(Errc::NotScalarizable, "matrix does not commute with the scalar action");
  DenseMatrix out(F8_, dim8_, dim8_);
  for (int t = 0; t < dim8_; ++t)
    out.set_row(t, coords_to_gf8(T_.row(3 * t) * xc));
  return out;
}

}  // namespace amk
