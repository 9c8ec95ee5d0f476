#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amalgamkit/fields.hpp"

namespace amk {

// Row-major matrix over GF(2^k), entries packed k bits each into 64-bit
// words, rows word-aligned. Vectors are 1 x n matrices acting on the right:
// v -> v*M throughout the library.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(FieldPtr F, int rows, int cols);
  static DenseMatrix identity(FieldPtr F, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldPtr& field() const { return F_; }
  int words_per_row() const { return wpr_; }

  uint32_t get(int i, int j) const;
  void set(int i, int j, uint32_t v);

  uint64_t* row_words(int i) { return w_.data() + static_cast<size_t>(i) * wpr_; }
  const uint64_t* row_words(int i) const {
    return w_.data() + static_cast<size_t>(i) * wpr_;
  }

  void row_xor(int dst, const uint64_t* src);
  void row_addmul(int dst, int src, uint32_t c);  // row[dst] += c * row[src]
  void row_scale(int i, uint32_t c);
  void swap_rows(int i, int j);

  DenseMatrix row(int i) const;  // copy as 1 x cols
  void set_row(int i, const DenseMatrix& v);

  bool is_zero_row(int i) const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_scalar(uint32_t* val = nullptr) const;

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) {
    return !(a == b);
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  DenseMatrix pow(uint64_t e) const;
  DenseMatrix transpose() const;

  // Least-significant-first packing of the entries of a short row vector.
  // ShapeMismatch unless rows == 1 and cols * k <= 64.
  uint64_t packed_row() const;

 private:
  FieldPtr F_;
  int rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> w_;
};

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix mat_inv(const DenseMatrix& m);  // NonSquare / Singular
int mat_rank(DenseMatrix m);                // works on a copy

// Row space in reduced row-echelon form; pivot columns available.
struct Subspace {
  DenseMatrix basis;          // RREF, one row per dimension
  std::vector<int> pivots;    // pivot column of each basis row

  int ambient() const { return basis.cols(); }
  int dim() const { return basis.rows(); }
  bool contains(const DenseMatrix& v) const;       // v is 1 x ambient
  bool is_invariant(const DenseMatrix& M) const;   // closed under v -> v*M
  // Coordinates of v in the basis; NotInvariant if v lies outside.
  DenseMatrix coords(const DenseMatrix& v) const;
};

Subspace row_space(const DenseMatrix& A);
// Left nullspace {v : v*A = 0}, echelonized. dim = rows - rank.
Subspace nullspace(const DenseMatrix& A);
int subspace_sum_dim(const Subspace& a, const Subspace& b);

DenseMatrix poly_eval_at_matrix(const Poly2& p, const DenseMatrix& M);
DenseMatrix polyf_eval_at_matrix(const PolyF& p, const DenseMatrix& M);

// Monic least-degree annihilator, by per-basis-vector Krylov annihilators
// joined with lcm (early exit once the degree reaches the dimension).
PolyF min_poly(const DenseMatrix& M);

// Multiplicative order. Over GF(2): factor the minimal polynomial, take the
// order of each irreducible factor's root by divisor descent in 2^d - 1,
// lcm, then the 2-part from the largest multiplicity. Other fields fall
// back to iterated multiplication. OrderExceedsBound past `bound`.
uint64_t element_order(const DenseMatrix& M, uint64_t bound = 1000000);

// For an order-7 fixed-point-free M over GF(2) with minimal polynomial
// x^6+x^5+x^4+x^3+x^2+x+1: the two homogeneous components, the nullspace of
// (x^3+x^2+1)(M) first, then that of (x^3+x+1)(M).
std::pair<Subspace, Subspace> split_homogeneous(const DenseMatrix& M);

// GF(8) coordinates on a component C on which M acts with irreducible cubic
// minimal polynomial. The basis consists of triples (v, vM, vM^2); scalar
// multiplication by the canonical root of that cubic in the default GF(8)
// is the action of M itself.
class GF8Structure {
 public:
  const Subspace& component() const { return comp_; }
  const FieldPtr& gf8() const { return F8_; }
  uint32_t scalar() const { return scalar_; }
  int gf8_dim() const { return dim8_; }
  const DenseMatrix& restriction() const { return R_; }

  // 1 x ambient GF(2) vector inside the component -> 1 x gf8_dim GF(8) row.
  DenseMatrix to_gf8(const DenseMatrix& v) const;
  // Ambient matrix preserving C and commuting with M there -> gf8_dim square
  // GF(8) matrix. NotInvariant / NotScalarizable.
  DenseMatrix rebase_matrix(const DenseMatrix& X) const;

 private:
  friend GF8Structure rebase_as_gf8(const DenseMatrix& M, const Subspace& C);
  Subspace comp_;
  DenseMatrix R_;     // M restricted to C, in C coordinates
  DenseMatrix T_;     // triple basis rows, C coordinates
  DenseMatrix Tinv_;
  FieldPtr F8_;
  uint32_t scalar_ = 0;
  int dim8_ = 0;
  DenseMatrix coords_to_gf8(const DenseMatrix& c) const;
};

GF8Structure rebase_as_gf8(const DenseMatrix& M, const Subspace& C);

}  // namespace amk
