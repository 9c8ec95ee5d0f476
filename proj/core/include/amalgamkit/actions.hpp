#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "amalgamkit/words.hpp"

namespace amk {

// Canonical indexed point list. Vector mode holds normalized projective
// representatives (first nonzero coordinate 1); element mode holds
// permutations identified by their image arrays.
struct PointSet {
  enum class Kind { Vectors, Elements };
  Kind kind = Kind::Vectors;
  std::vector<DenseMatrix> vecs;
  std::vector<PermImage> elts;

  size_t size() const {
    return kind == Kind::Vectors ? vecs.size() : elts.size();
  }
  int find(const DenseMatrix& v) const;  // -1 when absent
  int find(const PermImage& p) const;

 private:
  void build_index() const;
  mutable bool indexed_ = false;
  mutable std::unordered_map<uint64_t, std::vector<int>> vec_idx_;
  mutable std::map<PermImage, int> elt_idx_;
};

// v scaled so its first nonzero coordinate is 1. ZeroVector on zero input.
DenseMatrix normalize_projective(const DenseMatrix& v);

// All (q^d - 1)/(q - 1) normalized one-dimensional subspaces of F^d,
// ordered lexicographically by coordinate tuple.
PointSet projective_points(const FieldPtr& F, int d);

// The permutation each matrix induces on the point list. Matrices must be
// invertible and of matching dimension; NotClosed if an image escapes.
std::vector<PermImage> action_on_points(const std::vector<DenseMatrix>& gens,
                                        const PointSet& pts);

struct OrbitPartition {
  int num_points = 0;
  std::vector<int> orbit_of;         // point index -> orbit id
  std::vector<int> representatives;  // orbit id -> least point index
  std::vector<int> orbit_sizes;      // orbit id -> size
  std::vector<int> sizes_sorted;     // ascending
  // Filled by conj_orbits: per point, the actor indices whose successive
  // application carries the orbit representative to that point.
  std::vector<std::vector<int>> word_to;
};

// BFS orbit partition. Degree is taken from the generators; pass it
// explicitly when the generator list may be empty.
OrbitPartition orbits(const std::vector<PermImage>& gens, int degree = -1);

// Base-and-strong-generators chain built by the Schreier-Sims procedure.
class BSGS {
 public:
  BSGS() = default;
  explicit BSGS(int degree) : degree_(degree) {}

  void add_generator(const PermImage& g);
  bool contains(const PermImage& g) const;

  int degree() const { return degree_; }
  uint64_t order() const;
  const std::vector<int>& base() const { return base_; }
  size_t levels() const { return levels_.size(); }
  const std::vector<int>& fundamental_orbit(int level) const;
  const std::vector<PermImage>& level_generators(int level) const;
  // Transversal element carrying base[level] to pt (EntryOutOfRange when pt
  // is outside that fundamental orbit).
  PermImage transversal(int level, int pt) const;

  // Streams every group element exactly once, deterministically.
  void for_each_element(const std::function<void(const PermImage&)>& fn) const;

 private:
  struct Level {
    int base_pt = 0;
    std::vector<PermImage> gens;
    std::vector<int> orbit;                // discovery order, orbit[0] = base_pt
    std::unordered_map<int, int> pos;      // point -> index into orbit
    std::vector<int> parent_gen;           // per orbit index: generator used
    std::vector<int> parent_pt;            // per orbit index: previous point
  };
  int degree_ = 0;
  std::vector<int> base_;
  std::vector<Level> levels_;

  void rebuild_orbit(int level);
  PermImage rep(int level, int pt) const;
  // Strips g through levels from..end; returns the residue and the level at
  // which stripping stopped (levels_.size() when fully stripped).
  std::pair<PermImage, int> strip(PermImage g, int from) const;
  void extend_base(const PermImage& g);
  void verify_level(int level);

  friend BSGS schreier_sims(const std::vector<PermImage>& gens, int degree);
};

BSGS schreier_sims(const std::vector<PermImage>& gens, int degree = -1);

struct StabilizerResult {
  std::vector<PermImage> generators;  // reduced strong generating set
  uint64_t order = 0;
};

// Point stabilizer from Schreier generators, reduced through a fresh chain.
StabilizerResult stabilizer(const BSGS& g, int pt);

// All involutions of S_n with the given cycle type (parts from {1, 2}
// summing to n), canonically ordered by image array. BadCycleType otherwise.
PointSet involutions_of_type(int n, const std::vector<int>& parts);

// Orbits of the conjugation action of the actors on the element set, with
// Schreier words recorded per point. NotClosed when conjugation escapes.
OrbitPartition conj_orbits(const PointSet& targets,
                           const std::vector<PermImage>& actors);

// Chain of commutators closed under conjugation: the derived subgroup.
BSGS derived_subgroup(const std::vector<PermImage>& gens);

}  // namespace amk
