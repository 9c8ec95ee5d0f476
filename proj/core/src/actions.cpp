#include "amalgamkit/actions.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "amalgamkit/errors.hpp"

namespace amk {

namespace {

uint64_t vec_key(const DenseMatrix& v) {
  if (v.rows() != 1) fail(Errc::ShapeMismatch, "point key wants a row vector");
  int bits = v.cols() * v.field()->degree();
  if (bits <= 64) return v.packed_row();
  uint64_t h = 1469598103934665603ull;
  const uint64_t* w = v.row_words(0);
  for (int i = 0; i < v.words_per_row(); ++i) {
    h ^= w[i];
    h *= 1099511628211ull;
  }
  return h;
}

void check_perm(const PermImage& p, int degree) {
  if (static_cast<int>(p.size()) != degree)
    fail(Errc::DegreeMismatch, "permutation degree mismatch");
  if (!perm_is_valid(p)) fail(Errc::BadConfig, "image list is not a bijection");
}

bool perm_is_identity(const PermImage& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

// a^-1 x a without building the inverse.
PermImage perm_conj(const PermImage& x, const PermImage& a) {
  PermImage r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[a[i]] = a[x[i]];
  return r;
}

}  // namespace

void PointSet::build_index() const {
  vec_idx_.clear();
  elt_idx_.clear();
  if (kind == Kind::Vectors) {
    for (int i = 0; i < static_cast<int>(vecs.size()); ++i)
      vec_idx_[vec_key(vecs[i])].push_back(i);
  } else {
    for (int i = 0; i < static_cast<int>(elts.size()); ++i) {
      auto [it, fresh] = elt_idx_.emplace(elts[i], i);
      if (!fresh) fail(Errc::DuplicateName, "repeated element in point set");
    }
  }
  indexed_ = true;
}

int PointSet::find(const DenseMatrix& v) const {
  if (kind != Kind::Vectors) fail(Errc::ShapeMismatch, "vector lookup in element set");
  if (!indexed_) build_index();
  auto it = vec_idx_.find(vec_key(v));
  if (it == vec_idx_.end()) return -1;
  for (int i : it->second)
    if (vecs[i] == v) return i;
  return -1;
}

int PointSet::find(const PermImage& p) const {
  if (kind != Kind::Elements) fail(Errc::ShapeMismatch, "element lookup in vector set");
  if (!indexed_) build_index();
  auto it = elt_idx_.find(p);
  return it == elt_idx_.end() ? -1 : it->second;
}

DenseMatrix normalize_projective(const DenseMatrix& v) {
  if (v.rows() != 1) fail(Errc::ShapeMismatch, "projective point wants a row vector");
  int lead = -1;
  for (int j = 0; j < v.cols(); ++j)
    if (v.get(0, j) != 0) {
      lead = j;
      break;
    }
  if (lead < 0) fail(Errc::ZeroVector, "zero vector spans no point");
  uint32_t c = v.get(0, lead);
  DenseMatrix w = v;
  if (c != 1) w.row_scale(0, v.field()->inv(c));
  return w;
}

PointSet projective_points(const FieldPtr& F, int d) {
  if (d <= 0) fail(Errc::DegreeOutOfRange, "dimension must be positive");
  uint64_t q = F->order();
  uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    total *= q;
    if (total > (1ull << 24))
      fail(Errc::BadConfig, "projective point set too large to enumerate");
  }
  PointSet ps;
  ps.kind = PointSet::Kind::Vectors;
  std::vector<uint32_t> digits(d, 0);
  for (uint64_t count = 1; count < total; ++count) {
    // Increment the coordinate tuple lexicographically, last digit fastest.
    for (int j = d - 1; j >= 0; --j) {
      if (++digits[j] < q) break;
      digits[j] = 0;
    }
    int lead = 0;
    while (digits[lead] == 0) ++lead;
    if (digits[lead] != 1) continue;
    DenseMatrix v(F, 1, d);
    for (int j = 0; j < d; ++j) v.set(0, j, digits[j]);
    ps.vecs.push_back(std::move(v));
  }
  return ps;
}

std::vector<PermImage> action_on_points(const std::vector<DenseMatrix>& gens,
                                        const PointSet& pts) {
  if (pts.kind != PointSet::Kind::Vectors)
    fail(Errc::ShapeMismatch, "matrix action wants vector points");
  int n = static_cast<int>(pts.size());
  std::vector<PermImage> out;
  out.reserve(gens.size());
  for (const DenseMatrix& m : gens) {
    if (n > 0) {
      const DenseMatrix& probe = pts.vecs[0];
      if (m.rows() != m.cols() || m.cols() != probe.cols() ||
          !m.field()->same_as(*probe.field()))
        fail(Errc::ShapeMismatch, "acting matrix does not fit the points");
      if (mat_rank(m) != m.rows()) fail(Errc::Singular, "acting matrix not invertible");
    }
    PermImage img(n);
    for (int i = 0; i < n; ++i) {
      DenseMatrix w = normalize_projective(pts.vecs[i] * m);
      int j = pts.find(w);
      if (j < 0) fail(Errc::NotClosed, "matrix image leaves the point set");
      img[i] = j;
    }
    if (!perm_is_valid(img)) fail(Errc::NotClosed, "matrix action is not a bijection");
    out.push_back(std::move(img));
  }
  return out;
}

OrbitPartition orbits(const std::vector<PermImage>& gens, int degree) {
  if (gens.empty()) {
    if (degree < 0) fail(Errc::BadConfig, "orbit degree unknown without generators");
  } else {
    int d = static_cast<int>(gens[0].size());
    if (degree < 0) degree = d;
    for (const PermImage& g : gens) check_perm(g, degree);
  }
  OrbitPartition part;
  part.num_points = degree;
  part.orbit_of.assign(degree, -1);
  for (int seed = 0; seed < degree; ++seed) {
    if (part.orbit_of[seed] >= 0) continue;
    int id = static_cast<int>(part.representatives.size());
    part.representatives.push_back(seed);
    part.orbit_of[seed] = id;
    int sz = 1;
    std::deque<int> queue{seed};
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      for (const PermImage& g : gens) {
        int q = g[p];
        if (part.orbit_of[q] >= 0) continue;
        part.orbit_of[q] = id;
        ++sz;
        queue.push_back(q);
      }
    }
    part.orbit_sizes.push_back(sz);
  }
  part.sizes_sorted = part.orbit_sizes;
  std::sort(part.sizes_sorted.begin(), part.sizes_sorted.end());
  return part;
}

void BSGS::rebuild_orbit(int level) {
  Level& lv = levels_[level];
  lv.orbit.clear();
  lv.pos.clear();
  lv.parent_gen.clear();
  lv.parent_pt.clear();
  lv.orbit.push_back(lv.base_pt);
  lv.pos[lv.base_pt] = 0;
  lv.parent_gen.push_back(-1);
  lv.parent_pt.push_back(-1);
  for (size_t i = 0; i < lv.orbit.size(); ++i) {
    int p = lv.orbit[i];
    for (int t = 0; t < static_cast<int>(lv.gens.size()); ++t) {
      int q = lv.gens[t][p];
      if (lv.pos.count(q)) continue;
      lv.pos[q] = static_cast<int>(lv.orbit.size());
      lv.orbit.push_back(q);
      lv.parent_gen.push_back(t);
      lv.parent_pt.push_back(p);
    }
  }
}

PermImage BSGS::rep(int level, int pt) const {
  const Level& lv = levels_[level];
  std::vector<int> path;
  int cur = pt;
  while (cur != lv.base_pt) {
    int at = lv.pos.at(cur);
    path.push_back(lv.parent_gen[at]);
    cur = lv.parent_pt[at];
  }
  PermImage t = perm_identity(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    t = perm_compose(t, lv.gens[*it]);
  return t;
}

std::pair<PermImage, int> BSGS::strip(PermImage g, int from) const {
  for (int i = from; i < static_cast<int>(levels_.size()); ++i) {
    int image = g[levels_[i].base_pt];
    auto it = levels_[i].pos.find(image);
    if (it == levels_[i].pos.end()) return {std::move(g), i};
    g = perm_compose(g, perm_inverse(rep(i, image)));
  }
  return {std::move(g), static_cast<int>(levels_.size())};
}

void BSGS::extend_base(const PermImage& g) {
  int pt = -1;
  for (int i = 0; i < degree_; ++i)
    if (g[i] != i) {
      pt = i;
      break;
    }
  if (pt < 0) fail(Errc::BadConfig, "identity cannot extend a base");
  base_.push_back(pt);
  Level lv;
  lv.base_pt = pt;
  levels_.push_back(std::move(lv));
  rebuild_orbit(static_cast<int>(levels_.size()) - 1);
}

void BSGS::verify_level(int level) {
  rebuild_orbit(level);
  // levels_ may reallocate while deeper levels grow; index fresh every time.
  for (size_t oi = 0; oi < levels_[level].orbit.size(); ++oi) {
    int p = levels_[level].orbit[oi];
    PermImage tp = rep(level, p);
    for (size_t gi = 0; gi < levels_[level].gens.size(); ++gi) {
      PermImage g = levels_[level].gens[gi];
      PermImage s = perm_compose(tp, g);
      s = perm_compose(s, perm_inverse(rep(level, g[p])));
      if (perm_is_identity(s)) continue;
      auto [r, j] = strip(std::move(s), level + 1);
      if (perm_is_identity(r)) continue;
      if (j == static_cast<int>(levels_.size())) extend_base(r);
      for (int l = level + 1; l <= j; ++l) levels_[l].gens.push_back(r);
      for (int l = j; l > level; --l) verify_level(l);
    }
  }
}

void BSGS::add_generator(const PermImage& g) {
  if (degree_ == 0) degree_ = static_cast<int>(g.size());
  check_perm(g, degree_);
  auto [r, j] = strip(g, 0);
  if (perm_is_identity(r)) return;
  if (j == static_cast<int>(levels_.size())) extend_base(r);
  for (int l = 0; l <= j; ++l) levels_[l].gens.push_back(r);
  for (int l = j; l >= 0; --l) verify_level(l);
}

bool BSGS::contains(const PermImage& g) const {
  check_perm(g, degree_);
  return perm_is_identity(strip(g, 0).first);
}

uint64_t BSGS::order() const {
  uint64_t n = 1;
  for (const Level& lv : levels_) n *= lv.orbit.size();
  return n;
}

const std::vector<int>& BSGS::fundamental_orbit(int level) const {
  if (level < 0 || level >= static_cast<int>(levels_.size()))
    fail(Errc::EntryOutOfRange, "no such chain level");
  return levels_[level].orbit;
}

const std::vector<PermImage>& BSGS::level_generators(int level) const {
  if (level < 0 || level >= static_cast<int>(levels_.size()))
    fail(Errc::EntryOutOfRange, "no such chain level");
  return levels_[level].gens;
}

PermImage BSGS::transversal(int level, int pt) const {
  if (level < 0 || level >= static_cast<int>(levels_.size()))
    fail(Errc::EntryOutOfRange, "no such chain level");
  if (!levels_[level].pos.count(pt))
    fail(Errc::EntryOutOfRange, "point outside the fundamental orbit");
  return rep(level, pt);
}

void BSGS::for_each_element(
    const std::function<void(const PermImage&)>& fn) const {
  if (levels_.empty()) {
    fn(perm_identity(degree_));
    return;
  }
  std::vector<std::vector<PermImage>> table(levels_.size());
  for (size_t l = 0; l < levels_.size(); ++l) {
    table[l].reserve(levels_[l].orbit.size());
    for (int pt : levels_[l].orbit) table[l].push_back(rep(static_cast<int>(l), pt));
  }
  // An element factors uniquely as t_{k-1} applied first, then t_{k-2}, down
  // to t_0 last; walk the chain from the deepest level outward.
  std::function<void(int, const PermImage&)> walk = [&](int l, const PermImage& acc) {
    if (l < 0) {
      fn(acc);
      return;
    }
    for (const PermImage& t : table[l]) walk(l - 1, perm_compose(acc, t));
  };
  walk(static_cast<int>(levels_.size()) - 1, perm_identity(degree_));
}

BSGS schreier_sims(const std::vector<PermImage>& gens, int degree) {
  if (gens.empty()) {
    if (degree < 0) fail(Errc::BadConfig, "chain degree unknown without generators");
    return BSGS(degree);
  }
  BSGS g(static_cast<int>(gens[0].size()));
  for (const PermImage& x : gens) g.add_generator(x);
  return g;
}

StabilizerResult stabilizer(const BSGS& g, int pt) {
  if (pt < 0 || pt >= g.degree())
    fail(Errc::EntryOutOfRange, "stabilized point outside the domain");
  StabilizerResult res;
  BSGS chain(g.degree());
  if (g.levels() == 0) {
    res.order = 1;
    return res;
  }
  const std::vector<PermImage>& gens = g.level_generators(0);
  // Orbit of pt with its own transversal, then Schreier generators.
  std::vector<int> orbit{pt};
  std::unordered_map<int, PermImage> to;
  to.emplace(pt, perm_identity(g.degree()));
  for (size_t i = 0; i < orbit.size(); ++i) {
    int p = orbit[i];
    for (const PermImage& x : gens) {
      int q = x[p];
      if (to.count(q)) continue;
      to.emplace(q, perm_compose(to.at(p), x));
      orbit.push_back(q);
    }
  }
  for (int p : orbit) {
    const PermImage& up = to.at(p);
    for (const PermImage& x : gens) {
      PermImage s = perm_compose(up, x);
      s = perm_compose(s, perm_inverse(to.at(x[p])));
      if (perm_is_identity(s) || chain.contains(s)) continue;
      chain.add_generator(s);
      res.generators.push_back(std::move(s));
    }
  }
  res.order = chain.order();
  return res;
}

PointSet involutions_of_type(int n, const std::vector<int>& parts) {
  if (n <= 0) fail(Errc::BadCycleType, "degree must be positive");
  int sum = 0, twos = 0;
  for (int p : parts) {
    if (p != 1 && p != 2) fail(Errc::BadCycleType, "cycle parts must be 1 or 2");
    sum += p;
    twos += (p == 2);
  }
  if (sum != n) fail(Errc::BadCycleType, "cycle parts do not partition the degree");
  if (twos == 0) fail(Errc::BadCycleType, "an involution needs a 2-cycle");

  PointSet ps;
  ps.kind = PointSet::Kind::Elements;
  PermImage cur = perm_identity(n);
  std::vector<bool> used(n, false);
  // Depth-first over image arrays; fixing a point sorts before any pairing,
  // so emission order is lexicographic.
  std::function<void(int, int, int)> walk = [&](int i, int pairs, int fixes) {
    if (pairs == 0 && fixes == 0) {
      ps.elts.push_back(cur);
      return;
    }
    while (i < n && used[i]) ++i;
    if (i >= n) return;
    used[i] = true;
    if (fixes > 0) walk(i + 1, pairs, fixes - 1);
    if (pairs > 0) {
      for (int j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = true;
        cur[i] = j;
        cur[j] = i;
        walk(i + 1, pairs - 1, fixes);
        cur[i] = i;
        cur[j] = j;
        used[j] = false;
      }
    }
    used[i] = false;
  };
  walk(0, twos, n - 2 * twos);
  return ps;
}

OrbitPartition conj_orbits(const PointSet& targets,
                           const std::vector<PermImage>& actors) {
  if (targets.kind != PointSet::Kind::Elements)
    fail(Errc::ShapeMismatch, "conjugation wants an element set");
  int n = static_cast<int>(targets.size());
  int deg = n > 0 ? static_cast<int>(targets.elts[0].size()) : 0;
  for (const PermImage& a : actors) check_perm(a, deg);
  OrbitPartition part;
  part.num_points = n;
  part.orbit_of.assign(n, -1);
  part.word_to.assign(n, {});
  for (int seed = 0; seed < n; ++seed) {
    if (part.orbit_of[seed] >= 0) continue;
    int id = static_cast<int>(part.representatives.size());
    part.representatives.push_back(seed);
    part.orbit_of[seed] = id;
    int sz = 1;
    std::deque<int> queue{seed};
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      for (int t = 0; t < static_cast<int>(actors.size()); ++t) {
        PermImage img = perm_conj(targets.elts[p], actors[t]);
        int q = targets.find(img);
        if (q < 0) fail(Errc::NotClosed, "conjugation leaves the element set");
        if (part.orbit_of[q] >= 0) continue;
        part.orbit_of[q] = id;
        part.word_to[q] = part.word_to[p];
        part.word_to[q].push_back(t);
        ++sz;
        queue.push_back(q);
      }
    }
    part.orbit_sizes.push_back(sz);
  }
  part.sizes_sorted = part.orbit_sizes;
  std::sort(part.sizes_sorted.begin(), part.sizes_sorted.end());
  return part;
}

BSGS derived_subgroup(const std::vector<PermImage>& gens) {
  if (gens.empty()) fail(Errc::BadConfig, "no generators given");
  int deg = static_cast<int>(gens[0].size());
  for (const PermImage& g : gens) check_perm(g, deg);
  BSGS d(deg);
  std::deque<PermImage> queue;
  auto admit = [&](PermImage x) {
    if (perm_is_identity(x) || d.contains(x)) return;
    d.add_generator(x);
    queue.push_back(std::move(x));
  };
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      PermImage c = perm_compose(perm_inverse(gens[i]), perm_inverse(gens[j]));
      c = perm_compose(c, perm_compose(gens[i], gens[j]));
      admit(std::move(c));
    }
  while (!queue.empty()) {
    PermImage x = std::move(queue.front());
    queue.pop_front();
    for (const PermImage& g : gens) admit(perm_conj(x, g));
  }
  return d;
}

}  // namespace amk
