#include "amalgamkit/actions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

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

PermImage cycle(int n, std::vector<int> pts) {
  PermImage p(n);
  std::iota(p.begin(), p.end(), 0);
  for (size_t i = 0; i < pts.size(); ++i) p[pts[i]] = pts[(i + 1) % pts.size()];
  return p;
}

// z -> z+1, z -> w*z, z -> 1/z on the projective line over GF(8),
// point 0 = infinity, point 1+z for each field element z.
std::vector<PermImage> psl28_gens() {
  auto F = BinaryField::get(3);
  PermImage t(9), m(9), w(9);
  t[0] = 0;
  m[0] = 0;
  w[0] = 1;
  w[1] = 0;
  for (uint32_t z = 0; z < 8; ++z) {
    t[1 + z] = 1 + F->add(z, 1);
    m[1 + z] = 1 + F->mul(2, z);
    if (z != 0) w[1 + z] = 1 + F->inv(z);
  }
  return {t, m, w};
}

// Automorphisms of the line set {i, i+1, i+3} mod 7: the 7-cycle together
// with (1 2)(3 6) generate the full order-168 group.
std::vector<PermImage> fano_auto_gens() {
  PermImage shift = cycle(7, {0, 1, 2, 3, 4, 5, 6});
  PermImage flip = perm_compose(cycle(7, {1, 2}), cycle(7, {3, 6}));
  return {shift, flip};
}

std::vector<PermImage> s7_gens() {
  return {cycle(7, {0, 1, 2, 3, 4, 5, 6}), cycle(7, {0, 1})};
}

std::vector<PermImage> a7_gens() {
  return {cycle(7, {0, 1, 2, 3, 4, 5, 6}), cycle(7, {0, 1, 2})};
}

PermImage conj_by(const PermImage& x, const PermImage& a) {
  return perm_compose(perm_inverse(a), perm_compose(x, a));
}

}  // namespace

TEST_CASE("projective point enumeration") {
  auto F2 = BinaryField::get(1);
  auto F8 = BinaryField::get(3);

  PointSet fano = projective_points(F2, 3);
  CHECK(fano.size() == 7);
  PointSet big = projective_points(F8, 4);
  CHECK(big.size() == 585);
  CHECK(projective_points(F8, 1).size() == 1);
  CHECK(projective_points(F2, 1).size() == 1);

  for (size_t i = 0; i < big.size(); ++i) {
    const DenseMatrix& v = big.vecs[i];
    int lead = 0;
    while (lead < 4 && v.get(0, lead) == 0) ++lead;
    REQUIRE(lead < 4);
    CHECK(v.get(0, lead) == 1);
    CHECK(big.find(v) == static_cast<int>(i));
  }
  for (size_t i = 1; i < big.size(); ++i) {
    const DenseMatrix& a = big.vecs[i - 1];
    const DenseMatrix& b = big.vecs[i];
    bool less = false;
    for (int j = 0; j < 4; ++j) {
      if (a.get(0, j) == b.get(0, j)) continue;
      less = a.get(0, j) < b.get(0, j);
      break;
    }
    CHECK(less);
  }
  CHECK_THROWS_AS(projective_points(F2, 0), Error);
}

TEST_CASE("projective normalization") {
  auto F8 = BinaryField::get(3);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix v = random_matrix(rng, F8, 1, 5);
    if (v.is_zero()) continue;
    DenseMatrix n1 = normalize_projective(v);
    for (uint32_t c = 1; c < 8; ++c) {
      DenseMatrix w = v;
      w.row_scale(0, c);
      CHECK(normalize_projective(w) == n1);
    }
  }
  DenseMatrix z(F8, 1, 5);
  CHECK_THROWS_AS(normalize_projective(z), Error);
}

TEST_CASE("matrix action on the projective line") {
  auto F8 = BinaryField::get(3);
  PointSet line = projective_points(F8, 2);
  REQUIRE(line.size() == 9);
  std::mt19937_64 rng(42);

  DenseMatrix id = DenseMatrix::identity(F8, 2);
  PermImage pid = action_on_points({id}, line)[0];
  CHECK(pid == perm_identity(9));

  DenseMatrix scalar(F8, 2, 2);
  scalar.set(0, 0, 5);
  scalar.set(1, 1, 5);
  CHECK(action_on_points({scalar}, line)[0] == perm_identity(9));

  for (int trial = 0; trial < 100; ++trial) {
    DenseMatrix a = random_invertible(rng, F8, 2);
    DenseMatrix b = random_invertible(rng, F8, 2);
    auto ps = action_on_points({a, b, a * b}, line);
    CHECK(perm_compose(ps[0], ps[1]) == ps[2]);
  }

  DenseMatrix sing(F8, 2, 2);
  sing.set(0, 0, 1);
  CHECK_THROWS_AS(action_on_points({sing}, line), Error);
  DenseMatrix wrong = DenseMatrix::identity(F8, 3);
  CHECK_THROWS_AS(action_on_points({wrong}, line), Error);
}

TEST_CASE("transvections act as the full collineation group of the plane") {
  auto F2 = BinaryField::get(1);
  PointSet fano = projective_points(F2, 3);
  std::vector<DenseMatrix> gens;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      DenseMatrix e = DenseMatrix::identity(F2, 3);
      e.set(i, j, 1);
      gens.push_back(e);
    }
  auto perms = action_on_points(gens, fano);
  BSGS g = schreier_sims(perms);
  CHECK(g.order() == 168);
  OrbitPartition part = orbits(perms);
  CHECK(part.sizes_sorted == std::vector<int>{7});
  StabilizerResult st = stabilizer(g, 0);
  CHECK(st.order == 24);
}

TEST_CASE("orbit partition bookkeeping") {
  OrbitPartition empty = orbits({}, 5);
  CHECK(empty.num_points == 5);
  CHECK(empty.representatives == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(empty.sizes_sorted == std::vector<int>{1, 1, 1, 1, 1});
  CHECK_THROWS_AS(orbits({}, -1), Error);

  PermImage split = perm_compose(cycle(6, {0, 1}), cycle(6, {2, 3, 4}));
  OrbitPartition part = orbits({split});
  CHECK(part.orbit_sizes == std::vector<int>{2, 3, 1});
  CHECK(part.representatives == std::vector<int>{0, 2, 5});
  CHECK(part.sizes_sorted == std::vector<int>{1, 2, 3});
  CHECK(part.orbit_of[1] == 0);
  CHECK(part.orbit_of[4] == 1);

  CHECK_THROWS_AS(orbits({cycle(3, {0, 1}), cycle(4, {0, 1})}), Error);
  CHECK_THROWS_AS(orbits({PermImage{0, 0, 1}}), Error);
}

TEST_CASE("chain orders of the standard groups") {
  CHECK(schreier_sims(s7_gens()).order() == 5040);
  CHECK(schreier_sims(a7_gens()).order() == 2520);
  CHECK(schreier_sims(psl28_gens()).order() == 504);
  CHECK(schreier_sims(fano_auto_gens()).order() == 168);
  CHECK(schreier_sims({perm_identity(4)}).order() == 1);
  CHECK(schreier_sims({}, 6).order() == 1);
  CHECK_THROWS_AS(schreier_sims({}), Error);

  std::vector<PermImage> a9 = {cycle(9, {0, 1, 2, 3, 4, 5, 6, 7, 8}),
                               cycle(9, {0, 1, 2})};
  CHECK(schreier_sims(a9).order() == 181440);
}

TEST_CASE("membership follows parity") {
  BSGS a7 = schreier_sims(a7_gens());
  CHECK(a7.contains(cycle(7, {0, 1, 2})));
  CHECK(a7.contains(perm_identity(7)));
  CHECK_FALSE(a7.contains(cycle(7, {0, 1})));
  CHECK_FALSE(a7.contains(cycle(7, {2, 5})));

  std::mt19937_64 rng(7);
  auto gens = a7_gens();
  PermImage even = perm_identity(7);
  for (int trial = 0; trial < 100; ++trial) {
    even = perm_compose(even, gens[rng() % 2]);
    CHECK(a7.contains(even));
    CHECK_FALSE(a7.contains(perm_compose(even, cycle(7, {0, 1}))));
  }
}

TEST_CASE("transversals reach their orbit points") {
  BSGS g = schreier_sims(psl28_gens());
  REQUIRE(g.levels() >= 1);
  for (size_t l = 0; l < g.levels(); ++l) {
    for (int pt : g.fundamental_orbit(static_cast<int>(l))) {
      PermImage t = g.transversal(static_cast<int>(l), pt);
      CHECK(t[g.base()[l]] == pt);
      CHECK(g.contains(t));
    }
  }
  CHECK_THROWS_AS(g.transversal(99, 0), Error);
  int outside = -1;
  const std::vector<int>& orb = g.fundamental_orbit(0);
  for (int p = 0; p < 9; ++p)
    if (std::find(orb.begin(), orb.end(), p) == orb.end()) outside = p;
  if (outside >= 0) CHECK_THROWS_AS(g.transversal(0, outside), Error);
}

TEST_CASE("element streaming visits the whole group once") {
  BSGS s4 = schreier_sims({cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})});
  REQUIRE(s4.order() == 24);
  std::set<PermImage> seen;
  s4.for_each_element([&](const PermImage& p) {
    CHECK(perm_is_valid(p));
    CHECK(s4.contains(p));
    seen.insert(p);
  });
  CHECK(seen.size() == 24);

  BSGS psl = schreier_sims(psl28_gens());
  size_t count = 0;
  std::set<PermImage> sample;
  psl.for_each_element([&](const PermImage& p) {
    ++count;
    if (sample.size() < 64) sample.insert(p);
  });
  CHECK(count == 504);
  CHECK(sample.size() == 64);
}

TEST_CASE("point stabilizers have the right index") {
  BSGS s7 = schreier_sims(s7_gens());
  StabilizerResult st = stabilizer(s7, 0);
  CHECK(st.order == 720);
  CHECK_FALSE(st.generators.empty());
  for (const PermImage& g : st.generators) {
    CHECK(g[0] == 0);
    CHECK(s7.contains(g));
  }

  BSGS a7 = schreier_sims(a7_gens());
  CHECK(stabilizer(a7, 3).order == 360);

  BSGS psl = schreier_sims(psl28_gens());
  for (int pt = 0; pt < 9; ++pt) CHECK(stabilizer(psl, pt).order == 56);

  CHECK_THROWS_AS(stabilizer(s7, 7), Error);
  CHECK_THROWS_AS(stabilizer(s7, -1), Error);
}

TEST_CASE("orbit size times stabilizer order is the group order") {
  BSGS g = schreier_sims(fano_auto_gens());
  OrbitPartition part = orbits(fano_auto_gens());
  for (size_t k = 0; k < part.representatives.size(); ++k) {
    StabilizerResult st = stabilizer(g, part.representatives[k]);
    CHECK(st.order * part.orbit_sizes[k] == g.order());
  }
}

TEST_CASE("involution sets by cycle type") {
  PointSet s3 = involutions_of_type(3, {2, 1});
  REQUIRE(s3.size() == 3);
  CHECK(s3.elts[0] == PermImage{0, 2, 1});
  CHECK(s3.elts[1] == PermImage{1, 0, 2});
  CHECK(s3.elts[2] == PermImage{2, 1, 0});

  PointSet t1 = involutions_of_type(7, {2, 1, 1, 1, 1, 1});
  CHECK(t1.size() == 21);
  PointSet t3 = involutions_of_type(7, {2, 2, 2, 1});
  CHECK(t3.size() == 105);
  for (size_t i = 0; i < t3.size(); ++i) {
    const PermImage& p = t3.elts[i];
    int moved = 0;
    for (int x = 0; x < 7; ++x) {
      CHECK(p[p[x]] == x);
      moved += (p[x] != x);
    }
    CHECK(moved == 6);
    CHECK(t3.find(p) == static_cast<int>(i));
  }
  for (size_t i = 1; i < t3.size(); ++i) CHECK(t3.elts[i - 1] < t3.elts[i]);

  CHECK_THROWS_AS(involutions_of_type(7, {2, 2, 2, 2}), Error);
  CHECK_THROWS_AS(involutions_of_type(7, {3, 2, 2}), Error);
  CHECK_THROWS_AS(involutions_of_type(7, {1, 1, 1, 1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(involutions_of_type(0, {}), Error);
}

TEST_CASE("conjugation orbits on the triple involution class") {
  PointSet invs = involutions_of_type(7, {2, 2, 2, 1});

  OrbitPartition lone = conj_orbits(invs, {});
  CHECK(lone.representatives.size() == 105);
  CHECK(lone.sizes_sorted == std::vector<int>(105, 1));

  OrbitPartition sevens = conj_orbits(invs, {cycle(7, {0, 1, 2, 3, 4, 5, 6})});
  CHECK(sevens.representatives.size() == 15);
  CHECK(sevens.sizes_sorted == std::vector<int>(15, 7));

  OrbitPartition fano = conj_orbits(invs, fano_auto_gens());
  CHECK(fano.sizes_sorted == std::vector<int>{7, 42, 56});

  OrbitPartition whole = conj_orbits(invs, s7_gens());
  CHECK(whole.sizes_sorted == std::vector<int>{105});
}

TEST_CASE("conjugator words reproduce every orbit point") {
  PointSet invs = involutions_of_type(7, {2, 2, 2, 1});
  auto actors = fano_auto_gens();
  OrbitPartition part = conj_orbits(invs, actors);
  for (int p = 0; p < part.num_points; ++p) {
    int rep = part.representatives[part.orbit_of[p]];
    PermImage e = invs.elts[rep];
    for (int idx : part.word_to[p]) e = conj_by(e, actors[idx]);
    CHECK(e == invs.elts[p]);
  }
  for (int rep : part.representatives) CHECK(part.word_to[rep].empty());
}

TEST_CASE("conjugation census is independent of point labeling") {
  PointSet invs = involutions_of_type(7, {2, 2, 2, 1});
  std::mt19937_64 rng(1234);
  PointSet shuffled;
  shuffled.kind = PointSet::Kind::Elements;
  shuffled.elts = invs.elts;
  std::shuffle(shuffled.elts.begin(), shuffled.elts.end(), rng);
  for (const auto& actors : {fano_auto_gens(), s7_gens()}) {
    OrbitPartition a = conj_orbits(invs, actors);
    OrbitPartition b = conj_orbits(shuffled, actors);
    CHECK(a.sizes_sorted == b.sizes_sorted);
  }
}

TEST_CASE("conjugation escaping the set is reported") {
  PointSet narrow;
  narrow.kind = PointSet::Kind::Elements;
  narrow.elts = {cycle(3, {0, 1})};
  CHECK_THROWS_AS(conj_orbits(narrow, {cycle(3, {0, 1, 2})}), Error);

  PointSet dup;
  dup.kind = PointSet::Kind::Elements;
  dup.elts = {cycle(3, {0, 1}), cycle(3, {0, 1})};
  CHECK_THROWS_AS(dup.find(cycle(3, {0, 1})), Error);
}

TEST_CASE("derived subgroups") {
  CHECK(derived_subgroup({cycle(3, {0, 1, 2}), cycle(3, {0, 1})}).order() == 3);
  CHECK(derived_subgroup(s7_gens()).order() == 2520);
  CHECK(derived_subgroup({cycle(7, {0, 1, 2, 3, 4, 5, 6})}).order() == 1);

  BSGS d = derived_subgroup(fano_auto_gens());
  CHECK(d.order() == 168);
  CHECK_THROWS_AS(derived_subgroup({}), Error);
}

TEST_CASE("actions of permutations fuzz against direct computation") {
  std::mt19937_64 rng(99);
  auto gens = s7_gens();
  PointSet invs = involutions_of_type(7, {2, 2, 2, 1});
  for (int trial = 0; trial < 100; ++trial) {
    PermImage g = perm_identity(7);
    int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) g = perm_compose(g, gens[rng() % 2]);
    int p = static_cast<int>(rng() % 105);
    PermImage image = conj_by(invs.elts[p], g);
    int q = invs.find(image);
    REQUIRE(q >= 0);
    CHECK(perm_order(invs.elts[q]) == 2);
  }
}
