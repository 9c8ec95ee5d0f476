#include "amalgamkit/words.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "amalgamkit/errors.hpp"
#include "doctest.h"

using namespace amk;

namespace {

PermImage cycle3() { return {1, 2, 0}; }  // 0 -> 1 -> 2 -> 0
PermImage swap01() { return {1, 0, 2}; }

DenseMatrix companion7() {
  auto F = BinaryField::get(1);
  DenseMatrix m(F, 6, 6);
  for (int i = 0; i < 5; ++i) m.set(i, i + 1, 1);
  for (int j = 0; j < 6; ++j) m.set(5, j, 1);
  return m;
}

Word random_word(std::mt19937_64& rng, int depth) {
  int pick = depth > 0 ? static_cast<int>(rng() % 5) : 0;
  switch (pick) {
    case 1: {
      std::vector<Word> parts;
      int n = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < n; ++i) parts.push_back(random_word(rng, depth - 1));
      return word_product(std::move(parts));
    }
    case 2:
      return word_power(random_word(rng, depth - 1),
                        static_cast<long long>(rng() % 9) - 4);
    case 3:
      return word_conjugate(random_word(rng, depth - 1),
                            random_word(rng, depth - 1));
    default:
      return word_gen((rng() & 1) ? "a" : "b");
  }
}

Env matrix_env(std::mt19937_64& rng, int n) {
  auto F = BinaryField::get(1);
  auto draw = [&]() {
    for (;;) {
      DenseMatrix m(F, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, static_cast<uint32_t>(rng() & 1));
      if (mat_rank(m) == n) return m;
    }
  };
  return Env{{"a", draw()}, {"b", draw()}};
}

}  // namespace

TEST_CASE("permutation primitives") {
  PermImage id = perm_identity(4);
  CHECK(perm_is_valid(id));
  CHECK(perm_order(id) == 1);
  PermImage g = cycle3();
  CHECK(perm_is_valid(g));
  CHECK(perm_order(g) == 3);
  CHECK(perm_compose(g, perm_inverse(g)) == perm_identity(3));
  PermImage gg = perm_compose(g, g);
  CHECK(gg == PermImage{2, 0, 1});
  CHECK(!perm_is_valid(PermImage{0, 0, 1}));
  CHECK_THROWS_AS(perm_compose(g, id), Error);

  // order of a (2,3)-cycle type element
  PermImage m{1, 0, 3, 4, 2};
  CHECK(perm_order(m) == 6);
}

TEST_CASE("group element operations on both representations") {
  GroupElt g = cycle3(), h = swap01();
  CHECK(elt_eq(elt_mul(g, elt_inv(g)), GroupElt(perm_identity(3))));
  CHECK(elt_is_identity(elt_pow(g, 3)));
  CHECK(elt_is_identity(elt_pow(g, -3)));
  CHECK(elt_eq(elt_pow(g, -1), elt_pow(g, 2)));
  CHECK(elt_order(g) == 3);
  CHECK(elt_order(h) == 2);

  // conjugating the 3-cycle by the transposition reverses it
  GroupElt c = elt_conj(g, h);
  CHECK(elt_eq(c, GroupElt(PermImage{2, 0, 1})));

  GroupElt m = companion7();
  CHECK(elt_order(m) == 7);
  CHECK(elt_is_identity(elt_pow(m, 7)));
  CHECK_THROWS_AS(elt_mul(g, m), Error);
  try {
    elt_mul(m, g);
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.code == Errc::FieldMismatch);
  }
}

TEST_CASE("parser shapes") {
  Word w = parse_word("ab^2");
  REQUIRE(w->kind == WordNode::Kind::Product);
  REQUIRE(w->parts.size() == 2);
  CHECK(w->parts[0]->kind == WordNode::Kind::Gen);
  CHECK(w->parts[0]->name == "a");
  CHECK(w->parts[1]->kind == WordNode::Kind::Power);
  CHECK(w->parts[1]->exp == 2);
  CHECK(w->parts[1]->base->name == "b");

  Word v = parse_word("(ab)^34");
  REQUIRE(v->kind == WordNode::Kind::Power);
  CHECK(v->exp == 34);
  CHECK(v->base->kind == WordNode::Kind::Product);

  Word c = parse_word("t1^(ab)");
  REQUIRE(c->kind == WordNode::Kind::Conjugate);
  CHECK(c->base->name == "t1");
  CHECK(c->by->kind == WordNode::Kind::Product);

  Word n = parse_word("a^-5");
  CHECK(n->kind == WordNode::Kind::Power);
  CHECK(n->exp == -5);

  Word chain = parse_word("a^2^3");
  REQUIRE(chain->kind == WordNode::Kind::Power);
  CHECK(chain->exp == 3);
  CHECK(chain->base->kind == WordNode::Kind::Power);
  CHECK(chain->base->exp == 2);

  Word byname = parse_word("a^b");
  CHECK(byname->kind == WordNode::Kind::Conjugate);
  CHECK(byname->by->name == "b");
}

TEST_CASE("lexer splits compressed runs by the name rule") {
  CHECK(print_word(parse_word("ababab^2")) == "a b a b a b^2");
  CHECK(print_word(parse_word("i0pi1")) == "i0p i1");
  CHECK(print_word(parse_word("t3pt5pi5")) == "t3p t5p i5");
  CHECK(print_word(parse_word("i0i1")) == "i0 i1");
  CHECK(print_word(parse_word("c66t1c66")) == "c66 t1 c66");
  // multi-letter names need to be announced to the lexer
  CHECK(print_word(parse_word("cpost", {"cpost"})) == "cpost");
  CHECK(print_word(parse_word("cpost")) == "cp o s t");
  CHECK(print_word(parse_word("acpostb", {"cpost"})) == "a cpost b");
}

TEST_CASE("parser rejects malformed input") {
  auto expect = [](const std::string& text, Errc code) {
    try {
      parse_word(text);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code == code);
    }
  };
  expect("", Errc::EmptyWord);
  expect("   ", Errc::EmptyWord);
  expect("()", Errc::EmptyWord);
  expect("a^", Errc::SyntaxError);
  expect("(a", Errc::SyntaxError);
  expect("a)", Errc::SyntaxError);
  expect("^2", Errc::SyntaxError);
  expect("a^(b", Errc::SyntaxError);
  expect("3a", Errc::SyntaxError);
  expect("a^+2", Errc::SyntaxError);
}

TEST_CASE("print parse print is a fixed point") {
  std::mt19937_64 rng(1618);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_word(rng, 4);
    std::string s1 = print_word(w);
    Word back = parse_word(s1);
    CHECK(print_word(back) == s1);
  }
}

TEST_CASE("evaluation is a homomorphism") {
  std::mt19937_64 rng(0xabcd);
  Env env = matrix_env(rng, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    Word u = random_word(rng, 3);
    Word v = random_word(rng, 3);
    GroupElt lhs = eval_word(word_product({u, v}), env);
    GroupElt rhs = elt_mul(eval_word(u, env), eval_word(v, env));
    CHECK(elt_eq(lhs, rhs));
  }
}

TEST_CASE("inverse powers cancel") {
  std::mt19937_64 rng(0x1234);
  Env env = matrix_env(rng, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_word(rng, 3);
    GroupElt x = eval_word(w, env);
    GroupElt xi = eval_word(word_power(w, -1), env);
    CHECK(elt_is_identity(elt_mul(x, xi)));
  }
}

TEST_CASE("conjugation evaluates as h inverse g h") {
  Env env{{"g", GroupElt(cycle3())}, {"h", GroupElt(swap01())}};
  GroupElt c = eval_word(parse_word("g^(h)"), env);
  CHECK(elt_eq(c, GroupElt(PermImage{2, 0, 1})));
  GroupElt manual = elt_mul(elt_mul(elt_inv(GroupElt(swap01())), GroupElt(cycle3())),
                            GroupElt(swap01()));
  CHECK(elt_eq(c, manual));
}

TEST_CASE("unbound names are reported") {
  Env env{{"a", GroupElt(cycle3())}};
  try {
    eval_word(parse_word("a zz a"), env);
    FAIL("expected UnboundName");
  } catch (const Error& e) {
    CHECK(e.code == Errc::UnboundName);
  }
}

TEST_CASE("matrix words evaluate through powers and conjugates") {
  Env env{{"a", GroupElt(companion7())}};
  CHECK(elt_is_identity(eval_word(parse_word("a^7"), env)));
  CHECK(elt_is_identity(eval_word(parse_word("a^3 a^4"), env)));
  CHECK(elt_eq(eval_word(parse_word("a^-2"), env), eval_word(parse_word("a^5"), env)));
  CHECK(elt_eq(eval_word(parse_word("a^(a)"), env), eval_word(parse_word("a"), env)));
}

TEST_CASE("script parsing and evaluation") {
  const std::string text =
      "# pipeline fragment\n"
      "#! base a b\n"
      "#! extern T\n"
      "\n"
      "c = a b        # co1-exact order=2\n"
      "d = c^2        # co1-exact order=1\n"
      "e = c^(b) c    # co1-exact\n"
      "m1 = T c T^-1  # monster-only\n"
      "m2 = m1 d      # monster-only order=12\n";
  ElementScript s = parse_script(text);
  CHECK(s.base == std::vector<std::string>{"a", "b"});
  CHECK(s.externs == std::vector<std::string>{"T"});
  REQUIRE(s.entries.size() == 5);
  CHECK(s.entries[0].name == "c");
  CHECK(s.entries[0].tag == "co1-exact");
  CHECK(s.entries[0].expected_order == 2);
  CHECK(!s.entries[2].expected_order.has_value());
  CHECK(s.entries[3].tag == "monster-only");

  Env env{{"a", GroupElt(swap01())}, {"b", GroupElt(cycle3())}};
  std::vector<OrderCheck> checks;
  Env out = run_script(s, env, "co1-exact", &checks);
  CHECK(out.size() == 5);  // a b c d e
  CHECK(out.count("c") == 1);
  CHECK(out.count("m1") == 0);
  REQUIRE(checks.size() == 2);
  CHECK(checks[0].name == "c");
  CHECK(checks[0].computed == 2);
  CHECK(checks[0].matches);
  CHECK(checks[1].name == "d");
  CHECK(checks[1].matches);

  // the printed form of every stored word reparses to itself
  for (const auto& entry : s.entries) {
    std::string p = print_word(entry.word);
    CHECK(print_word(parse_word(p)) == p);
  }
}

TEST_CASE("script order mismatches report divisibility") {
  const std::string text =
      "#! base a\n"
      "big = a  # co1-exact order=6\n"
      "off = a^2  # co1-exact order=5\n";
  ElementScript s = parse_script(text);
  Env env{{"a", GroupElt(PermImage{1, 2, 0})}};  // order 3
  std::vector<OrderCheck> checks;
  run_script(s, env, "co1-exact", &checks);
  REQUIRE(checks.size() == 2);
  CHECK(!checks[0].matches);
  CHECK(checks[0].computed == 3);
  CHECK(checks[0].divides);  // 3 divides 6
  CHECK(!checks[1].matches);
  CHECK(checks[1].computed == 3);
  CHECK(!checks[1].divides);  // 3 does not divide 5
}

TEST_CASE("script validation failures") {
  auto expect = [](const std::string& text, Errc code) {
    try {
      parse_script(text);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code == code);
    }
  };
  expect("#! base a\nc = a  # co1-exact\nc = a a  # co1-exact\n",
         Errc::DuplicateName);
  expect("#! base a\nc = a zz  # co1-exact\n", Errc::UndefinedReference);
  expect("#! base a\n#! extern T\nc = a T  # co1-exact\n",
         Errc::UndefinedReference);
  expect("#! base a\nm = a a  # monster-only\nc = m  # co1-exact\n",
         Errc::UndefinedReference);
  expect("#! base a\nc = a\n", Errc::SyntaxError);          // no tag
  expect("#! base a\nc = a  # somewhere\n", Errc::SyntaxError);
  expect("#! base a\nc a  # co1-exact\n", Errc::SyntaxError);
  expect("#! twist a\n", Errc::SyntaxError);
  expect("#! base a\nc = a  # co1-exact order=x\n", Errc::SyntaxError);
}

TEST_CASE("monster-only entries evaluate when externs are bound") {
  const std::string text =
      "#! base a\n"
      "#! extern T\n"
      "m = T^-1 a T  # monster-only order=3\n";
  ElementScript s = parse_script(text);
  Env env{{"a", GroupElt(cycle3())}, {"T", GroupElt(swap01())}};
  std::vector<OrderCheck> checks;
  Env out = run_script(s, env, "monster-only", &checks);
  CHECK(out.count("m") == 1);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].matches);
}

TEST_CASE("script files load from disk") {
  std::string path = "words_script_roundtrip.tmp";
  {
    std::ofstream f(path);
    f << "#! base a\nsq = a a  # co1-exact\n";
  }
  ElementScript s = load_script(path);
  REQUIRE(s.entries.size() == 1);
  CHECK(s.entries[0].name == "sq");
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_script("no_such_file.script"), Error);
}
