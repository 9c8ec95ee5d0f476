#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "amalgamkit/linalg.hpp"

namespace amk {

// Permutation on {0..n-1} stored as the image list: p[x] is where x goes.
// Composition is left-to-right to match the row-vector matrix convention.
using PermImage = std::vector<int>;

PermImage perm_identity(int n);
PermImage perm_compose(const PermImage& p, const PermImage& q);  // p then q
PermImage perm_inverse(const PermImage& p);
uint64_t perm_order(const PermImage& p);
bool perm_is_valid(const PermImage& p);

using GroupElt = std::variant<DenseMatrix, PermImage>;

GroupElt elt_mul(const GroupElt& a, const GroupElt& b);
GroupElt elt_inv(const GroupElt& a);
GroupElt elt_pow(const GroupElt& a, long long e);
GroupElt elt_conj(const GroupElt& g, const GroupElt& h);  // h^-1 g h
bool elt_eq(const GroupElt& a, const GroupElt& b);
bool elt_is_identity(const GroupElt& a);
uint64_t elt_order(const GroupElt& a, uint64_t bound = 1000000);

// Word in named generators. Immutable; built bottom-up.
struct WordNode;
using Word = std::shared_ptr<const WordNode>;

struct WordNode {
  enum class Kind { Gen, Product, Power, Conjugate };
  Kind kind;
  std::string name;         // Gen
  std::vector<Word> parts;  // Product, flattened and non-empty
  Word base;                // Power, Conjugate
  long long exp = 0;        // Power
  Word by;                  // Conjugate
};

Word word_gen(const std::string& name);
Word word_product(std::vector<Word> parts);  // EmptyWord on none
Word word_power(Word base, long long e);
Word word_conjugate(Word base, Word by);

// Grammar: juxtaposition multiplies; '^' binds to the smallest preceding
// atom; '^' + integer is a power (negatives allowed), '^' + name or
// parenthesized word is conjugation g^h = h^-1 g h. Tokens are the longest
// known name, or letter + digits + trailing p's when no known name matches,
// so "ab^2" is a b^2 and "i0pi1" is i0p i1.
Word parse_word(const std::string& text,
                const std::vector<std::string>& known_names = {});
std::string print_word(const Word& w);

using Env = std::map<std::string, GroupElt>;

// UnboundName for free generators; FieldMismatch across representations.
GroupElt eval_word(const Word& w, const Env& env);

struct ScriptEntry {
  std::string name;
  Word word;
  std::string text;  // source form, kept for reporting
  std::string tag;   // "co1-exact" or "monster-only"
  std::optional<uint64_t> expected_order;
};

struct ElementScript {
  std::vector<std::string> base;     // generators the caller must bind
  std::vector<std::string> externs;  // names only monster-only entries may use
  std::vector<ScriptEntry> entries;
};

// Line format: "name = word  # tag [order=N]". '#' starts a comment,
// "#! base ..." and "#! extern ..." declare names, blank lines skipped.
// Names are unique and every reference resolves to something already
// declared; co1-exact entries cannot lean on externs or monster-only names.
ElementScript parse_script(const std::string& text);
ElementScript load_script(const std::string& path);

struct OrderCheck {
  std::string name;
  uint64_t expected = 0;
  uint64_t computed = 0;
  bool matches = false;
  bool divides = false;  // computed properly divides expected
};

// Evaluates entries whose tag equals `filter` on top of env and returns the
// extended environment. Entries carrying an expected order are measured and
// reported through `checks`; mismatches are reported, not thrown.
Env run_script(const ElementScript& s, const Env& env,
               const std::string& filter = "co1-exact",
               std::vector<OrderCheck>* checks = nullptr,
               uint64_t order_bound = 1000000);

}  // namespace amk
