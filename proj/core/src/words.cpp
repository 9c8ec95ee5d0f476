#include "amalgamkit/words.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "amalgamkit/errors.hpp"

namespace amk {

PermImage perm_identity(int n) {
  PermImage p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool perm_is_valid(const PermImage& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

PermImage perm_compose(const PermImage& p, const PermImage& q) {
  if (p.size() != q.size())
    fail(Errc::DegreeMismatch, "composing permutations of degrees " +
                                   std::to_string(p.size()) + " and " +
                                   std::to_string(q.size()));
  PermImage r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[x] = q[p[x]];
  return r;
}

PermImage perm_inverse(const PermImage& p) {
  PermImage r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
  return r;
}

uint64_t perm_order(const PermImage& p) {
  std::vector<char> seen(p.size(), 0);
  uint64_t ord = 1;
  for (size_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    uint64_t len = 0;
    for (size_t y = x; !seen[y]; y = p[y]) {
      seen[y] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

namespace {

const DenseMatrix* as_mat(const GroupElt& a) { return std::get_if<DenseMatrix>(&a); }
const PermImage* as_perm(const GroupElt& a) { return std::get_if<PermImage>(&a); }

[[noreturn]] void mixed() {
  fail(Errc::FieldMismatch, "matrix and permutation elements cannot mix");
}

}  // namespace

GroupElt elt_mul(const GroupElt& a, const GroupElt& b) {
  if (const auto* m = as_mat(a)) {
    const auto* n = as_mat(b);
    if (!n) mixed();
    return *m * *n;
  }
  const auto* p = as_perm(a);
  const auto* q = as_perm(b);
  if (!q) mixed();
  return perm_compose(*p, *q);
}

GroupElt elt_inv(const GroupElt& a) {
  if (const auto* m = as_mat(a)) return mat_inv(*m);
  return perm_inverse(*as_perm(a));
}

GroupElt elt_pow(const GroupElt& a, long long e) {
  GroupElt base = a;
  if (e < 0) {
    base = elt_inv(a);
    e = -e;
  }
  if (const auto* m = as_mat(base)) return m->pow(static_cast<uint64_t>(e));
  const PermImage& p = *as_perm(base);
  PermImage acc = perm_identity(static_cast<int>(p.size()));
  PermImage sq = p;
  uint64_t k = static_cast<uint64_t>(e);
  while (k) {
    if (k & 1) acc = perm_compose(acc, sq);
    k >>= 1;
    if (k) sq = perm_compose(sq, sq);
  }
  return acc;
}

GroupElt elt_conj(const GroupElt& g, const GroupElt& h) {
  return elt_mul(elt_mul(elt_inv(h), g), h);
}

bool elt_eq(const GroupElt& a, const GroupElt& b) {
  if (const auto* m = as_mat(a)) {
    const auto* n = as_mat(b);
    if (!n) mixed();
    return *m == *n;
  }
  const auto* p = as_perm(a);
  const auto* q = as_perm(b);
  if (!q) mixed();
  if (p->size() != q->size())
    fail(Errc::DegreeMismatch, "comparing permutations of different degrees");
  return *p == *q;
}

bool elt_is_identity(const GroupElt& a) {
  if (const auto* m = as_mat(a)) return m->is_identity();
  const PermImage& p = *as_perm(a);
  for (size_t x = 0; x < p.size(); ++x)
    if (p[x] != static_cast<int>(x)) return false;
  return true;
}

uint64_t elt_order(const GroupElt& a, uint64_t bound) {
  if (const auto* m = as_mat(a)) return element_order(*m, bound);
  uint64_t o = perm_order(*as_perm(a));
  if (o > bound)
    fail(Errc::OrderExceedsBound,
         "order " + std::to_string(o) + " exceeds bound " + std::to_string(bound));
  return o;
}

Word word_gen(const std::string& name) {
  auto n = std::make_shared<WordNode>();
  n->kind = WordNode::Kind::Gen;
  n->name = name;
  return n;
}

Word word_product(std::vector<Word> parts) {
  std::vector<Word> flat;
  for (auto& p : parts) {
    if (!p) fail(Errc::EmptyWord, "null factor in a product");
    if (p->kind == WordNode::Kind::Product)
      flat.insert(flat.end(), p->parts.begin(), p->parts.end());
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) fail(Errc::EmptyWord, "empty product");
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<WordNode>();
  n->kind = WordNode::Kind::Product;
  n->parts = std::move(flat);
  return n;
}

Word word_power(Word base, long long e) {
  if (!base) fail(Errc::EmptyWord, "power of an empty word");
  auto n = std::make_shared<WordNode>();
  n->kind = WordNode::Kind::Power;
  n->base = std::move(base);
  n->exp = e;
  return n;
}

Word word_conjugate(Word base, Word by) {
  if (!base || !by) fail(Errc::EmptyWord, "conjugation of an empty word");
  auto n = std::make_shared<WordNode>();
  n->kind = WordNode::Kind::Conjugate;
  n->base = std::move(base);
  n->by = std::move(by);
  return n;
}

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& known;
  size_t pos = 0;

  [[noreturn]] void die(const std::string& what) {
    fail(Errc::SyntaxError, what + " at position " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  // Longest known name; letter + digits + trailing p's when none matches.
  // A known match wins outright so a declared short name (d12) is never
  // swallowed together with the head of the next one (p3).
  std::string scan_name() {
    skip_ws();
    size_t best = 0;
    for (const auto& k : known)
      if (k.size() > best && s.compare(pos, k.size(), k) == 0) best = k.size();
    if (!best) {
      size_t t = pos;
      if (t < s.size() && std::isalpha(static_cast<unsigned char>(s[t]))) {
        ++t;
        while (t < s.size() && std::isdigit(static_cast<unsigned char>(s[t]))) ++t;
        while (t < s.size() && s[t] == 'p') ++t;
        best = t - pos;
      }
    }
    if (!best) die("expected a name");
    std::string name = s.substr(pos, best);
    pos += best;
    return name;
  }

  long long scan_int() {
    skip_ws();
    bool neg = false;
    if (pos < s.size() && s[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      die("expected an integer exponent");
    long long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > (1ll << 40)) die("exponent out of range");
      ++pos;
    }
    return neg ? -v : v;
  }

  Word parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Word w = parse_product();
      if (peek() != ')') die("expected ')'");
      ++pos;
      return w;
    }
    return word_gen(scan_name());
  }

  Word parse_postfixed() {
    Word w = parse_atom();
    while (peek() == '^') {
      ++pos;
      char c = peek();
      if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
        w = word_power(std::move(w), scan_int());
      } else if (c == '(') {
        ++pos;
        Word by = parse_product();
        if (peek() != ')') die("expected ')'");
        ++pos;
        w = word_conjugate(std::move(w), std::move(by));
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        w = word_conjugate(std::move(w), word_gen(scan_name()));
      } else {
        die("expected an exponent or conjugator after '^'");
      }
    }
    return w;
  }

  Word parse_product() {
    std::vector<Word> parts;
    while (!at_end() && peek() != ')') parts.push_back(parse_postfixed());
    if (parts.empty()) fail(Errc::EmptyWord, "word has no factors");
    return word_product(std::move(parts));
  }
};

}  // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& known_names) {
  Parser p{text, known_names};
  Word w = p.parse_product();
  if (!p.at_end()) p.die("trailing input");
  return w;
}

namespace {

void print_rec(const Word& w, std::string& out) {
  auto print_base = [&out](const Word& b) {
    if (b->kind == WordNode::Kind::Product) {
      out += '(';
      print_rec(b, out);
      out += ')';
    } else {
      print_rec(b, out);
    }
  };
  switch (w->kind) {
    case WordNode::Kind::Gen:
      out += w->name;
      break;
    case WordNode::Kind::Product:
      for (size_t i = 0; i < w->parts.size(); ++i) {
        if (i) out += ' ';
        print_rec(w->parts[i], out);
      }
      break;
    case WordNode::Kind::Power:
      print_base(w->base);
      out += '^';
      out += std::to_string(w->exp);
      break;
    case WordNode::Kind::Conjugate:
      print_base(w->base);
      out += "^(";
      print_rec(w->by, out);
      out += ')';
      break;
  }
}

}  // namespace

std::string print_word(const Word& w) {
  if (!w) fail(Errc::EmptyWord, "printing an empty word");
  std::string out;
  print_rec(w, out);
  return out;
}

namespace {

GroupElt eval_rec(const Word& w, const Env& env,
                  std::unordered_map<const WordNode*, GroupElt>& memo) {
  auto hit = memo.find(w.get());
  if (hit != memo.end()) return hit->second;
  GroupElt result = [&]() -> GroupElt {
    switch (w->kind) {
      case WordNode::Kind::Gen: {
        auto it = env.find(w->name);
        if (it == env.end()) fail(Errc::UnboundName, "no binding for '" + w->name + "'");
        return it->second;
      }
      case WordNode::Kind::Product: {
        GroupElt acc = eval_rec(w->parts[0], env, memo);
        for (size_t i = 1; i < w->parts.size(); ++i)
          acc = elt_mul(acc, eval_rec(w->parts[i], env, memo));
        return acc;
      }
      case WordNode::Kind::Power:
        return elt_pow(eval_rec(w->base, env, memo), w->exp);
      case WordNode::Kind::Conjugate:
        return elt_conj(eval_rec(w->base, env, memo),
                        eval_rec(w->by, env, memo));
    }
    fail(Errc::SyntaxError, "corrupt word node");
  }();
  memo.emplace(w.get(), result);
  return result;
}

void collect_gens(const Word& w, std::set<std::string>& out) {
  switch (w->kind) {
    case WordNode::Kind::Gen:
      out.insert(w->name);
      break;
    case WordNode::Kind::Product:
      for (const auto& p : w->parts) collect_gens(p, out);
      break;
    case WordNode::Kind::Power:
      collect_gens(w->base, out);
      break;
    case WordNode::Kind::Conjugate:
      collect_gens(w->base, out);
      collect_gens(w->by, out);
      break;
  }
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

GroupElt eval_word(const Word& w, const Env& env) {
  if (!w) fail(Errc::EmptyWord, "evaluating an empty word");
  std::unordered_map<const WordNode*, GroupElt> memo;
  return eval_rec(w, env, memo);
}

ElementScript parse_script(const std::string& text) {
  ElementScript script;
  std::set<std::string> declared;          // every name any entry may mention
  std::set<std::string> co1_visible;       // names co1-exact entries may mention
  std::vector<std::string> known;          // lexer support, longest match
  auto declare = [&](const std::string& n, bool co1, int line) {
    if (!declared.insert(n).second)
      fail(Errc::DuplicateName, "'" + n + "' redeclared on line " + std::to_string(line));
    if (co1) co1_visible.insert(n);
    known.push_back(n);
  };

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string l = trim(raw);
    if (l.empty()) continue;
    if (l.rfind("#!", 0) == 0) {
      auto toks = split_ws(l.substr(2));
      if (toks.empty())
        fail(Errc::SyntaxError, "empty directive on line " + std::to_string(line));
      if (toks[0] == "base") {
        for (size_t i = 1; i < toks.size(); ++i) {
          script.base.push_back(toks[i]);
          declare(toks[i], true, line);
        }
      } else if (toks[0] == "extern") {
        for (size_t i = 1; i < toks.size(); ++i) {
          script.externs.push_back(toks[i]);
          declare(toks[i], false, line);
        }
      } else {
        fail(Errc::SyntaxError,
             "unknown directive '" + toks[0] + "' on line " + std::to_string(line));
      }
      continue;
    }
    if (l[0] == '#') continue;

    size_t eq = l.find('=');
    if (eq == std::string::npos)
      fail(Errc::SyntaxError, "missing '=' on line " + std::to_string(line));
    ScriptEntry e;
    e.name = trim(l.substr(0, eq));
    if (e.name.empty() || split_ws(e.name).size() != 1)
      fail(Errc::SyntaxError, "bad entry name on line " + std::to_string(line));
    std::string rest = l.substr(eq + 1);
    size_t hash = rest.find('#');
    if (hash == std::string::npos)
      fail(Errc::SyntaxError,
           "entry needs a context tag on line " + std::to_string(line));
    e.text = trim(rest.substr(0, hash));
    auto meta = split_ws(rest.substr(hash + 1));
    if (meta.empty() || (meta[0] != "co1-exact" && meta[0] != "monster-only"))
      fail(Errc::SyntaxError,
           "tag must be co1-exact or monster-only on line " + std::to_string(line));
    e.tag = meta[0];
    for (size_t i = 1; i < meta.size(); ++i) {
      if (meta[i].rfind("order=", 0) == 0) {
        try {
          e.expected_order = std::stoull(meta[i].substr(6));
        } catch (const std::exception&) {
          fail(Errc::SyntaxError,
               "bad order annotation on line " + std::to_string(line));
        }
      } else {
        fail(Errc::SyntaxError,
             "unknown annotation '" + meta[i] + "' on line " + std::to_string(line));
      }
    }
    try {
      e.word = parse_word(e.text, known);
    } catch (const Error& err) {
      fail(err.code, std::string(err.what()) + " (line " + std::to_string(line) + ")");
    }
    std::set<std::string> used;
    collect_gens(e.word, used);
    bool co1 = e.tag == "co1-exact";
    for (const auto& u : used) {
      if (!declared.count(u))
        fail(Errc::UndefinedReference,
             "'" + u + "' used before declaration on line " + std::to_string(line));
      if (co1 && !co1_visible.count(u))
        fail(Errc::UndefinedReference,
             "co1-exact entry '" + e.name + "' cannot use '" + u +
                 "' (line " + std::to_string(line) + ")");
    }
    declare(e.name, co1, line);
    script.entries.push_back(std::move(e));
  }
  return script;
}

ElementScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadConfig, "cannot open script file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_script(buf.str());
}

Env run_script(const ElementScript& s, const Env& env, const std::string& filter,
               std::vector<OrderCheck>* checks, uint64_t order_bound) {
  Env out = env;
  for (const auto& e : s.entries) {
    if (e.tag != filter) continue;
    if (out.count(e.name))
      fail(Errc::DuplicateName, "'" + e.name + "' already bound in the environment");
    GroupElt val;
    try {
      val = eval_word(e.word, out);
    } catch (const Error& err) {
      fail(err.code, std::string(err.what()) + " (entry '" + e.name + "')");
    }
    if (e.expected_order && checks) {
      OrderCheck oc;
      oc.name = e.name;
      oc.expected = *e.expected_order;
      oc.computed = elt_order(val, order_bound);
      oc.matches = oc.computed == oc.expected;
      oc.divides = !oc.matches && oc.computed != 0 && oc.expected % oc.computed == 0;
      checks->push_back(oc);
    }
    out.emplace(e.name, std::move(val));
  }
  return out;
}

}  // namespace amk
