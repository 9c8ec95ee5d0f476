#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amalgamkit/words.hpp"

namespace amk {

// Typed expected/computed value for a reproduction claim. Comparisons are
// exact: multisets are kept sorted, polynomials are GF(2) coefficient bit
// masks (bit i = coefficient of x^i).
struct ClaimValue {
  enum class Kind { Int, Bool, Multiset, Poly, PolyMultiset };
  Kind kind = Kind::Int;
  int64_t num = 0;
  bool flag = false;
  std::vector<int64_t> bag;
  uint64_t poly = 0;
  std::vector<uint64_t> polys;

  static ClaimValue of_int(int64_t v);
  static ClaimValue of_bool(bool v);
  static ClaimValue of_multiset(std::vector<int64_t> v);
  static ClaimValue of_poly(uint64_t bits);
  static ClaimValue of_polyset(std::vector<uint64_t> bits);

  std::string type_name() const;
  std::string render() const;

  friend bool operator==(const ClaimValue& a, const ClaimValue& b);
  friend bool operator!=(const ClaimValue& a, const ClaimValue& b) {
    return !(a == b);
  }
};

// One row of the shipped claim table: what is asserted, where the assertion
// comes from (section number plus an own-words anchor quote), and how the
// expected value was established ("stated", "derived", "direct").
struct ClaimSpec {
  std::string id;
  std::string scenario;  // S0..S4
  std::string section;
  std::string quote;
  std::string provenance;
  ClaimValue expected;
};

struct ClaimTable {
  std::vector<ClaimSpec> claims;
  const ClaimSpec* find(const std::string& id) const;
};

// BadConfig on malformed JSON, a duplicate or empty id, an unknown scenario
// or value type, or an empty anchor quote.
ClaimTable parse_claims(const std::string& json_text);
ClaimTable load_claims(const std::string& path);

enum class ClaimStatus { Pass, Fail, Skipped };

// "pass", "fail", "skipped-no-data".
const char* claim_status_name(ClaimStatus s);

struct ClaimReport {
  std::string id;
  std::string section;
  std::string quote;
  ClaimValue expected;
  std::optional<ClaimValue> computed;
  ClaimStatus status = ClaimStatus::Skipped;
  std::string note;
  double ms = 0.0;
};

struct ScenarioConfig {
  std::string data_dir = "data";
  std::string cache_dir;  // empty selects default_cache_dir()
  bool offline = false;
  std::set<std::string> enabled = {"S0", "S1", "S2", "S3", "S4"};
  int parallelism = 1;
  uint64_t seed = 0x616d6b31;  // fuzz positions only; claims are deterministic
};

// Each scenario returns one report per claim-table row it owns, in table
// order. Rows whose required data files are absent come back skipped;
// evaluation errors fail the affected rows and never throw.
std::vector<ClaimReport> s0_word_orders(const ScenarioConfig& cfg,
                                        const ClaimTable& table);
std::vector<ClaimReport> s1_split(const ScenarioConfig& cfg,
                                  const ClaimTable& table);
std::vector<ClaimReport> s2_orbit_census(const ScenarioConfig& cfg,
                                         const ClaimTable& table);
std::vector<ClaimReport> s3_involution_census(const ScenarioConfig& cfg,
                                              const ClaimTable& table);
std::vector<ClaimReport> s4_amalgam_criterion(const ScenarioConfig& cfg,
                                              const ClaimTable& table);

struct AggregateReport {
  std::string run_id;  // digest of config and table, stable across reruns
  ScenarioConfig config;
  std::string preamble;
  std::vector<ClaimReport> claims;
  int passed = 0;
  int failed = 0;
  int skipped = 0;

  bool ok() const { return failed == 0; }
};

// Runs the enabled scenarios and merges their reports in claim-table order.
// BadConfig when an enabled id is not one of S0..S4. Skipped rows never
// count as passes; only failed rows make ok() false.
AggregateReport verify_all(const ScenarioConfig& cfg, const ClaimTable& table);

std::string report_json(const AggregateReport& r);
std::string report_table(const AggregateReport& r);

}  // namespace amk
