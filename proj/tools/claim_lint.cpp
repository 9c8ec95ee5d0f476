#include <cstdio>

#include "amalgamkit/errors.hpp"
#include "amalgamkit/scenarios.hpp"

// Validates a claim table: schema marker, unique ids, known scenarios and
// value types, and a nonempty anchor quote on every row. Exits nonzero so
// the build stops when the shipped table regresses.
int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: claim_lint <claims.json>\n");
    return 2;
  }
  try {
    amk::ClaimTable t = amk::load_claims(argv[1]);
    std::printf("claim table ok: %zu claims\n", t.claims.size());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "claim table invalid: %s\n", e.what());
    return 1;
  }
}
