#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "amalgamkit/words.hpp"

namespace amk {

// Text-format matrix or permutation list. Matrix entries are kept as the raw
// integer grid so any field marker up to 9 round-trips; conversion to
// DenseMatrix is defined for the binary fields 2, 4, 8 (digit = bit pattern).
struct MeatAxeObject {
  enum class Kind { Matrix, Permutation };
  Kind kind = Kind::Matrix;
  int field = 0;
  int rows = 0;
  int cols = 0;
  std::vector<uint32_t> entries;  // row-major
  std::vector<PermImage> perms;

  uint32_t at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }
  DenseMatrix to_dense() const;  // UnsupportedField unless field is 2, 4 or 8
  static MeatAxeObject from_dense(const DenseMatrix& m);
  static MeatAxeObject from_perms(std::vector<PermImage> ps);

  friend bool operator==(const MeatAxeObject& a, const MeatAxeObject& b);
};

// Header forms: "1 q rows cols" (digit grid, q <= 9, lines may wrap),
// "12 1 degree count" (1-based images, one per line), or the named variant
// "matrix field=q rows=r cols=c" with whitespace-separated entries.
MeatAxeObject parse_meataxe(const std::string& text);
std::string write_meataxe(const MeatAxeObject& obj, bool named_header = false);

std::string sha256_hex(const void* data, size_t len);
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

struct ManifestFile {
  std::string name;
  std::string digest;  // sha-256, lowercase hex
  std::string source;  // URL template with {file}, or "-" when vendored only
};

struct ManifestEntry {
  std::string group;
  std::string rep;
  std::vector<ManifestFile> files;
};

// One line per file: "group rep filename sha256 source", '#' comments.
struct DataManifest {
  std::vector<ManifestEntry> entries;
  // UnknownLabel when absent; empty rep takes the group's first entry.
  const ManifestEntry& find(const std::string& group,
                            const std::string& rep = "") const;
};

DataManifest parse_manifest(const std::string& text);
DataManifest load_manifest(const std::string& path);

struct FetchOptions {
  std::string cache_dir;
  std::string fixture_dir;  // checked before any download; may be empty
  bool offline = false;
  int retries = 2;
  // Returns the body for a URL; absent means no network path exists.
  std::function<std::string(const std::string& url)> transport;
};

// Cached file paths for every file of the entry, digest-verified in all
// paths (cache hit, vendored fixture, download). A corrupt cache file is
// renamed aside and reported as DigestMismatch.
std::vector<std::string> fetch_generators(const ManifestEntry& entry,
                                          const FetchOptions& opt);

// AMALGAMKIT_CACHE, else .amalgamkit-cache under the working directory.
std::string default_cache_dir();

}  // namespace amk
