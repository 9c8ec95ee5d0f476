#include "amalgamkit/mtxio.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "amalgamkit/errors.hpp"

namespace fs = std::filesystem;

namespace amk {

namespace {

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_int(const std::string& tok, const char* what) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    fail(Errc::EntryOutOfRange, std::string("not an integer in ") + what + ": " + tok);
  }
  if (used != tok.size())
    fail(Errc::EntryOutOfRange, std::string("not an integer in ") + what + ": " + tok);
  return v;
}

int field_degree_for(int q) {
  switch (q) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default: fail(Errc::UnsupportedField, "no binary field of order " + std::to_string(q));
  }
}

MeatAxeObject parse_matrix_payload(int q, int r, int c, const std::string& body,
                                   bool digit_grid) {
  MeatAxeObject obj;
  obj.kind = MeatAxeObject::Kind::Matrix;
  obj.field = q;
  obj.rows = r;
  obj.cols = c;
  size_t want = static_cast<size_t>(r) * c;
  obj.entries.reserve(want);
  if (digit_grid) {
    for (char ch : body) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        fail(Errc::EntryOutOfRange, std::string("unexpected character '") + ch + "'");
      obj.entries.push_back(static_cast<uint32_t>(ch - '0'));
    }
  } else {
    for (const std::string& tok : split_tokens(body))
      obj.entries.push_back(static_cast<uint32_t>(parse_int(tok, "matrix payload")));
  }
  if (obj.entries.size() != want)
    fail(Errc::TruncatedPayload,
         "matrix payload has " + std::to_string(obj.entries.size()) + " entries, header says " +
             std::to_string(want));
  for (uint32_t e : obj.entries)
    if (e >= static_cast<uint32_t>(q))
      fail(Errc::EntryOutOfRange, "entry " + std::to_string(e) + " outside field of order " +
                                      std::to_string(q));
  return obj;
}

MeatAxeObject parse_perm_payload(int degree, int count, const std::string& body) {
  std::vector<long long> vals;
  for (const std::string& tok : split_tokens(body))
    vals.push_back(parse_int(tok, "permutation payload"));
  size_t want = static_cast<size_t>(degree) * count;
  if (vals.size() != want)
    fail(Errc::TruncatedPayload, "permutation payload has " + std::to_string(vals.size()) +
                                     " images, header says " + std::to_string(want));
  MeatAxeObject obj;
  obj.kind = MeatAxeObject::Kind::Permutation;
  for (int p = 0; p < count; ++p) {
    PermImage img(degree);
    std::vector<bool> seen(degree, false);
    for (int i = 0; i < degree; ++i) {
      long long v = vals[static_cast<size_t>(p) * degree + i];
      if (v < 1 || v > degree)
        fail(Errc::EntryOutOfRange, "image " + std::to_string(v) + " outside 1.." +
                                        std::to_string(degree));
      if (seen[v - 1])
        fail(Errc::EntryOutOfRange, "repeated image " + std::to_string(v));
      seen[v - 1] = true;
      img[i] = static_cast<int>(v - 1);
    }
    obj.perms.push_back(std::move(img));
  }
  return obj;
}

}  // namespace

DenseMatrix MeatAxeObject::to_dense() const {
  if (kind != Kind::Matrix) fail(Errc::ShapeMismatch, "not a matrix object");
  auto F = BinaryField::get(field_degree_for(field));
  DenseMatrix m(F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, at(i, j));
  return m;
}

MeatAxeObject MeatAxeObject::from_dense(const DenseMatrix& m) {
  MeatAxeObject obj;
  obj.kind = Kind::Matrix;
  uint64_t q = m.field()->order();
  if (q > 9) fail(Errc::UnsupportedField, "field too large for digit text");
  obj.field = static_cast<int>(q);
  obj.rows = m.rows();
  obj.cols = m.cols();
  obj.entries.reserve(static_cast<size_t>(obj.rows) * obj.cols);
  for (int i = 0; i < obj.rows; ++i)
    for (int j = 0; j < obj.cols; ++j) obj.entries.push_back(m.get(i, j));
  return obj;
}

MeatAxeObject MeatAxeObject::from_perms(std::vector<PermImage> ps) {
  if (ps.empty()) fail(Errc::BadConfig, "no permutations given");
  for (const PermImage& p : ps) {
    if (p.size() != ps[0].size())
      fail(Errc::DegreeMismatch, "permutations of mixed degree");
    if (!perm_is_valid(p)) fail(Errc::BadConfig, "image list is not a bijection");
  }
  MeatAxeObject obj;
  obj.kind = Kind::Permutation;
  obj.perms = std::move(ps);
  return obj;
}

bool operator==(const MeatAxeObject& a, const MeatAxeObject& b) {
  return a.kind == b.kind && a.field == b.field && a.rows == b.rows &&
         a.cols == b.cols && a.entries == b.entries && a.perms == b.perms;
}

MeatAxeObject parse_meataxe(const std::string& text) {
  size_t eol = text.find('\n');
  std::string head = text.substr(0, eol);
  std::string body = eol == std::string::npos ? "" : text.substr(eol + 1);
  std::vector<std::string> toks = split_tokens(head);
  if (toks.empty()) fail(Errc::BadHeader, "empty header line");

  if (toks[0] == "matrix") {
    int q = -1, r = -1, c = -1;
    for (size_t i = 1; i < toks.size(); ++i) {
      size_t eq = toks[i].find('=');
      if (eq == std::string::npos)
        fail(Errc::BadHeader, "expected key=value, got " + toks[i]);
      std::string key = toks[i].substr(0, eq);
      long long v = parse_int(toks[i].substr(eq + 1), "header");
      if (key == "field") q = static_cast<int>(v);
      else if (key == "rows") r = static_cast<int>(v);
      else if (key == "cols") c = static_cast<int>(v);
      else fail(Errc::BadHeader, "unknown header key " + key);
    }
    if (q < 0 || r < 1 || c < 1) fail(Errc::BadHeader, "incomplete named matrix header");
    if (q < 2) fail(Errc::BadHeader, "field order must be at least 2");
    if (q > 9) fail(Errc::UnsupportedField, "fields above 9 are not handled");
    return parse_matrix_payload(q, r, c, body, false);
  }

  std::vector<long long> h;
  for (const std::string& t : toks) h.push_back(parse_int(t, "header"));
  if (h[0] == 1) {
    if (h.size() != 4) fail(Errc::BadHeader, "mode 1 header wants 4 fields");
    if (h[1] < 2) fail(Errc::BadHeader, "field order must be at least 2");
    if (h[1] > 9) fail(Errc::UnsupportedField, "fields above 9 are not handled");
    if (h[2] < 1 || h[3] < 1) fail(Errc::BadHeader, "non-positive matrix shape");
    return parse_matrix_payload(static_cast<int>(h[1]), static_cast<int>(h[2]),
                                static_cast<int>(h[3]), body, true);
  }
  if (h[0] == 12) {
    if (h.size() != 4) fail(Errc::BadHeader, "mode 12 header wants 4 fields");
    if (h[1] != 1) fail(Errc::BadHeader, "mode 12 second field must be 1");
    if (h[2] < 1 || h[3] < 1) fail(Errc::BadHeader, "non-positive degree or count");
    return parse_perm_payload(static_cast<int>(h[2]), static_cast<int>(h[3]), body);
  }
  fail(Errc::BadHeader, "unsupported mode " + std::to_string(h[0]));
}

std::string write_meataxe(const MeatAxeObject& obj, bool named_header) {
  std::ostringstream out;
  if (obj.kind == MeatAxeObject::Kind::Matrix) {
    if (obj.field > 9) fail(Errc::UnsupportedField, "fields above 9 are not handled");
    if (obj.field < 2 || obj.rows < 1 || obj.cols < 1 ||
        obj.entries.size() != static_cast<size_t>(obj.rows) * obj.cols)
      fail(Errc::BadConfig, "matrix object inconsistent with its header");
    for (uint32_t e : obj.entries)
      if (e >= static_cast<uint32_t>(obj.field))
        fail(Errc::BadConfig, "entry outside the declared field");
    if (named_header) {
      out << "matrix field=" << obj.field << " rows=" << obj.rows
          << " cols=" << obj.cols << "\n";
      for (int i = 0; i < obj.rows; ++i) {
        for (int j = 0; j < obj.cols; ++j) out << (j ? " " : "") << obj.at(i, j);
        out << "\n";
      }
    } else {
      out << "1 " << obj.field << " " << obj.rows << " " << obj.cols << "\n";
      for (int i = 0; i < obj.rows; ++i) {
        for (int j = 0; j < obj.cols; ++j) {
          out << obj.at(i, j);
          if ((j + 1) % 80 == 0 && j + 1 < obj.cols) out << "\n";
        }
        out << "\n";
      }
    }
    return out.str();
  }
  if (obj.perms.empty()) fail(Errc::BadConfig, "permutation object with no images");
  size_t degree = obj.perms[0].size();
  out << "12 1 " << degree << " " << obj.perms.size() << "\n";
  for (const PermImage& p : obj.perms) {
    if (p.size() != degree) fail(Errc::BadConfig, "permutations of mixed degree");
    for (int v : p) out << v + 1 << "\n";
  }
  return out.str();
}

std::string sha256_hex(const void* data, size_t len) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int mdlen = 0;
  if (EVP_Digest(data, len, md, &mdlen, EVP_sha256(), nullptr) != 1)
    fail(Errc::BadConfig, "digest computation failed");
  static const char* hexd = "0123456789abcdef";
  std::string out(mdlen * 2, '0');
  for (unsigned int i = 0; i < mdlen; ++i) {
    out[2 * i] = hexd[md[i] >> 4];
    out[2 * i + 1] = hexd[md[i] & 0xf];
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  return sha256_hex(bytes.data(), bytes.size());
}

std::string sha256_file(const std::string& path) {
  return sha256_hex(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::BadConfig, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::BadConfig, "cannot write " + path);
  out << bytes;
  out.flush();
  if (!out) fail(Errc::BadConfig, "short write to " + path);
}

const ManifestEntry& DataManifest::find(const std::string& group,
                                        const std::string& rep) const {
  for (const ManifestEntry& e : entries)
    if (e.group == group && (rep.empty() || e.rep == rep)) return e;
  fail(Errc::UnknownLabel, "no manifest entry for " + group +
                               (rep.empty() ? "" : "/" + rep));
}

DataManifest parse_manifest(const std::string& text) {
  DataManifest m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> toks = split_tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 5)
      fail(Errc::BadConfig,
           "manifest line " + std::to_string(lineno) + " wants 5 fields");
    const std::string& digest = toks[3];
    if (digest.size() != 64 ||
        digest.find_first_not_of("0123456789abcdef") != std::string::npos)
      fail(Errc::BadConfig,
           "manifest line " + std::to_string(lineno) + " has a malformed digest");
    ManifestEntry* entry = nullptr;
    for (ManifestEntry& e : m.entries)
      if (e.group == toks[0] && e.rep == toks[1]) entry = &e;
    if (!entry) {
      m.entries.push_back({toks[0], toks[1], {}});
      entry = &m.entries.back();
    }
    for (const ManifestFile& f : entry->files)
      if (f.name == toks[2])
        fail(Errc::BadConfig, "duplicate manifest file " + toks[2]);
    entry->files.push_back({toks[2], digest, toks[4]});
  }
  return m;
}

DataManifest load_manifest(const std::string& path) {
  return parse_manifest(read_file(path));
}

namespace {

std::mutex g_locks_mu;
std::map<std::string, std::shared_ptr<std::mutex>> g_file_locks;

std::shared_ptr<std::mutex> lock_for(const std::string& path) {
  std::lock_guard<std::mutex> g(g_locks_mu);
  auto& slot = g_file_locks[path];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

std::string ensure_file(const ManifestFile& file, const FetchOptions& opt) {
  fs::path target = fs::path(opt.cache_dir) / file.name;
  auto mu = lock_for(target.string());
  std::lock_guard<std::mutex> g(*mu);
  fs::create_directories(opt.cache_dir);

  if (fs::exists(target)) {
    if (sha256_file(target.string()) == file.digest) return target.string();
    fs::path aside = target;
    aside += ".quarantined";
    std::error_code ec;
    fs::remove(aside, ec);
    fs::rename(target, aside);
    fail(Errc::DigestMismatch,
         "cached " + file.name + " is corrupt; moved to " + aside.string());
  }

  if (!opt.fixture_dir.empty()) {
    fs::path vendored = fs::path(opt.fixture_dir) / file.name;
    if (fs::exists(vendored)) {
      std::string bytes = read_file(vendored.string());
      if (sha256_hex(bytes) != file.digest)
        fail(Errc::DigestMismatch, "vendored " + file.name + " does not match its digest");
      write_file(target.string(), bytes);
      return target.string();
    }
  }

  if (opt.offline)
    fail(Errc::OfflineCacheMiss, file.name + " not cached and offline mode is on");
  if (file.source == "-" || file.source.empty())
    fail(Errc::OfflineCacheMiss, file.name + " has no download source");
  if (!opt.transport)
    fail(Errc::TransportError, "no transport configured for " + file.name);

  std::string url = file.source;
  size_t at;
  while ((at = url.find("{file}")) != std::string::npos)
    url.replace(at, 6, file.name);

  std::string body, last_error = "empty response";
  bool got = false;
  int attempts = 1 + (opt.retries > 0 ? opt.retries : 0);
  for (int tries = 0; tries < attempts && !got; ++tries) {
    try {
      body = opt.transport(url);
      got = true;
    } catch (const std::exception& e) {
      last_error = e.what();
    }
  }
  if (!got)
    fail(Errc::TransportError,
         "fetching " + url + " failed after " + std::to_string(attempts) +
             " attempts: " + last_error);
  if (sha256_hex(body) != file.digest)
    fail(Errc::DigestMismatch, "downloaded " + file.name + " does not match its digest");
  write_file(target.string(), body);
  return target.string();
}

}  // namespace

std::vector<std::string> fetch_generators(const ManifestEntry& entry,
                                          const FetchOptions& opt) {
  if (opt.cache_dir.empty()) fail(Errc::BadConfig, "no cache directory given");
  std::vector<std::string> paths;
  paths.reserve(entry.files.size());
  for (const ManifestFile& f : entry.files) paths.push_back(ensure_file(f, opt));
  return paths;
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("AMALGAMKIT_CACHE"); env && *env) return env;
  return ".amalgamkit-cache";
}

}  // namespace amk
