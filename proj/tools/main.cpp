#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "amalgamkit/actions.hpp"
#include "amalgamkit/errors.hpp"
#include "amalgamkit/linalg.hpp"
#include "amalgamkit/mtxio.hpp"
#include "amalgamkit/scenarios.hpp"
#include "amalgamkit/words.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Settings resolved in precedence order: command line flags, then
// environment variables, then amalgamkit.json in the working directory,
// then built-in defaults.
struct Settings {
  std::string data_dir = "data";
  std::string cache_dir;
  bool offline = false;
  std::string format = "table";
};

struct RawFlags {
  std::optional<std::string> data_dir, cache_dir, format;
  bool offline = false;
};

Settings resolve_settings(const RawFlags& flags) {
  ordered_json file;
  if (fs::exists("amalgamkit.json")) {
    try {
      file = ordered_json::parse(amk::read_file("amalgamkit.json"));
    } catch (const std::exception& e) {
      amk::fail(amk::Errc::BadConfig,
                std::string("amalgamkit.json: ") + e.what());
    }
  }
  auto from_file = [&](const char* key) -> std::optional<std::string> {
    if (file.contains(key) && file[key].is_string())
      return file[key].get<std::string>();
    return std::nullopt;
  };

  Settings s;
  const char* env_data = std::getenv("AMALGAMKIT_DATA_DIR");
  s.data_dir = flags.data_dir.value_or(
      env_data ? env_data : from_file("data_dir").value_or("data"));
  const char* env_cache = std::getenv("AMALGAMKIT_CACHE");
  s.cache_dir = flags.cache_dir.value_or(
      env_cache ? env_cache
                : from_file("cache_dir").value_or(amk::default_cache_dir()));
  s.offline = flags.offline ||
              (file.contains("offline") && file["offline"].is_boolean() &&
               file["offline"].get<bool>());
  s.format = flags.format.value_or(from_file("format").value_or("table"));
  if (s.format != "json" && s.format != "table")
    amk::fail(amk::Errc::BadConfig, "format must be json or table");
  return s;
}

void require_files(const std::vector<std::string>& paths) {
  for (const auto& p : paths)
    if (!fs::exists(p))
      amk::fail(amk::Errc::BadConfig, "input file not found: " + p);
}

std::string http_get(const std::string& url) {
  size_t scheme = url.find("://");
  if (scheme == std::string::npos)
    amk::fail(amk::Errc::TransportError, "unsupported url: " + url);
  size_t slash = url.find('/', scheme + 3);
  std::string base = slash == std::string::npos ? url : url.substr(0, slash);
  std::string path = slash == std::string::npos ? "/" : url.substr(slash);
  httplib::Client client(base);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res || res->status != 200)
    amk::fail(amk::Errc::TransportError,
              "GET " + url + " failed" +
                  (res ? " with status " + std::to_string(res->status) : ""));
  return res->body;
}

amk::FetchOptions fetch_options(const Settings& s) {
  amk::FetchOptions opt;
  opt.cache_dir = s.cache_dir;
  opt.fixture_dir = s.data_dir + "/fixtures";
  opt.offline = s.offline;
  if (!s.offline) opt.transport = http_get;
  return opt;
}

// Binds generator files to the names a, b, c, ... One matrix per file; a
// permutation file contributes one name per permutation it holds.
amk::Env env_from_files(const std::vector<std::string>& files) {
  amk::Env env;
  char name = 'a';
  for (const auto& f : files) {
    amk::MeatAxeObject obj = amk::parse_meataxe(amk::read_file(f));
    if (obj.kind == amk::MeatAxeObject::Kind::Matrix) {
      env.emplace(std::string(1, name++), obj.to_dense());
    } else {
      for (auto& p : obj.perms) env.emplace(std::string(1, name++), p);
    }
    if (name > 'z')
      amk::fail(amk::Errc::BadConfig, "too many generators to name");
  }
  return env;
}

std::vector<std::string> env_names(const amk::Env& env) {
  std::vector<std::string> names;
  for (const auto& [k, v] : env) names.push_back(k);
  return names;
}

ordered_json element_summary(const std::string& label,
                             const amk::GroupElt& g) {
  ordered_json j;
  j["word"] = label;
  j["order"] = amk::elt_order(g);
  if (std::holds_alternative<amk::DenseMatrix>(g)) {
    const auto& m = std::get<amk::DenseMatrix>(g);
    j["kind"] = "matrix";
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["field"] = m.field()->order();
    j["digest"] =
        amk::sha256_hex(amk::write_meataxe(amk::MeatAxeObject::from_dense(m)));
  } else {
    const auto& p = std::get<amk::PermImage>(g);
    j["kind"] = "permutation";
    j["degree"] = p.size();
    j["digest"] = amk::sha256_hex(
        amk::write_meataxe(amk::MeatAxeObject::from_perms({p})));
  }
  return j;
}

void print_summary(const Settings& s, const ordered_json& j) {
  if (s.format == "json") {
    std::printf("%s\n", j.dump(2).c_str());
    return;
  }
  for (const auto& [key, value] : j.items()) {
    std::string v = value.is_string() ? value.get<std::string>()
                                      : value.dump();
    std::printf("%-12s %s\n", key.c_str(), v.c_str());
  }
}

amk::GroupElt eval_request(const Settings& s, const std::string& script_path,
                           const std::string& entry_name,
                           const std::string& word_text,
                           const std::vector<std::string>& gen_files,
                           std::string* label) {
  require_files(gen_files);
  amk::Env env = env_from_files(gen_files);
  if (!script_path.empty()) {
    require_files({script_path});
    amk::ElementScript script = amk::load_script(script_path);
    amk::Env out = amk::run_script(script, env, "co1-exact", nullptr);
    std::string name = entry_name;
    if (name.empty()) {
      for (const auto& e : script.entries)
        if (e.tag == "co1-exact") name = e.name;
    }
    if (name.empty() || !out.count(name))
      amk::fail(amk::Errc::UnboundName,
                "script has no evaluated entry named '" + name + "'");
    *label = name;
    return out.at(name);
  }
  if (word_text.empty())
    amk::fail(amk::Errc::BadConfig, "give a word or --script");
  (void)s;
  *label = word_text;
  return amk::eval_word(amk::parse_word(word_text, env_names(env)), env);
}

const amk::DenseMatrix& as_matrix(const amk::GroupElt& g) {
  if (!std::holds_alternative<amk::DenseMatrix>(g))
    amk::fail(amk::Errc::BadConfig,
              "this query needs a matrix representation");
  return std::get<amk::DenseMatrix>(g);
}

std::string polyf_text(const amk::PolyF& p) {
  if (p.F->degree() == 1) return amk::poly2_to_string(amk::poly2_from_polyf(p));
  std::string s = "[";
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.c[i]);
  }
  return s + "]";
}

amk::DenseMatrix entrywise_over(const amk::DenseMatrix& m,
                                const amk::FieldPtr& F) {
  amk::DenseMatrix out(F, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.set(i, j, m.get(i, j));
  return out;
}

int cmd_fetch(const Settings& s, const std::string& group,
              const std::string& rep) {
  amk::DataManifest man = amk::load_manifest(s.data_dir + "/manifest.txt");
  const amk::ManifestEntry& entry = man.find(group, rep);
  std::vector<std::string> paths =
      amk::fetch_generators(entry, fetch_options(s));
  ordered_json j;
  j["group"] = entry.group;
  j["rep"] = entry.rep;
  ordered_json files = ordered_json::array();
  for (size_t i = 0; i < paths.size(); ++i) {
    ordered_json f;
    f["name"] = entry.files[i].name;
    f["digest"] = entry.files[i].digest;
    f["path"] = paths[i];
    files.push_back(std::move(f));
  }
  j["files"] = files;
  if (s.format == "json") {
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    for (size_t i = 0; i < paths.size(); ++i)
      std::printf("%s  %s\n", entry.files[i].digest.c_str(),
                  paths[i].c_str());
  }
  return 0;
}

int cmd_orbits(const Settings& s, const std::vector<std::string>& gen_files,
               int extend_to) {
  require_files(gen_files);
  std::vector<amk::DenseMatrix> gens;
  for (const auto& f : gen_files)
    gens.push_back(amk::parse_meataxe(amk::read_file(f)).to_dense());
  if (gens.empty()) amk::fail(amk::Errc::BadConfig, "no generator files");
  if (extend_to) {
    int k = 0;
    while ((1 << k) < extend_to) ++k;
    if ((1 << k) != extend_to)
      amk::fail(amk::Errc::BadConfig, "--extend-to takes a power of two");
    amk::FieldPtr F = amk::BinaryField::get(k);
    for (auto& g : gens) g = entrywise_over(g, F);
  }
  amk::FieldPtr F = gens[0].field();
  int d = gens[0].cols();
  amk::PointSet pts = amk::projective_points(F, d);
  std::vector<amk::PermImage> perms = amk::action_on_points(gens, pts);
  amk::OrbitPartition op = amk::orbits(perms, static_cast<int>(pts.size()));
  amk::BSGS chain = amk::schreier_sims(perms, static_cast<int>(pts.size()));

  std::map<std::pair<int64_t, uint64_t>, int> census;
  for (size_t k = 0; k < op.representatives.size(); ++k) {
    uint64_t stab = amk::stabilizer(chain, op.representatives[k]).order;
    ++census[{op.orbit_sizes[k], stab}];
  }

  ordered_json j;
  j["points"] = pts.size();
  j["image_order"] = chain.order();
  ordered_json rows = ordered_json::array();
  for (const auto& [key, count] : census) {
    ordered_json row;
    row["size"] = key.first;
    row["stabilizer"] = key.second;
    row["count"] = count;
    rows.push_back(std::move(row));
  }
  j["census"] = rows;
  if (s.format == "json") {
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("%zu points, image order %llu\n", pts.size(),
                static_cast<unsigned long long>(chain.order()));
    for (const auto& [key, count] : census)
      std::printf("%d orbit(s) of size %lld, stabilizer order %llu\n", count,
                  static_cast<long long>(key.first),
                  static_cast<unsigned long long>(key.second));
  }
  return 0;
}

int cmd_scenario(const Settings& s, const std::vector<std::string>& ids,
                 bool all, int parallel) {
  amk::ScenarioConfig cfg;
  cfg.data_dir = s.data_dir;
  cfg.cache_dir = s.cache_dir;
  cfg.offline = s.offline;
  cfg.parallelism = parallel;
  if (!all) {
    if (ids.empty())
      amk::fail(amk::Errc::BadConfig, "pick scenario ids or pass --all");
    cfg.enabled = std::set<std::string>(ids.begin(), ids.end());
  }
  amk::ClaimTable table = amk::load_claims(s.data_dir + "/claims.json");
  amk::AggregateReport r = amk::verify_all(cfg, table);
  std::printf("%s", (s.format == "json" ? amk::report_json(r)
                                        : amk::report_table(r))
                        .c_str());
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite group computations for the 24-dim GF(2) toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  RawFlags flags;
  std::string opt_data, opt_cache, opt_format;
  auto* od = app.add_option("--data-dir", opt_data,
                            "directory with manifest, script and claims");
  auto* oc = app.add_option("--cache-dir", opt_cache,
                            "download cache directory");
  auto* of = app.add_option("--format", opt_format, "output format")
                 ->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--offline", flags.offline, "never touch the network");

  std::string fetch_group, fetch_rep;
  auto* fetch = app.add_subcommand("fetch", "materialize generator files");
  fetch->add_option("--group", fetch_group, "manifest group label")
      ->required();
  fetch->add_option("--rep", fetch_rep, "representation label");

  std::vector<std::string> gen_files;
  std::string word_text, script_path, entry_name;
  auto add_eval_opts = [&](CLI::App* sub) {
    sub->add_option("--gen", gen_files, "generator file (repeatable)");
    sub->add_option("word", word_text, "word in the generators a, b, ...");
    sub->add_option("--script", script_path, "element script to run");
    sub->add_option("--name", entry_name, "script entry to report");
  };
  auto* eval = app.add_subcommand("eval", "evaluate a word or script entry");
  add_eval_opts(eval);
  auto* order = app.add_subcommand("order", "order of a word's element");
  add_eval_opts(order);
  auto* minpoly =
      app.add_subcommand("minpoly", "minimal polynomial of a word");
  add_eval_opts(minpoly);
  auto* split = app.add_subcommand(
      "split", "order-7 homogeneous component split of a word");
  add_eval_opts(split);

  std::vector<std::string> orbit_files;
  int extend_to = 0;
  auto* orbitsc =
      app.add_subcommand("orbits", "projective orbit census of matrices");
  orbitsc->add_option("--gen", orbit_files, "matrix file (repeatable)")
      ->required();
  orbitsc->add_option("--extend-to", extend_to,
                      "reread entries over GF(q) before acting");

  std::vector<std::string> scenario_ids;
  bool scenario_all = false;
  int parallel = 1;
  auto* scen =
      app.add_subcommand("scenario", "run the claim reproduction suite");
  scen->add_option("ids", scenario_ids, "scenario ids (S0..S4)");
  scen->add_flag("--all", scenario_all, "run every scenario");
  scen->add_option("--parallel", parallel, "parallelism width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (od->count()) flags.data_dir = opt_data;
    if (oc->count()) flags.cache_dir = opt_cache;
    if (of->count()) flags.format = opt_format;
    Settings s = resolve_settings(flags);

    if (app.got_subcommand(fetch)) return cmd_fetch(s, fetch_group, fetch_rep);
    if (app.got_subcommand(orbitsc))
      return cmd_orbits(s, orbit_files, extend_to);
    if (app.got_subcommand(scen))
      return cmd_scenario(s, scenario_ids, scenario_all, parallel);

    std::string label;
    amk::GroupElt g = eval_request(s, script_path, entry_name, word_text,
                                   gen_files, &label);
    if (app.got_subcommand(eval)) {
      print_summary(s, element_summary(label, g));
      return 0;
    }
    if (app.got_subcommand(order)) {
      ordered_json j;
      j["word"] = label;
      j["order"] = amk::elt_order(g);
      print_summary(s, j);
      return 0;
    }
    if (app.got_subcommand(minpoly)) {
      ordered_json j;
      j["word"] = label;
      amk::PolyF p = amk::min_poly(as_matrix(g));
      j["minpoly"] = polyf_text(p);
      j["degree"] = p.deg();
      print_summary(s, j);
      return 0;
    }
    if (app.got_subcommand(split)) {
      const amk::DenseMatrix& m = as_matrix(g);
      auto comps = amk::split_homogeneous(m);
      ordered_json j;
      j["word"] = label;
      j["dims"] = {comps.first.dim(), comps.second.dim()};
      j["invariant"] =
          comps.first.is_invariant(m) && comps.second.is_invariant(m);
      print_summary(s, j);
      return 0;
    }
    amk::fail(amk::Errc::BadConfig, "no subcommand dispatched");
  } catch (const amk::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
