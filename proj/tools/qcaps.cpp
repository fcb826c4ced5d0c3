// qcaps command line: verification, search, equivalence, and
// classification of (quantum) caps.  See README.md for the reference.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qcaps/report.hpp"
#include "qcaps/search_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qcaps;

namespace {

const ProjSpace& space_cache(int dim, int q) {
  static std::map<std::pair<int, int>, std::unique_ptr<ProjSpace>> cache;
  auto key = std::make_pair(dim, q);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<ProjSpace>(ProjSpace::make(dim, q)))
             .first;
  return *it->second;
}

struct LoadedCap {
  const ProjSpace* space;
  std::vector<int> points;
  CapFile file;
};

LoadedCap load_points(const std::string& path) {
  CapFile f = load_cap_file(path);
  const ProjSpace& s = space_cache(f.dim, f.q);
  for (const std::string& w : f.warnings)
    std::cerr << path << ": " << w << "\n";
  return {&s, file_points(f, s), std::move(f)};
}

Cap load_cap(const std::string& path) {
  LoadedCap lc = load_points(path);
  return make_cap(*lc.space, lc.points);
}

const ProjSpace& parse_ambient(std::string text) {
  // accepts "PG(4,4)", "PG 4 4", or "4,4"
  for (char& c : text)
    if (c == '(' || c == ')' || c == ',' || c == 'P' || c == 'G') c = ' ';
  std::istringstream in(text);
  int dim, q;
  if (!(in >> dim >> q)) throw Error("cannot parse ambient space '" + text + "'");
  return space_cache(dim, q);
}

int default_jobs() {
  if (const char* env = std::getenv("QCAPS_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

void print_matrix(std::ostream& out, const Mat& m) {
  for (int i = 0; i < m.m; ++i) {
    for (int j = 0; j < m.m; ++j) {
      if (j) out << ' ';
      out << int(m.at(i, j));
    }
    out << "\n";
  }
}

json collineation_json(const Collineation& c) {
  json rows = json::array();
  for (int i = 0; i < c.mat.m; ++i) {
    std::string row;
    for (int j = 0; j < c.mat.m; ++j) row.push_back('0' + c.mat.at(i, j));
    rows.push_back(row);
  }
  return json{{"matrix", rows}, {"frobenius", c.frobenius}};
}

int cmd_verify(const std::string& path, bool as_json, bool include_zero) {
  LoadedCap lc = load_points(path);
  VerifyReport r = build_report(*lc.space, lc.points);
  if (as_json)
    std::cout << report_json(r, include_zero);
  else
    std::cout << report_table(r, include_zero);
  return (r.is_cap && r.quantum()) ? 0 : 1;
}

int cmd_weights(const std::string& path, bool as_json, bool include_zero) {
  LoadedCap lc = load_points(path);
  WeightDistribution wd = weight_distribution(*lc.space, lc.points);
  if (as_json) {
    json arr = json::array();
    if (include_zero) arr.push_back({0, 1});
    for (const auto& [w, c] : wd) arr.push_back({w, c});
    std::cout << json{{"weight_distribution", arr}}.dump(2) << "\n";
  } else {
    if (include_zero) std::cout << "<0, 1>\n";
    for (const auto& [w, c] : wd) std::cout << "<" << w << ", " << c << ">\n";
  }
  return 0;
}

int cmd_binary_check(const std::string& path, int jobs, bool as_json) {
  LoadedCap lc = load_points(path);
  BinaryExpansion e = expand_to_binary(*lc.space, lc.points);
  SecundumCheck chk = secundum_parity_check(e.lines, jobs);
  bool sympl = symplectic_self_orthogonal(e.rows);
  if (as_json) {
    json j{{"secundum_count", chk.secundums},
           {"skew_parity_ok", chk.ok},
           {"symplectic_ok", sympl}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "secundum_count  " << chk.secundums << "\n"
              << "skew_parity_ok  " << (chk.ok ? "yes" : "no") << "\n"
              << "symplectic_ok   " << (sympl ? "yes" : "no") << "\n";
  }
  return chk.ok && sympl ? 0 : 1;
}

int cmd_equiv(const std::string& pathA, const std::string& pathB, bool pgl_only,
              int jobs, bool as_json) {
  Cap a = load_cap(pathA), b = load_cap(pathB);
  auto pgl = are_equivalent(a, b, /*allow_frobenius=*/false, jobs);
  std::optional<Collineation> pgammal;
  if (!pgl && !pgl_only) pgammal = are_equivalent(a, b, true, jobs);
  const Collineation* witness = pgl ? &*pgl : (pgammal ? &*pgammal : nullptr);

  if (as_json) {
    json j;
    j["pgl_equivalent"] = pgl.has_value();
    if (!pgl_only)
      j["pgammal_equivalent"] = pgl.has_value() || pgammal.has_value();
    j["witness"] = witness ? collineation_json(*witness) : json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "PGL(5,4) equivalent:     " << (pgl ? "yes" : "no") << "\n";
    if (!pgl_only)
      std::cout << "PGammaL(5,4) equivalent: "
                << ((pgl || pgammal) ? "yes" : "no") << "\n";
    if (witness) {
      std::cout << "witness"
                << (witness->frobenius ? " (entrywise conjugation first):"
                                       : ":")
                << "\n";
      print_matrix(std::cout, witness->mat);
    }
  }
  return witness ? 0 : 1;
}

int cmd_stabilizer(const std::string& path, bool pgl_only, int jobs,
                   bool as_json) {
  Cap cap = load_cap(path);
  StabilizerResult pgl = stabilizer(cap, /*allow_frobenius=*/false, jobs);
  std::optional<StabilizerResult> full;
  if (!pgl_only) full = stabilizer(cap, true, jobs);

  if (as_json) {
    json j;
    j["pgl_order"] = pgl.order;
    if (full) j["pgammal_order"] = full->order;
    json gens = json::array();
    for (const auto& g : (full ? full->generators : pgl.generators))
      gens.push_back(collineation_json(g));
    j["generators"] = gens;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "PGL stabilizer order:     " << pgl.order << "\n";
    if (full) std::cout << "PGammaL stabilizer order: " << full->order << "\n";
    const auto& gens = full ? full->generators : pgl.generators;
    std::cout << "generators (" << gens.size() << "):\n";
    for (const auto& g : gens) {
      if (g.frobenius) std::cout << "(entrywise conjugation, then)\n";
      print_matrix(std::cout, g.mat);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_fixtures(const std::string& mode, const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".cap") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .cap fixtures under " << dir << "\n";
    return 2;
  }
  int bad = 0;
  for (const fs::path& p : files) {
    LoadedCap lc = load_points(p.string());
    VerifyReport r = build_report(*lc.space, lc.points);
    if (mode == "list") {
      std::cout << p.stem().string() << "  n=" << r.n << "  complete="
                << (r.is_complete && *r.is_complete ? "yes" : "no")
                << "  quantum=" << (r.is_cap && r.quantum() ? "yes" : "no")
                << "\n";
      continue;
    }
    fs::path expect = p.parent_path() / "expected" / (p.stem().string() + ".json");
    std::ifstream in(expect);
    if (!in) {
      std::cout << p.stem().string() << "  MISSING " << expect.string() << "\n";
      ++bad;
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string got = report_json(r);
    if (got != ss.str()) {
      std::cout << p.stem().string() << "  MISMATCH against "
                << expect.string() << "\n";
      ++bad;
      continue;
    }
    std::cout << p.stem().string() << "  ok\n";
  }
  if (mode == "list") return 0;
  return bad ? 1 : 0;
}

struct SearchArgs {
  std::string ambient = "PG(4,4)";
  std::string seed_path;
  std::string target = "1";
  bool quantum = false;
  bool complete_only = false;
  bool outside = false;
  int jobs = default_jobs();
  std::uint64_t budget = 0;
  std::string out_path;
  std::string resume_path;
  bool certify = false;
};

std::pair<int, int> parse_target(const std::string& t) {
  auto dots = t.find("..");
  if (dots == std::string::npos) {
    int n = std::stoi(t);
    return {n, n};
  }
  return {std::stoi(t.substr(0, dots)), std::stoi(t.substr(dots + 2))};
}

int cmd_search(const SearchArgs& args) {
  const ProjSpace& space = parse_ambient(args.ambient);
  SearchConfig cfg;
  cfg.space = &space;
  auto [lo, hi] = parse_target(args.target);
  cfg.target_min = lo;
  cfg.target_max = hi;
  cfg.require_quantum = args.quantum;
  cfg.require_complete = args.complete_only;
  cfg.restrict_outside_seed_hyperplane = args.outside;
  // A certificate must rest on the traversal, not on the known-maximum
  // constant that ordinarily lets out-of-range targets return instantly.
  cfg.assume_known_maximum = !args.certify;
  cfg.jobs = args.jobs;
  cfg.node_budget = args.budget;

  if (!args.seed_path.empty()) {
    Cap seed = load_cap(args.seed_path);
    if (seed.space().dim() == space.dim() - 1)
      cfg.seed = embed_seed(seed, space);
    else if (&seed.space() == &space)
      cfg.seed = seed;
    else
      throw Error("seed space does not match the ambient space");
  }

  PersistedSearch result;
  if (!args.out_path.empty()) {
    result =
        run_search_to_file(std::move(cfg), args.out_path, args.resume_path);
  } else {
    cfg.emit = [&](const Cap& c) {
      std::cout << cap_record(c, hyperplane_parity_ok(c)) << "\n";
    };
    result.stats = run_search(cfg);
  }

  json cert{{"nodes", result.stats.nodes},
            {"hits", result.stats.hits},
            {"complete", result.stats.completed}};
  if (!result.stats.worker_nodes.empty())
    cert["worker_nodes"] = result.stats.worker_nodes;
  if (args.certify) cert["nonexistence"] = result.stats.hits == 0;
  std::cerr << cert.dump() << "\n";

  if (!result.stats.completed) return 1;
  if (args.certify) return result.stats.hits == 0 ? 0 : 1;
  return 0;
}

int cmd_classify(const std::string& ambient, int size, bool quantum,
                 const std::vector<std::string>& seed_paths, int jobs,
                 std::uint64_t budget, const std::string& out_dir,
                 bool as_json) {
  const ProjSpace& space = parse_ambient(ambient);
  ClassifyOptions opts{jobs, budget};
  std::vector<CapClass> classes;
  if (seed_paths.empty()) {
    classes = classify(space, size, quantum, opts);
  } else {
    std::vector<Cap> seeds;
    for (const std::string& p : seed_paths) seeds.push_back(load_cap(p));
    classes = classify_from_seeds(space, seeds, size, quantum, opts);
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::ostringstream name;
      name << size << "cap_class" << i + 1 << ".cap";
      std::ofstream out(fs::path(out_dir) / name.str());
      out << write_cap(classes[i].rep);
    }
  }
  if (as_json) {
    json arr = json::array();
    for (const auto& c : classes) {
      json cols = json::array();
      for (int p : c.rep.points()) {
        std::string col;
        for (Gf x : space.coords_of(p)) col.push_back('0' + x);
        cols.push_back(col);
      }
      char sig[20];
      std::snprintf(sig, sizeof sig, "%016llx",
                    static_cast<unsigned long long>(signature_hash(c.sig)));
      arr.push_back(json{{"count", c.count}, {"sig", sig}, {"cols", cols}});
    }
    std::cout << json{{"classes", arr}}.dump(2) << "\n";
  } else {
    std::cout << classes.size() << " class(es)\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::cout << "class " << i + 1 << ": " << classes[i].count
                << " cap(s)\n"
                << write_cap(classes[i].rep) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum caps in projective spaces over GF(4)"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "verify a cap file");
  std::string verify_file;
  bool include_zero = false;
  verify->add_option("file", verify_file)->required();
  verify->add_flag("--include-zero", include_zero,
                   "list the zero codeword in weight tables");

  auto* weights = app.add_subcommand("weights", "weight distribution only");
  std::string weights_file;
  weights->add_option("file", weights_file)->required();
  weights->add_flag("--include-zero", include_zero);

  auto* bcheck = app.add_subcommand(
      "binary-check", "secundum skew parities and the symplectic verdict");
  std::string bcheck_file;
  int bcheck_jobs = default_jobs();
  bcheck->add_option("file", bcheck_file)->required();
  bcheck->add_option("--jobs", bcheck_jobs);

  auto* equiv = app.add_subcommand("equiv", "projective equivalence of two caps");
  std::string equiv_a, equiv_b;
  bool pgl_only = false;
  int equiv_jobs = default_jobs();
  equiv->add_option("a", equiv_a)->required();
  equiv->add_option("b", equiv_b)->required();
  equiv->add_flag("--pgl-only", pgl_only, "skip the semilinear search");
  equiv->add_option("--jobs", equiv_jobs);

  auto* stab = app.add_subcommand("stabilizer", "setwise stabilizer of a cap");
  std::string stab_file;
  int stab_jobs = default_jobs();
  stab->add_option("file", stab_file)->required();
  stab->add_flag("--pgl-only", pgl_only);
  stab->add_option("--jobs", stab_jobs);

  auto* fixtures = app.add_subcommand("fixtures", "list or check shipped fixtures");
  std::string fixtures_mode;
  std::string fixtures_dir = "fixtures";
  fixtures->add_option("mode", fixtures_mode)
      ->required()
      ->check(CLI::IsMember({"list", "check"}));
  fixtures->add_option("--dir", fixtures_dir);

  auto* search = app.add_subcommand("search", "ordered extension search");
  SearchArgs sargs;
  search->add_option("--ambient", sargs.ambient, "e.g. PG(4,4)");
  search->add_option("--seed", sargs.seed_path, "starting cap file");
  search->add_option("--target", sargs.target, "size N or range N..M")
      ->required();
  search->add_flag("--quantum", sargs.quantum);
  search->add_flag("--complete-only", sargs.complete_only);
  search->add_flag("--outside-seed-hyperplane", sargs.outside);
  search->add_option("--jobs", sargs.jobs);
  search->add_option("--budget", sargs.budget, "node budget (0 = unlimited)");
  search->add_option("--out", sargs.out_path, "append JSONL records here");
  search->add_option("--resume", sargs.resume_path,
                     "skip branches already recorded in this JSONL file");
  search->add_flag("--certify", sargs.certify,
                   "exit 0 only if the search completes with zero hits");

  auto* classifyCmd = app.add_subcommand("classify", "classes up to PGammaL");
  std::string cl_ambient = "PG(4,4)";
  int cl_size = 0;
  bool cl_quantum = false;
  std::vector<std::string> cl_seeds;
  int cl_jobs = default_jobs();
  std::uint64_t cl_budget = 0;
  std::string cl_out_dir;
  classifyCmd->add_option("--ambient", cl_ambient);
  classifyCmd->add_option("--size", cl_size)->required();
  classifyCmd->add_flag("--quantum", cl_quantum);
  classifyCmd->add_option("--seed", cl_seeds,
                          "seed class representatives (repeatable)");
  classifyCmd->add_option("--jobs", cl_jobs);
  classifyCmd->add_option("--budget", cl_budget);
  classifyCmd->add_option("--out-dir", cl_out_dir,
                          "write one .cap file per class representative");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(verify_file, as_json, include_zero);
    if (*weights) return cmd_weights(weights_file, as_json, include_zero);
    if (*bcheck) return cmd_binary_check(bcheck_file, bcheck_jobs, as_json);
    if (*equiv) return cmd_equiv(equiv_a, equiv_b, pgl_only, equiv_jobs, as_json);
    if (*stab) return cmd_stabilizer(stab_file, pgl_only, stab_jobs, as_json);
    if (*fixtures) return cmd_fixtures(fixtures_mode, fixtures_dir);
    if (*search) return cmd_search(sargs);
    if (*classifyCmd)
      return cmd_classify(cl_ambient, cl_size, cl_quantum, cl_seeds, cl_jobs,
                          cl_budget, cl_out_dir, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
