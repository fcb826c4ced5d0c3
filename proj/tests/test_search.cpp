#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "qcaps/quantum.hpp"
#include "qcaps/search.hpp"
#include "qcaps/search_io.hpp"

using namespace qcaps;

namespace {

std::set<std::vector<std::uint16_t>> collect(SearchConfig cfg) {
  std::set<std::vector<std::uint16_t>> out;
  cfg.emit = [&](const Cap& c) { out.insert(c.points()); };
  run_search(cfg);
  return out;
}

// Elliptic quadric x0 x1 = x2^2 + x2 x3 + w x3^2: an ovoid of PG(3,4).
Cap ovoid17(const ProjSpace& s) {
  std::vector<int> pts;
  for (int p = 0; p < s.point_count(); ++p) {
    const Coords& c = s.coords_of(p);
    Gf lhs = gf_mul(c[0], c[1]);
    Gf rhs = gf_add(gf_add(gf_mul(c[2], c[2]), gf_mul(c[2], c[3])),
                    gf_mul(2, gf_mul(c[3], c[3])));
    if (lhs == rhs) pts.push_back(p);
  }
  return make_cap(s, pts);
}

}  // namespace

TEST_CASE("embed_seed") {
  const ProjSpace& s3 = testutil::space(3, 4);
  const ProjSpace& s4 = testutil::space(4, 4);

  SUBCASE("an ovoid embeds as an incomplete 17-cap") {
    Cap ov = ovoid17(s3);
    REQUIRE(ov.size() == 17);
    CHECK(is_complete(ov));
    Cap lifted = embed_seed(ov, s4);
    CHECK(lifted.size() == 17);
    CHECK(!is_complete(lifted));
    // the hyperplane section x4 = 0 equals the seed
    for (int p : lifted.points()) CHECK(s4.coords_of(p)[4] == 0);
  }

  SUBCASE("empty seed embeds to the empty cap") {
    CHECK(embed_seed(Cap(s3), s4).size() == 0);
  }

  SUBCASE("dimension mismatch is an error") {
    CHECK_THROWS_AS(embed_seed(Cap(testutil::space(2, 4)), s4), Error);
  }
}

TEST_CASE("allowed_seed_sizes") {
  std::vector<int> available;
  for (int s = 1; s <= 17; ++s) available.push_back(s);

  SeedConstraint c;
  c.bounds = {{37, 5, 25}, {39, 5, 27}, {19, 5, 11}};

  SUBCASE("n = 37 and 39: sections of at least 12, odd sizes only") {
    c.require_quantum = true;
    c.target_n = 37;
    CHECK(allowed_seed_sizes(c, available) == std::vector<int>{13, 15, 17});
    c.target_n = 39;
    CHECK(allowed_seed_sizes(c, available) == std::vector<int>{13, 15, 17});
  }

  SUBCASE("n = 19 completeness search: minimum section 8") {
    c.require_quantum = false;
    c.target_n = 19;
    std::vector<int> got = allowed_seed_sizes(c, available);
    REQUIRE(!got.empty());
    CHECK(got.front() == 8);
    CHECK(got.back() == 17);
    CHECK(got.size() == 10);
  }

  SUBCASE("an unconstraining bound keeps every size") {
    SeedConstraint free;
    free.target_n = 10;
    free.bounds = {{10, 5, 10}};
    CHECK(allowed_seed_sizes(free, available) == available);
  }

  SUBCASE("missing bound entry is an error") {
    c.target_n = 23;
    CHECK_THROWS_AS(allowed_seed_sizes(c, available), Error);
  }
}

TEST_CASE("shipped configuration fixtures drive the seed filter") {
  auto slurp = [](const std::string& name) {
    std::ifstream in(testutil::fixture_path(name));
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto bounds = nlohmann::json::parse(slurp("codetable_bounds.json"));
  SeedConstraint c;
  for (const auto& b : bounds["bounds"])
    c.bounds.push_back({b["n"], b["k"], b["max_d"]});
  c.require_quantum = true;
  c.target_n = 37;
  auto census = nlohmann::json::parse(slurp("pg34_census.json"));
  std::vector<int> available;
  long total_classes = 0;
  for (const auto& cl : census["classes"]) {
    available.push_back(cl["size"]);
    total_classes += cl["complete"].get<int>() + cl["incomplete"].get<int>();
  }
  CHECK(allowed_seed_sizes(c, available) == std::vector<int>{13, 15, 17});
  CHECK(total_classes == 6);  // 1+3 at 13, 0+1 at 15, 1+0 at 17
}

TEST_CASE("search finds the fixture cap from its first nine columns") {
  const ProjSpace& s = testutil::space(4, 4);
  CapFile f = testutil::load_fixture("10cap1");
  std::vector<int> pts = file_points(f, s);
  std::vector<int> nine(pts.begin(), pts.begin() + 9);

  SearchConfig cfg;
  cfg.space = &s;
  cfg.seed = make_cap(s, nine);
  cfg.target_min = cfg.target_max = 10;
  cfg.require_quantum = true;
  auto hits = collect(cfg);
  std::vector<std::uint16_t> want(testutil::fixture_cap("10cap1").points());
  CHECK(hits.count(want) == 1);
  for (const auto& h : hits) {
    std::vector<int> hp(h.begin(), h.end());
    CHECK(is_cap(s, hp));
    CHECK(hyperplane_parity_ok(s, hp));
  }
}

TEST_CASE("target sizes beyond the known maximum yield an empty stream") {
  const ProjSpace& s = testutil::space(4, 4);
  SearchConfig cfg;
  cfg.space = &s;
  cfg.target_min = cfg.target_max = 42;
  std::uint64_t emitted = 0;
  cfg.emit = [&](const Cap&) { ++emitted; };
  SearchStats st = run_search(cfg);
  CHECK(st.completed);
  CHECK(st.hits == 0);
  CHECK(st.nodes == 0);
  CHECK(emitted == 0);
}

TEST_CASE("PG(2,4) oracle agreement for sizes up to 7") {
  const ProjSpace& s = testutil::space(2, 4);
  const int N = s.point_count();

  // brute-force oracle over all subsets of size <= 7
  std::vector<std::set<std::vector<std::uint16_t>>> oracle_caps(8);
  std::vector<std::set<std::vector<std::uint16_t>>> oracle_quantum(8);
  std::vector<int> subset;
  auto rec = [&](auto&& self, int start) -> void {
    if (subset.size() >= 1 && subset.size() <= 7) {
      std::vector<int> pts(subset.begin(), subset.end());
      bool cap = true;
      // direct 3-subset scan
      for (std::size_t i = 0; i < pts.size() && cap; ++i)
        for (std::size_t j = i + 1; j < pts.size() && cap; ++j) {
          const std::uint16_t* o = s.others_on_line(pts[i], pts[j]);
          for (std::size_t k = j + 1; k < pts.size() && cap; ++k)
            for (int t = 0; t < 3; ++t)
              if (o[t] == pts[k]) cap = false;
        }
      if (cap) {
        std::vector<std::uint16_t> key(pts.begin(), pts.end());
        oracle_caps[pts.size()].insert(key);
        if (hyperplane_parity_ok(s, pts)) oracle_quantum[pts.size()].insert(key);
      }
    }
    if (subset.size() == 7) return;
    for (int p = start; p < N; ++p) {
      subset.push_back(p);
      self(self, p + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);

  // search per size
  for (int size = 1; size <= 7; ++size) {
    CAPTURE(size);
    SearchConfig cfg;
    cfg.space = &s;
    cfg.target_min = cfg.target_max = size;
    CHECK(collect(cfg) == oracle_caps[size]);
    cfg.require_quantum = true;
    CHECK(collect(cfg) == oracle_quantum[size]);
  }

  // hyperoval facts: quantum caps exist only at size 6; no 7-caps at all
  for (int size = 1; size <= 5; ++size) CHECK(oracle_quantum[size].empty());
  CHECK(!oracle_quantum[6].empty());
  CHECK(oracle_caps[7].empty());

  Certificate cert = nonexistence(s, 7, false);
  CHECK(cert.verdict);
  CHECK(cert.stats.nodes > 0);
  Certificate cert6 = nonexistence(s, 6, true);
  CHECK(!cert6.verdict);  // hyperovals exist
}

TEST_CASE("candidate bitsets equal recomputation from scratch") {
  const ProjSpace& s = testutil::space(2, 4);
  SearchConfig cfg;
  cfg.space = &s;
  cfg.target_min = 1;
  cfg.target_max = 6;
  int sampled = 0;
  cfg.observe = [&](const SearchNode& node) {
    if (++sampled % 37 != 0) return;  // sample
    PointSet expect = s.full_set();
    expect.and_not(node.cap->covered());
    expect.clear_upto(node.last_index);
    CHECK(*node.candidates == expect);
  };
  run_search(cfg);
  CHECK(sampled > 0);
}

TEST_CASE("single-worker runs are deterministic; workers emit the same set") {
  const ProjSpace& s = testutil::space(2, 4);
  SearchConfig cfg;
  cfg.space = &s;
  cfg.target_min = 5;
  cfg.target_max = 6;

  std::vector<std::vector<std::uint16_t>> order1, order2;
  cfg.emit = [&](const Cap& c) { order1.push_back(c.points()); };
  run_search(cfg);
  cfg.emit = [&](const Cap& c) { order2.push_back(c.points()); };
  run_search(cfg);
  CHECK(order1 == order2);

  cfg.jobs = 4;
  std::set<std::vector<std::uint16_t>> par;
  std::mutex mu;
  cfg.emit = [&](const Cap& c) {
    std::lock_guard<std::mutex> lk(mu);
    par.insert(c.points());
  };
  run_search(cfg);
  CHECK(par == std::set<std::vector<std::uint16_t>>(order1.begin(), order1.end()));
}

TEST_CASE("budget exhaustion is reported distinctly") {
  const ProjSpace& s = testutil::space(2, 4);
  SearchConfig cfg;
  cfg.space = &s;
  cfg.target_min = 1;
  cfg.target_max = 6;
  cfg.node_budget = 50;
  SearchStats st = run_search(cfg);
  CHECK(!st.completed);
  CHECK(st.nodes <= 50);
  CHECK_THROWS_AS(nonexistence(s, 6, false, {1, 50}), Error);
}

TEST_CASE("classification of PG(2,4) hyperovals") {
  const ProjSpace& s = testutil::space(2, 4);
  std::vector<CapClass> classes = classify(s, 6, true);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].rep.size() == 6);
  CHECK(classes[0].count == 168);  // every labeled hyperoval collapses

  SUBCASE("seed decomposition finds the same class") {
    // hyperplane sections of a hyperoval are even; seed with the unique
    // 2-point class inside the line x2 = 0
    const ProjSpace& s1 = testutil::space(1, 4);
    Cap seed(s1);
    seed = seed.with_point(0).with_point(1);
    std::vector<Cap> seeds{seed};
    std::vector<CapClass> viaSeeds = classify_from_seeds(s, seeds, 6, true);
    REQUIRE(viaSeeds.size() == 1);
    CHECK(are_equivalent(viaSeeds[0].rep, classes[0].rep, true).has_value());
  }
}

TEST_CASE("resumable search reproduces the one-shot run") {
  namespace fs = std::filesystem;
  const ProjSpace& s = testutil::space(2, 4);
  fs::path dir = fs::temp_directory_path() / "qcaps_test_io";
  fs::create_directories(dir);
  fs::path full = dir / "full.jsonl";
  fs::path part = dir / "part.jsonl";
  fs::remove(full);
  fs::remove(part);

  SearchConfig cfg;
  cfg.space = &s;
  cfg.target_min = 6;
  cfg.target_max = 6;
  cfg.require_quantum = true;

  PersistedSearch one = run_search_to_file(cfg, full.string());
  CHECK(one.stats.completed);
  CHECK(one.caps_written == one.stats.hits);

  // interrupted run: small budget, then resume without a budget
  cfg.node_budget = 400;
  run_search_to_file(cfg, part.string());
  cfg.node_budget = 0;
  run_search_to_file(cfg, part.string(), part.string());

  // The branch interrupted by the budget is replayed on resume, so its
  // caps may be recorded twice; compare the distinct cap sets.
  auto caps_in = [](const fs::path& p) {
    std::multiset<std::string> caps;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line))
      if (line.find("\"type\":\"cap\"") != std::string::npos)
        caps.insert(line.substr(line.find("\"cols\"")));
    return caps;
  };
  auto a = caps_in(full), b = caps_in(part);
  CHECK(!a.empty());
  CHECK(a.size() == std::set<std::string>(a.begin(), a.end()).size());
  CHECK(std::set<std::string>(a.begin(), a.end()) ==
        std::set<std::string>(b.begin(), b.end()));
}
