#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qcaps/binary.hpp"
#include "qcaps/quantum.hpp"

using namespace qcaps;

namespace {

// Expected weight tables, transcribed digit for digit.
const std::map<std::string, WeightDistribution>& expected_weights() {
  static const std::map<std::string, WeightDistribution> tables = {
      {"10cap1", {{4, 30}, {6, 300}, {8, 585}, {10, 108}}},
      {"10cap2", {{4, 30}, {6, 300}, {8, 585}, {10, 108}}},
      {"12cap1", {{6, 84}, {8, 405}, {10, 468}, {12, 66}}},
      {"12cap2", {{4, 6}, {6, 60}, {8, 441}, {10, 444}, {12, 72}}},
      {"12cap3", {{4, 6}, {6, 60}, {8, 441}, {10, 444}, {12, 72}}},
      {"12cap4", {{4, 9}, {6, 48}, {8, 459}, {10, 432}, {12, 75}}},
      {"12cap5", {{4, 18}, {6, 12}, {8, 513}, {10, 396}, {12, 84}}},
      {"20cap", {{8, 3}, {12, 117}, {14, 432}, {16, 312}, {18, 144}, {20, 15}}},
      {"29cap1",
       {{12, 3}, {18, 42}, {20, 360}, {22, 420}, {24, 81}, {26, 90}, {28, 27}}},
      {"29cap2",
       {{16, 6}, {18, 57}, {20, 348}, {22, 366}, {24, 159}, {26, 57}, {28, 30}}},
      {"30cap",
       {{14, 3}, {20, 258}, {22, 438}, {24, 165}, {26, 108}, {28, 48}, {30, 3}}},
      {"32cap",
       {{16, 3}, {20, 39}, {22, 312}, {24, 429}, {26, 120}, {28, 69}, {30, 48}, {32, 3}}},
      {"33cap1",
       {{18, 3}, {20, 6}, {22, 204}, {24, 435}, {26, 219}, {28, 84}, {30, 54}, {32, 18}}},
      {"33cap2",
       {{16, 3}, {20, 27}, {22, 108}, {24, 573}, {26, 144}, {28, 105}, {30, 36}, {32, 27}}},
      {"33cap3",
       {{16, 3}, {20, 18}, {22, 144}, {24, 516}, {26, 192}, {28, 78}, {30, 48}, {32, 24}}},
      {"36cap1",
       {{20, 6}, {24, 138}, {26, 492}, {28, 234}, {30, 48}, {32, 69}, {34, 36}}},
      {"36cap2",
       {{20, 6}, {22, 6}, {24, 120}, {26, 510}, {28, 222}, {30, 66}, {32, 51}, {34, 42}}},
      {"38cap",
       {{22, 6}, {24, 12}, {26, 288}, {28, 288}, {30, 372}, {32, 3}, {36, 48}, {38, 6}}},
  };
  return tables;
}

std::vector<int> basis_columns(const ProjSpace& s) {
  std::vector<int> pts;
  for (int i = 0; i < 5; ++i) {
    Coords c(5, 0);
    c[i] = 1;
    pts.push_back(s.index_of(c));
  }
  return pts;
}

// Random distinct points with full-rank matrix, sizes 5..20.
std::vector<int> random_rank5_subset(const ProjSpace& s, std::mt19937& rng,
                                     int size) {
  for (;;) {
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < size)
      chosen.insert(static_cast<int>(rng() % s.point_count()));
    std::vector<int> pts(chosen.begin(), chosen.end());
    if (rank_of(s, pts) == 5) return pts;
  }
}

}  // namespace

TEST_CASE("weight distributions match the published tables exactly") {
  for (const auto& [name, want] : expected_weights()) {
    CAPTURE(name);
    Cap cap = testutil::fixture_cap(name);
    WeightDistribution got = weight_distribution(cap);
    CHECK(got == want);
    long sum = 0;
    for (const auto& [w, c] : got) {
      sum += c;
      CHECK(c % 3 == 0);
    }
    CHECK(sum == 1023);
  }
}

TEST_CASE("weight distribution of the five standard basis columns") {
  const ProjSpace& s = testutil::space(4, 4);
  // C(5,w) * 3^w codewords of weight w: the identity matrix sends the
  // coefficient vector straight to the codeword.
  WeightDistribution want;
  long binom[6] = {1, 5, 10, 10, 5, 1};
  long pw = 1;
  for (int w = 1; w <= 5; ++w) {
    pw *= 3;
    want[w] = binom[w] * pw;
  }
  CHECK(weight_distribution(s, basis_columns(s)) == want);
  CHECK(!all_weights_even(want));
}

TEST_CASE("weight distribution invariance under permutation and rescaling") {
  const ProjSpace& s = testutil::space(4, 4);
  std::vector<int> pts = testutil::fixture_points("12cap5");
  WeightDistribution base = weight_distribution(s, pts);
  std::mt19937 rng(11);
  std::shuffle(pts.begin(), pts.end(), rng);
  CHECK(weight_distribution(s, pts) == base);
  // rescaling a column changes nothing: points are scale classes already,
  // so rescale the coefficient side instead via a different representative
  // ordering; permutation covers the claim at the point level.
}

TEST_CASE("hyperplane parity") {
  CHECK(hyperplane_parity_ok(testutil::fixture_cap("10cap1")));
  CHECK(hyperplane_parity_ok(testutil::fixture_cap("32cap")));
  const ProjSpace& s = testutil::space(4, 4);
  std::vector<int> single{0};
  CHECK(!hyperplane_parity_ok(s, single));
}

TEST_CASE("all_weights_even") {
  CHECK(all_weights_even({{4, 30}, {6, 300}, {8, 585}, {10, 108}}));
  CHECK(!all_weights_even({{1, 15}, {2, 90}, {3, 270}, {4, 405}, {5, 243}}));
  CHECK(all_weights_even({}));
}

TEST_CASE("hermitian self orthogonality") {
  CHECK(hermitian_self_orthogonal(testutil::fixture_cap("10cap2")));
  CHECK(hermitian_self_orthogonal(testutil::fixture_cap("36cap1")));
  const ProjSpace& s = testutil::space(4, 4);
  CHECK(!hermitian_self_orthogonal(s, basis_columns(s)));
}

TEST_CASE("strength") {
  const ProjSpace& s = testutil::space(4, 4);

  SUBCASE("fixture cap has strength 3, confirmed by an independent scan") {
    std::vector<int> pts = testutil::fixture_points("10cap1");
    CHECK(strength(s, pts) == 3);
    // oracle: all 3-subsets independent, some 4-subset dependent
    const int n = static_cast<int>(pts.size());
    bool all3 = true;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          std::vector<int> sub{pts[a], pts[b], pts[c]};
          all3 = all3 && rank_of(s, sub) == 3;
        }
    CHECK(all3);
    bool some4 = false;
    for (int a = 0; a < n && !some4; ++a)
      for (int b = a + 1; b < n && !some4; ++b)
        for (int c = b + 1; c < n && !some4; ++c)
          for (int d = c + 1; d < n && !some4; ++d) {
            std::vector<int> sub{pts[a], pts[b], pts[c], pts[d]};
            some4 = rank_of(s, sub) < 4;
          }
    CHECK(some4);
  }

  SUBCASE("basis columns have strength 5") {
    CHECK(strength(s, basis_columns(s)) == 5);
  }

  SUBCASE("collinear triple has strength 2") {
    std::vector<int> pts{s.index_of({1, 0, 0, 0, 0}), s.index_of({0, 1, 0, 0, 0}),
                         s.index_of({1, 1, 0, 0, 0})};
    CHECK(strength(s, pts) == 2);
  }
}

TEST_CASE("code parameters") {
  CodeParams p = code_params(testutil::fixture_cap("20cap"));
  CHECK(p.n == 20);
  CHECK(p.k == 10);
  CHECK(p.d == 4);
  CHECK(p.pure);
  CHECK(p.strength == 3);

  CodeParams p29 = code_params(testutil::fixture_cap("29cap1"));
  CHECK(p29.n == 29);
  CHECK(p29.k == 19);
  CHECK(p29.d == 4);

  for (const auto& [name, complete] : testutil::fixture_list()) {
    Cap cap = testutil::fixture_cap(name);
    CHECK(code_params(cap).k == cap.size() - 10);
  }

  SUBCASE("basis columns fail even weights") {
    const ProjSpace& s = testutil::space(4, 4);
    Cap cap = make_cap(s, basis_columns(s));
    CHECK_THROWS_WITH_AS(code_params(cap),
                         "not a quantum cap: fails all_weights_even",
                         NotQuantumError);
  }

  SUBCASE("rank-deficient input gets a distinct error") {
    const ProjSpace& s = testutil::space(4, 4);
    std::vector<int> planar{s.index_of({1, 0, 0, 0, 0}), s.index_of({0, 1, 0, 0, 0}),
                            s.index_of({0, 0, 1, 0, 0}), s.index_of({1, 1, 1, 0, 0})};
    Cap cap = make_cap(s, planar);
    try {
      code_params(cap);
      CHECK(false);
    } catch (const NotQuantumError& e) {
      CHECK(e.predicate == "rank");
    }
  }
}

TEST_CASE("characterization equivalence on fixtures and random subsets") {
  const ProjSpace& s = testutil::space(4, 4);
  auto check_agreement = [&](const std::vector<int>& pts) {
    bool parity = hyperplane_parity_ok(s, pts);
    bool even = all_weights_even(weight_distribution(s, pts));
    bool herm = hermitian_self_orthogonal(s, pts);
    CHECK(parity == even);
    CHECK(even == herm);
    if (rank_of(s, pts) == 5) {
      BinaryExpansion e = expand_to_binary(s, pts);
      CHECK(symplectic_self_orthogonal(e.rows) == parity);
    }
  };
  for (const auto& [name, complete] : testutil::fixture_list())
    check_agreement(testutil::fixture_points(name));
  std::mt19937 rng(20250810);
  for (int trial = 0; trial < 200; ++trial) {
    int size = 5 + static_cast<int>(rng() % 16);
    check_agreement(random_rank5_subset(s, rng, size));
  }
}

TEST_CASE("hyperplane/weight duality for full-rank caps") {
  const ProjSpace& s = testutil::space(4, 4);
  for (const std::string name : {"10cap1", "20cap", "38cap"}) {
    std::vector<int> pts = testutil::fixture_points(name);
    const int n = static_cast<int>(pts.size());
    WeightDistribution wd = weight_distribution(s, pts);
    std::vector<int> prof = hyperplane_profile(s, pts);
    for (const auto& [w, count] : wd) {
      long hyperplanes = 0;
      for (int c : prof) hyperplanes += c == n - w;
      CHECK(count == 3 * hyperplanes);
    }
  }
}
