#pragma once

#include <map>
#include <span>

#include "qcaps/caps.hpp"

namespace qcaps {

// weight -> number of codewords of that weight, the zero word excluded.
// Counts run over all q^m - 1 nonzero coefficient vectors of the rows of
// the point matrix (1023 for PG(4,4)), so each count is divisible by 3.
using WeightDistribution = std::map<int, long>;

WeightDistribution weight_distribution(const ProjSpace& space,
                                       std::span<const int> pts);

bool all_weights_even(const WeightDistribution& wd);

// |H ∩ S| has the same parity as |S| for every hyperplane H.
bool hyperplane_parity_ok(const ProjSpace& space, std::span<const int> pts);

// Every pair of rows u, v of the point matrix (u = v included) satisfies
// sum_i u_i * conj(v_i) = 0.
bool hermitian_self_orthogonal(const ProjSpace& space, std::span<const int> pts);

// Rank over GF(q) of the (dim+1) x n point matrix.
int rank_of(const ProjSpace& space, std::span<const int> pts);

// Largest t such that every t columns are linearly independent.
int strength(const ProjSpace& space, std::span<const int> pts);

// |H ∩ S| for every hyperplane, indexed like the space's own points
// (a hyperplane's normal vector is a point of the dual space).
std::vector<int> hyperplane_profile(const ProjSpace& space,
                                    std::span<const int> pts);

struct CodeParams {
  int n = 0;
  int k = 0;  // n - 2(dim+1); n - 10 in PG(4,4)
  int d = 0;
  bool pure = true;
  int strength = 0;
};

// Parameters of the quantum code generated by the cap.  Throws
// NotQuantumError naming the first failing check: "rank" for a
// non-spanning matrix, then "all_weights_even", "hyperplane_parity_ok",
// "hermitian_self_orthogonal", "strength".
CodeParams code_params(const Cap& cap);

// Convenience overloads.
inline WeightDistribution weight_distribution(const Cap& c) {
  std::vector<int> p(c.points().begin(), c.points().end());
  return weight_distribution(c.space(), p);
}
inline bool hyperplane_parity_ok(const Cap& c) {
  std::vector<int> p(c.points().begin(), c.points().end());
  return hyperplane_parity_ok(c.space(), p);
}
inline bool hermitian_self_orthogonal(const Cap& c) {
  std::vector<int> p(c.points().begin(), c.points().end());
  return hermitian_self_orthogonal(c.space(), p);
}
inline int rank_of(const Cap& c) {
  std::vector<int> p(c.points().begin(), c.points().end());
  return rank_of(c.space(), p);
}
inline int strength(const Cap& c) {
  std::vector<int> p(c.points().begin(), c.points().end());
  return strength(c.space(), p);
}

}  // namespace qcaps
