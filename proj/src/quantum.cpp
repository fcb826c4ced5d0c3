#include "qcaps/quantum.hpp"

#include <algorithm>

namespace qcaps {

namespace {

// Columns gathered as fixed-width arrays for tight loops.
std::vector<std::array<Gf, 10>> gather(const ProjSpace& space,
                                       std::span<const int> pts) {
  std::vector<std::array<Gf, 10>> cols(pts.size());
  const int m = space.dim() + 1;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const Coords& c = space.coords_of(pts[j]);
    for (int i = 0; i < m; ++i) cols[j][i] = c[i];
  }
  return cols;
}

// Reduce v against an echelon basis; insert if independent.  Returns true
// if v extended the basis.
bool echelon_insert(std::vector<Coords>& basis, Coords v) {
  const int m = static_cast<int>(v.size());
  for (int p = 0; p < m; ++p) {
    if (v[p] == 0) continue;
    if (basis[p].empty()) {
      Gf iv = gf_inv(v[p]);
      for (Gf& x : v) x = gf_mul(iv, x);
      basis[p] = std::move(v);
      return true;
    }
    Gf f = v[p];
    for (int k = 0; k < m; ++k) v[k] = gf_add(v[k], gf_mul(f, basis[p][k]));
  }
  return false;
}

}  // namespace

WeightDistribution weight_distribution(const ProjSpace& space,
                                       std::span<const int> pts) {
  if (space.q() != 4) throw Error("weight distribution is defined over GF(4)");
  const int m = space.dim() + 1;
  const int n = static_cast<int>(pts.size());
  auto cols = gather(space, pts);
  long total = 1;
  for (int i = 0; i < m; ++i) total *= 4;

  WeightDistribution wd;
  std::array<Gf, 10> x{};
  for (long code = 1; code < total; ++code) {
    long c = code;
    for (int i = 0; i < m; ++i) {
      x[i] = static_cast<Gf>(c & 3);
      c >>= 2;
    }
    int w = 0;
    for (int j = 0; j < n; ++j) {
      Gf dot = 0;
      for (int i = 0; i < m; ++i) dot = gf_add(dot, gf_mul(x[i], cols[j][i]));
      w += dot != 0;
    }
    ++wd[w];
  }
  return wd;
}

bool all_weights_even(const WeightDistribution& wd) {
  for (const auto& [w, count] : wd)
    if (count > 0 && (w & 1)) return false;
  return true;
}

std::vector<int> hyperplane_profile(const ProjSpace& space,
                                    std::span<const int> pts) {
  const int m = space.dim() + 1;
  auto cols = gather(space, pts);
  std::vector<int> profile(space.point_count());
  for (int h = 0; h < space.point_count(); ++h) {
    const Coords& normal = space.coords_of(h);
    int cnt = 0;
    for (const auto& col : cols) {
      Gf dot = 0;
      for (int i = 0; i < m; ++i) dot = gf_add(dot, gf_mul(normal[i], col[i]));
      cnt += dot == 0;
    }
    profile[h] = cnt;
  }
  return profile;
}

bool hyperplane_parity_ok(const ProjSpace& space, std::span<const int> pts) {
  const int n = static_cast<int>(pts.size());
  for (int c : hyperplane_profile(space, pts))
    if ((c ^ n) & 1) return false;
  return true;
}

bool hermitian_self_orthogonal(const ProjSpace& space,
                               std::span<const int> pts) {
  if (space.q() != 4) throw Error("Hermitian form is defined over GF(4)");
  const int m = space.dim() + 1;
  auto cols = gather(space, pts);
  for (int i = 0; i < m; ++i)
    for (int l = i; l < m; ++l) {
      Gf s = 0;
      for (const auto& col : cols) s = gf_add(s, gf_mul(col[i], gf_conj(col[l])));
      if (s) return false;
    }
  return true;
}

int rank_of(const ProjSpace& space, std::span<const int> pts) {
  const int m = space.dim() + 1;
  std::vector<Coords> basis(m);
  int r = 0;
  for (int p : pts)
    if (echelon_insert(basis, space.coords_of(p))) ++r;
  return r;
}

int strength(const ProjSpace& space, std::span<const int> pts) {
  const int m = space.dim() + 1;
  const int n = static_cast<int>(pts.size());
  if (n == 0) throw Error("strength of the empty set is undefined");
  const int tmax = std::min(n, m);
  for (int s = 1; s <= tmax; ++s) {
    // every s-subset independent?
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      std::vector<Coords> basis(m);
      int r = 0;
      for (int i : idx)
        if (echelon_insert(basis, space.coords_of(pts[i]))) ++r;
      if (r < s) return s - 1;
      int pos = s - 1;
      while (pos >= 0 && idx[pos] == n - s + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return tmax;
}

CodeParams code_params(const Cap& cap) {
  const ProjSpace& space = cap.space();
  if (space.q() != 4) throw Error("code parameters are defined over GF(4)");
  const int m = space.dim() + 1;
  std::vector<int> pts(cap.points().begin(), cap.points().end());
  if (rank_of(space, pts) != m) throw NotQuantumError("rank");
  if (!all_weights_even(weight_distribution(space, pts)))
    throw NotQuantumError("all_weights_even");
  if (!hyperplane_parity_ok(space, pts))
    throw NotQuantumError("hyperplane_parity_ok");
  if (!hermitian_self_orthogonal(space, pts))
    throw NotQuantumError("hermitian_self_orthogonal");
  int t = strength(space, pts);
  if (t != 3) throw NotQuantumError("strength");
  CodeParams p;
  p.n = cap.size();
  p.k = p.n - 2 * m;
  p.d = t + 1;
  p.pure = true;
  p.strength = t;
  return p;
}

}  // namespace qcaps
