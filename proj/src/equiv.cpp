#include "qcaps/equiv.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "qcaps/quantum.hpp"

namespace qcaps {

Mat mat_identity(int m) {
  Mat I;
  I.m = m;
  for (int i = 0; i < m; ++i) I.at(i, i) = 1;
  return I;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  Mat C;
  C.m = A.m;
  for (int i = 0; i < A.m; ++i)
    for (int j = 0; j < A.m; ++j) {
      Gf s = 0;
      for (int k = 0; k < A.m; ++k)
        s = gf_add(s, gf_mul(A.at(i, k), B.at(k, j)));
      C.at(i, j) = s;
    }
  return C;
}

std::optional<Mat> mat_inverse(const Mat& A) {
  const int m = A.m;
  Mat W = A, I = mat_identity(m);
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (W.at(r, col)) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < m; ++j) {
        std::swap(W.a[piv * m + j], W.a[col * m + j]);
        std::swap(I.a[piv * m + j], I.a[col * m + j]);
      }
    Gf iv = gf_inv(W.at(col, col));
    for (int j = 0; j < m; ++j) {
      W.at(col, j) = gf_mul(iv, W.at(col, j));
      I.at(col, j) = gf_mul(iv, I.at(col, j));
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      Gf f = W.at(r, col);
      if (!f) continue;
      for (int j = 0; j < m; ++j) {
        W.at(r, j) = gf_add(W.at(r, j), gf_mul(f, W.at(col, j)));
        I.at(r, j) = gf_add(I.at(r, j), gf_mul(f, I.at(col, j)));
      }
    }
  }
  return I;
}

Mat mat_conj(const Mat& A) {
  Mat C = A;
  for (int i = 0; i < A.m * A.m; ++i) C.a[i] = gf_conj(C.a[i]);
  return C;
}

void mat_normalize(Mat& A) {
  for (int i = 0; i < A.m * A.m; ++i) {
    if (!A.a[i]) continue;
    if (A.a[i] != 1) {
      Gf iv = gf_inv(A.a[i]);
      for (int j = 0; j < A.m * A.m; ++j) A.a[j] = gf_mul(iv, A.a[j]);
    }
    return;
  }
}

Collineation identity_collineation(int m) { return {mat_identity(m), false}; }

Collineation compose(const Collineation& second, const Collineation& first) {
  // p -> conj^f2(conj^f1(p) M1) M2 = conj^(f1^f2)(p) conj^f2(M1) M2
  Collineation c;
  c.frobenius = second.frobenius != first.frobenius;
  Mat M1 = second.frobenius ? mat_conj(first.mat) : first.mat;
  c.mat = mat_mul(M1, second.mat);
  mat_normalize(c.mat);
  return c;
}

Collineation inverse(const Collineation& c) {
  auto inv = mat_inverse(c.mat);
  if (!inv) throw Error("singular matrix");
  Collineation r;
  r.frobenius = c.frobenius;
  r.mat = c.frobenius ? mat_conj(*inv) : *inv;
  mat_normalize(r.mat);
  return r;
}

namespace {

using Vec = std::array<Gf, 5>;

Vec vec_of(const Coords& c) {
  Vec v{};
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i];
  return v;
}

Vec row_times_mat(const Vec& v, const Mat& M) {
  Vec r{};
  for (int j = 0; j < M.m; ++j) {
    Gf s = 0;
    for (int i = 0; i < M.m; ++i) s = gf_add(s, gf_mul(v[i], M.at(i, j)));
    r[j] = s;
  }
  return r;
}

int image_index(const Vec& v, const ProjSpace& space) {
  Coords c(space.dim() + 1);
  for (int i = 0; i <= space.dim(); ++i) c[i] = v[i];
  return space.index_of(normalized(std::move(c)));
}

// Row-echelon tracker for prefix independence (copied per DFS level).
struct Echelon {
  int m = 0, r = 0;
  std::array<Vec, 5> rows{};
  std::array<int, 5> piv{};
  bool try_insert(Vec v) {
    for (int i = 0; i < r; ++i) {
      Gf f = v[piv[i]];
      if (!f) continue;
      for (int k = 0; k < m; ++k) v[k] = gf_add(v[k], gf_mul(f, rows[i][k]));
    }
    for (int p = 0; p < m; ++p) {
      if (!v[p]) continue;
      Gf iv = gf_inv(v[p]);
      for (int k = 0; k < m; ++k) v[k] = gf_mul(iv, v[k]);
      rows[r] = v;
      piv[r] = p;
      ++r;
      return true;
    }
    return false;
  }
};

std::vector<std::vector<int>> per_point_profiles(const ProjSpace& space,
                                                 const std::vector<int>& pts) {
  std::vector<int> prof = hyperplane_profile(space, pts);
  const int m = space.dim() + 1;
  std::vector<std::vector<int>> out(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Coords& p = space.coords_of(pts[k]);
    std::vector<int> sub;
    for (int h = 0; h < space.point_count(); ++h) {
      const Coords& normal = space.coords_of(h);
      Gf dot = 0;
      for (int i = 0; i < m; ++i) dot = gf_add(dot, gf_mul(normal[i], p[i]));
      if (dot == 0) sub.push_back(prof[h]);
    }
    std::sort(sub.begin(), sub.end());
    out[k] = std::move(sub);
  }
  return out;
}

// Exhaustive backtracking over images of an independent basis of `a`,
// then the diagonal torus (pinned by an extra cap point where possible).
struct MatrixSearch {
  const ProjSpace& space;
  int m, n;
  std::vector<int> a, b;
  bool collect_all;
  bool frob_flag;
  int jobs;

  PointSet bset;
  std::vector<int> aProfId, bProfId;
  std::vector<std::vector<int>> bByProf;  // profile id -> sorted b points
  std::vector<int> basisSlotPoint;        // slot -> a point id
  std::vector<int> basisSlotProf;         // slot -> profile id
  std::vector<Vec> basisVec;
  Mat Ainv{};
  bool haveExtra = false;
  int extraPoint = -1, extraProfId = -1, s0 = -1;
  Vec u{};
  std::uint8_t uSupport = 0;
  std::vector<Vec> aVecs;  // all a points, checked at the leaf

  std::vector<Collineation> results;
  std::atomic<bool> stop{false};
  std::mutex mu;

  MatrixSearch(const ProjSpace& sp, std::vector<int> aPts, std::vector<int> bPts,
               bool all, bool frob, int jobs_)
      : space(sp),
        m(sp.dim() + 1),
        n(static_cast<int>(aPts.size())),
        a(std::move(aPts)),
        b(std::move(bPts)),
        collect_all(all),
        frob_flag(frob),
        jobs(jobs_ < 1 ? 1 : jobs_),
        bset(sp.point_count()) {}

  bool prepare() {
    for (int p : b) bset.set(p);
    for (int p : a) aVecs.push_back(vec_of(space.coords_of(p)));

    auto aprof = per_point_profiles(space, a);
    auto bprof = per_point_profiles(space, b);
    std::map<std::vector<int>, int> ids;
    auto intern = [&](const std::vector<int>& v) {
      auto [it, _] = ids.emplace(v, static_cast<int>(ids.size()));
      return it->second;
    };
    aProfId.resize(n);
    bProfId.resize(n);
    for (int i = 0; i < n; ++i) aProfId[i] = intern(aprof[i]);
    for (int i = 0; i < n; ++i) bProfId[i] = intern(bprof[i]);
    bByProf.assign(ids.size(), {});
    for (int i = 0; i < n; ++i) bByProf[bProfId[i]].push_back(b[i]);
    for (auto& v : bByProf) std::sort(v.begin(), v.end());
    // profile multisets must match
    {
      std::vector<int> sa = aProfId, sb = bProfId;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return false;
    }

    // basis: rarest profiles first, greedily independent
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      auto cx = bByProf[aProfId[x]].size(), cy = bByProf[aProfId[y]].size();
      if (cx != cy) return cx < cy;
      return a[x] < a[y];
    });
    Echelon ech;
    ech.m = m;
    std::vector<char> inBasis(n, 0);
    for (int i : order) {
      if (static_cast<int>(basisSlotPoint.size()) == m) break;
      if (ech.try_insert(aVecs[i])) {
        basisSlotPoint.push_back(a[i]);
        basisSlotProf.push_back(aProfId[i]);
        basisVec.push_back(aVecs[i]);
        inBasis[i] = 1;
      }
    }
    if (static_cast<int>(basisSlotPoint.size()) < m)
      throw Error("cap does not span its space");

    Mat A;
    A.m = m;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A.at(i, j) = basisVec[i][j];
    Ainv = *mat_inverse(A);

    // extra point: maximal support in basis coordinates
    int bestSupport = -1;
    for (int i = 0; i < n; ++i) {
      if (inBasis[i]) continue;
      Vec x = row_times_mat(aVecs[i], Ainv);
      int sup = 0;
      for (int k = 0; k < m; ++k) sup += x[k] != 0;
      if (sup > bestSupport) {
        bestSupport = sup;
        haveExtra = true;
        extraPoint = a[i];
        extraProfId = aProfId[i];
        u = x;
      }
    }
    if (haveExtra) {
      uSupport = 0;
      for (int k = 0; k < m; ++k)
        if (u[k]) uSupport |= 1 << k;
      s0 = __builtin_ctz(uSupport);
    }
    return true;
  }

  void record(Mat M) {
    mat_normalize(M);
    Collineation c{M, frob_flag};
    std::lock_guard<std::mutex> lk(mu);
    if (!collect_all) {
      if (!results.empty()) return;
      results.push_back(c);
      stop.store(true, std::memory_order_relaxed);
      return;
    }
    results.push_back(c);
  }

  bool check_map(const Mat& M) const {
    for (const Vec& v : aVecs) {
      int idx = image_index(row_times_mat(v, M), space);
      if (idx < 0 || !bset.test(idx)) return false;
    }
    return true;
  }

  // Build M = Ainv * diag(lam) * Brows and test it.
  void try_torus(const std::array<Vec, 5>& imgVec, const Vec& lam) {
    Mat RB;
    RB.m = m;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) RB.at(i, j) = gf_mul(lam[i], imgVec[i][j]);
    Mat M = mat_mul(Ainv, RB);
    if (check_map(M)) record(M);
  }

  void leaf(const std::array<int, 5>& img, const std::array<Vec, 5>& imgVec) {
    Mat B;
    B.m = m;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) B.at(i, j) = imgVec[i][j];
    Mat Binv = *mat_inverse(B);

    if (!haveExtra) {
      // full torus, first scalar gauged to 1
      Vec lam{};
      lam[0] = 1;
      int free = m - 1;
      long total = 1;
      for (int i = 0; i < free; ++i) total *= 3;
      for (long t = 0; t < total; ++t) {
        long c = t;
        for (int i = 1; i < m; ++i) {
          lam[i] = static_cast<Gf>(1 + c % 3);
          c /= 3;
        }
        try_torus(imgVec, lam);
        if (!collect_all && stop.load(std::memory_order_relaxed)) return;
      }
      return;
    }

    for (int cPt : bByProf[extraProfId]) {
      if (!collect_all && stop.load(std::memory_order_relaxed)) return;
      bool used = false;
      for (int i = 0; i < m; ++i) used |= img[i] == cPt;
      if (used) continue;
      Vec xc = row_times_mat(vec_of(space.coords_of(cPt)), Binv);
      std::uint8_t sup = 0;
      for (int k = 0; k < m; ++k)
        if (xc[k]) sup |= 1 << k;
      if (sup != uSupport) continue;
      // lambda on the support, gauged so lam[s0] = 1
      Gf g0 = gf_mul(xc[s0], gf_inv(u[s0]));
      Gf gi = gf_inv(g0);
      Vec lam{};
      for (int k = 0; k < m; ++k)
        if (uSupport & (1 << k))
          lam[k] = gf_mul(gf_mul(xc[k], gf_inv(u[k])), gi);
      // sweep the free positions
      std::vector<int> freePos;
      for (int k = 0; k < m; ++k)
        if (!(uSupport & (1 << k))) freePos.push_back(k);
      long total = 1;
      for (std::size_t i = 0; i < freePos.size(); ++i) total *= 3;
      for (long t = 0; t < total; ++t) {
        long c = t;
        for (int k : freePos) {
          lam[k] = static_cast<Gf>(1 + c % 3);
          c /= 3;
        }
        try_torus(imgVec, lam);
        if (!collect_all && stop.load(std::memory_order_relaxed)) return;
      }
    }
  }

  void dfs(int slot, std::array<int, 5>& img, std::array<Vec, 5>& imgVec,
           const Echelon& ech) {
    if (!collect_all && stop.load(std::memory_order_relaxed)) return;
    if (slot == m) {
      leaf(img, imgVec);
      return;
    }
    for (int cand : bByProf[basisSlotProf[slot]]) {
      bool used = false;
      for (int i = 0; i < slot && i < 5; ++i) used |= img[i] == cand;
      if (used) continue;
      Vec v = vec_of(space.coords_of(cand));
      Echelon next = ech;
      if (!next.try_insert(v)) continue;
      img[slot] = cand;
      imgVec[slot] = v;
      dfs(slot + 1, img, imgVec, next);
      if (!collect_all && stop.load(std::memory_order_relaxed)) return;
    }
  }

  std::vector<Collineation> run() {
    if (!prepare()) return {};
    const std::vector<int>& roots = bByProf[basisSlotProf[0]];

    auto work = [&](int w) {
      for (std::size_t r = w; r < roots.size(); r += jobs) {
        if (!collect_all && stop.load(std::memory_order_relaxed)) return;
        Vec v = vec_of(space.coords_of(roots[r]));
        Echelon ech;
        ech.m = m;
        if (!ech.try_insert(v)) continue;
        std::array<int, 5> img{};
        std::array<Vec, 5> imgVec{};
        img[0] = roots[r];
        imgVec[0] = v;
        dfs(1, img, imgVec, ech);
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    std::sort(results.begin(), results.end(),
              [](const Collineation& x, const Collineation& y) {
                if (x.frobenius != y.frobenius) return x.frobenius < y.frobenius;
                return x.mat.a < y.mat.a;
              });
    results.erase(std::unique(results.begin(), results.end()), results.end());
    return std::move(results);
  }
};

std::vector<int> cap_point_list(const Cap& cap) {
  return std::vector<int>(cap.points().begin(), cap.points().end());
}

std::vector<int> conjugated_points(const ProjSpace& space,
                                   const std::vector<int>& pts) {
  std::vector<int> out;
  out.reserve(pts.size());
  for (int p : pts) {
    Coords c = space.coords_of(p);
    for (Gf& x : c) x = gf_conj(x);
    out.push_back(space.index_of(c));  // conj preserves normalization
  }
  return out;
}

void require_spanning(const Cap& cap) {
  if (cap.space().dim() + 1 > 5)
    throw Error("equivalence machinery supports dimension at most 4");
  if (rank_of(cap) != cap.space().dim() + 1)
    throw Error("cap does not span its space");
}

}  // namespace

int apply_point(const Collineation& c, const ProjSpace& space, int p) {
  Vec v = vec_of(space.coords_of(p));
  if (c.frobenius)
    for (Gf& x : v) x = gf_conj(x);
  return image_index(row_times_mat(v, c.mat), space);
}

Cap apply(const Collineation& c, const Cap& cap) {
  const ProjSpace& space = cap.space();
  if (space.dim() + 1 > 5) throw Error("collineations support dimension at most 4");
  if (c.mat.m != space.dim() + 1) throw Error("collineation dimension mismatch");
  if (!mat_inverse(c.mat)) throw Error("singular matrix");
  std::vector<int> img;
  img.reserve(cap.size());
  for (int p : cap.points()) img.push_back(apply_point(c, space, p));
  return make_cap(space, img);
}

CapSignature signature(const Cap& cap) {
  CapSignature sig;
  sig.n = cap.size();
  std::vector<int> pts = cap_point_list(cap);
  sig.global = hyperplane_profile(cap.space(), pts);
  std::sort(sig.global.begin(), sig.global.end());
  sig.per_point = per_point_profiles(cap.space(), pts);
  return sig;
}

bool CapSignature::equivalent_to(const CapSignature& o) const {
  if (n != o.n || global != o.global) return false;
  auto aa = per_point;
  auto bb = o.per_point;
  std::sort(aa.begin(), aa.end());
  std::sort(bb.begin(), bb.end());
  return aa == bb;
}

std::uint64_t signature_hash(const CapSignature& sig) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(sig.n));
  for (int v : sig.global) mix(static_cast<std::uint64_t>(v) + 0x9e37);
  auto pp = sig.per_point;
  std::sort(pp.begin(), pp.end());
  for (const auto& sub : pp) {
    mix(0xabcdef);
    for (int v : sub) mix(static_cast<std::uint64_t>(v));
  }
  return h;
}

std::optional<Collineation> are_equivalent(const Cap& a, const Cap& b,
                                           bool allow_frobenius, int jobs) {
  if (&a.space() != &b.space() &&
      (a.space().dim() != b.space().dim() || a.space().q() != b.space().q()))
    throw Error("caps live in different spaces");
  require_spanning(a);
  require_spanning(b);
  if (a.size() != b.size()) return std::nullopt;
  if (!signature(a).equivalent_to(signature(b))) return std::nullopt;

  std::vector<int> pa = cap_point_list(a), pb = cap_point_list(b);
  {
    MatrixSearch s(a.space(), pa, pb, /*all=*/false, /*frob=*/false, jobs);
    auto r = s.run();
    if (!r.empty()) return r.front();
  }
  if (allow_frobenius) {
    MatrixSearch s(a.space(), conjugated_points(a.space(), pa), pb,
                   /*all=*/false, /*frob=*/true, jobs);
    auto r = s.run();
    if (!r.empty()) return r.front();
  }
  return std::nullopt;
}

namespace {

std::vector<Collineation> close_under_products(
    const std::vector<Collineation>& gens, int m, std::size_t limit) {
  std::vector<Collineation> span{identity_collineation(m)};
  auto key = [](const Collineation& c) {
    std::array<Gf, 26> k{};
    std::copy(c.mat.a.begin(), c.mat.a.end(), k.begin());
    k[25] = c.frobenius;
    return k;
  };
  std::map<std::array<Gf, 26>, bool> seen;
  seen[key(span[0])] = true;
  for (std::size_t i = 0; i < span.size(); ++i) {
    for (const auto& g : gens) {
      Collineation p = compose(g, span[i]);
      if (seen.emplace(key(p), true).second) {
        span.push_back(p);
        if (span.size() > limit) return span;
      }
    }
  }
  return span;
}

}  // namespace

bool group_closure_ok(std::span<const Collineation> elements) {
  if (elements.empty()) return false;
  auto key = [](const Collineation& c) {
    std::array<Gf, 26> k{};
    std::copy(c.mat.a.begin(), c.mat.a.end(), k.begin());
    k[25] = c.frobenius;
    return k;
  };
  std::map<std::array<Gf, 26>, bool> set;
  for (const auto& e : elements) set[key(e)] = true;
  if (set.size() != elements.size()) return false;
  int m = elements.front().mat.m;
  if (!set.count(key(identity_collineation(m)))) return false;
  for (const auto& e : elements)
    if (!set.count(key(inverse(e)))) return false;
  for (const auto& e : elements)
    for (const auto& f : elements)
      if (!set.count(key(compose(e, f)))) return false;
  return true;
}

StabilizerResult stabilizer(const Cap& cap, bool allow_frobenius, int jobs) {
  require_spanning(cap);
  std::vector<int> pts = cap_point_list(cap);
  StabilizerResult res;
  {
    MatrixSearch s(cap.space(), pts, pts, /*all=*/true, /*frob=*/false, jobs);
    res.elements = s.run();
  }
  if (allow_frobenius) {
    MatrixSearch s(cap.space(), conjugated_points(cap.space(), pts), pts,
                   /*all=*/true, /*frob=*/true, jobs);
    auto tw = s.run();
    res.elements.insert(res.elements.end(), tw.begin(), tw.end());
  }
  res.order = static_cast<long>(res.elements.size());
  if (!group_closure_ok(res.elements))
    throw Error("stabilizer element set is not closed");

  // greedy generating set
  const int m = cap.space().dim() + 1;
  std::vector<Collineation> span{identity_collineation(m)};
  for (const auto& e : res.elements) {
    bool have = false;
    for (const auto& s : span) have |= s == e;
    if (have) continue;
    res.generators.push_back(e);
    span = close_under_products(res.generators, m, res.elements.size());
    if (span.size() == res.elements.size()) break;
  }
  if (res.generators.empty())
    res.generators.push_back(identity_collineation(m));
  return res;
}

}  // namespace qcaps
