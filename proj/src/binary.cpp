#include "qcaps/binary.hpp"

#include <thread>

#include "qcaps/quantum.hpp"

namespace qcaps {

std::pair<int, int> pauli_translate(char symbol) {
  switch (symbol) {
    case 'I': return {0, 0};
    case 'X': return {1, 0};
    case 'Y': return {1, 1};
    case 'Z': return {0, 1};
  }
  throw Error(std::string("unknown Pauli symbol '") + symbol + "'");
}

BinaryWord pauli_translate(std::string_view paulis) {
  if (paulis.size() > 64) throw Error("Pauli string longer than 64 slots");
  BinaryWord w;
  w.n = static_cast<int>(paulis.size());
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    auto [x, y] = pauli_translate(paulis[i]);
    w.x |= static_cast<std::uint64_t>(x) << i;
    w.y |= static_cast<std::uint64_t>(y) << i;
  }
  return w;
}

int symplectic_product(const BinaryWord& u, const BinaryWord& v) {
  if (u.n != v.n) throw Error("symplectic product of words of unequal length");
  return (__builtin_popcountll(u.x & v.y) + __builtin_popcountll(u.y & v.x)) & 1;
}

bool symplectic_self_orthogonal(std::span<const BinaryWord> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j)
      if (symplectic_product(rows[i], rows[j])) return false;
  return true;
}

BinaryExpansion expand_to_binary(const ProjSpace& space,
                                 std::span<const int> pts) {
  if (space.q() != 4) throw Error("binary expansion is defined over GF(4)");
  const int m = space.dim() + 1;
  const int n = static_cast<int>(pts.size());
  if (n > 64) throw Error("too many columns for the binary expansion");
  if (rank_of(space, pts) != m)
    throw Error("rank-deficient matrix: binary dimension would not be " +
                std::to_string(2 * m));

  BinaryExpansion e;
  e.rows.reserve(2 * m);
  for (int i = 0; i < m; ++i) {
    for (Gf mult : {Gf{1}, Gf{2}}) {  // v_i and w*v_i
      BinaryWord w;
      w.n = n;
      for (int j = 0; j < n; ++j) {
        Gf z = gf_mul(mult, space.coords_of(pts[j])[i]);
        w.x |= static_cast<std::uint64_t>(z & 1) << j;
        w.y |= static_cast<std::uint64_t>(z >> 1) << j;
      }
      e.rows.push_back(w);
    }
  }

  e.lines.m = 2 * m;
  e.lines.lines.resize(n);
  for (int j = 0; j < n; ++j) {
    std::uint16_t P = 0, Q = 0;
    for (int r = 0; r < 2 * m; ++r) {
      P |= static_cast<std::uint16_t>((e.rows[r].x >> j) & 1) << r;
      Q |= static_cast<std::uint16_t>((e.rows[r].y >> j) & 1) << r;
    }
    e.lines.lines[j] = {P, Q};
  }
  return e;
}

Secundum canonical_secundum(std::uint16_t a, std::uint16_t b) {
  if (a == 0 || b == 0 || a == b) throw Error("secundum needs two independent functionals");
  // The span's three nonzero elements; exactly two share the lowest pivot.
  std::uint16_t c = a ^ b;
  auto pivot = [](std::uint16_t f) { return __builtin_ctz(f); };
  std::uint16_t e2 = a;  // unique element with the highest pivot
  if (pivot(b) > pivot(e2)) e2 = b;
  if (pivot(c) > pivot(e2)) e2 = c;
  // Of the other two, the reduced one has a zero at e2's pivot.
  std::uint16_t e1 = 0;
  for (std::uint16_t f : {a, b, c}) {
    if (f == e2) continue;
    if (!((f >> pivot(e2)) & 1)) e1 = f;
  }
  return {e1, e2};
}

std::uint64_t secundum_count(int m) {
  std::uint64_t top = (1ull << m) - 1;
  std::uint64_t mid = (1ull << (m - 1)) - 1;
  return top * mid / 3;
}

SecundumCheck secundum_parity_check(const CodeLines& lines, int jobs,
                                    bool permissive) {
  const int m = lines.m;
  const int n = static_cast<int>(lines.lines.size());
  if (m < 2 || m > 14) throw Error("unsupported binary dimension");
  if (n > 64) throw Error("too many codelines");
  if (!permissive) {
    for (int k = 0; k < n; ++k) {
      auto [P, Q] = lines.lines[k];
      if (P == 0 || Q == 0 || P == Q)
        throw Error("degenerate codeline at section " + std::to_string(k + 1));
    }
  }

  // maskP[f] bit k = f(P_k); built by the subset-XOR recurrence.
  const std::uint32_t nf = 1u << m;
  std::vector<std::uint64_t> maskP(nf, 0), maskQ(nf, 0);
  std::vector<std::uint64_t> rowP(m, 0), rowQ(m, 0);
  for (int k = 0; k < n; ++k) {
    auto [P, Q] = lines.lines[k];
    for (int r = 0; r < m; ++r) {
      rowP[r] |= static_cast<std::uint64_t>((P >> r) & 1) << k;
      rowQ[r] |= static_cast<std::uint64_t>((Q >> r) & 1) << k;
    }
  }
  for (std::uint32_t f = 1; f < nf; ++f) {
    int r = __builtin_ctz(f);
    maskP[f] = maskP[f & (f - 1)] ^ rowP[r];
    maskQ[f] = maskQ[f & (f - 1)] ^ rowQ[r];
  }

  if (jobs < 1) jobs = 1;
  std::vector<std::uint64_t> counts(jobs, 0);
  std::vector<char> oks(jobs, 1);
  auto work = [&](int w) {
    std::uint64_t cnt = 0;
    bool ok = true;
    for (std::uint32_t f1 = 1 + w; f1 < nf; f1 += jobs) {
      const std::uint64_t p1 = maskP[f1], q1 = maskQ[f1], d1 = p1 ^ q1;
      for (std::uint32_t f2 = f1 + 1; f2 < nf; ++f2) {
        if ((f1 ^ f2) < f2) continue;  // count each 2-space once
        ++cnt;
        std::uint64_t skew = (p1 | maskP[f2]) & (q1 | maskQ[f2]) &
                             (d1 | (maskP[f2] ^ maskQ[f2]));
        if (__builtin_popcountll(skew) & 1) ok = false;
      }
    }
    counts[w] = cnt;
    oks[w] = ok;
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  SecundumCheck res;
  res.ok = true;
  for (int w = 0; w < jobs; ++w) {
    res.secundums += counts[w];
    res.ok = res.ok && oks[w];
  }
  return res;
}

bool line_strength_check(const CodeLines& lines, int t) {
  if (t < 1 || t > 3) throw Error("line strength supported for t in 1..3");
  const int n = static_cast<int>(lines.lines.size());
  if (t > n) throw Error("fewer lines than t");
  std::vector<int> idx(t);
  for (int i = 0; i < t; ++i) idx[i] = i;
  for (;;) {
    std::uint16_t piv[16] = {};  // basis vector by leading-bit position
    int r = 0;
    auto insert = [&](std::uint16_t v) {
      while (v) {
        int b = 31 - __builtin_clz(static_cast<unsigned>(v));
        if (!piv[b]) {
          piv[b] = v;
          ++r;
          return;
        }
        v ^= piv[b];
      }
    };
    for (int i : idx) {
      insert(lines.lines[i].first);
      insert(lines.lines[i].second);
    }
    if (r < 2 * t) return false;
    int pos = t - 1;
    while (pos >= 0 && idx[pos] == n - t + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < t; ++i) idx[i] = idx[i - 1] + 1;
  }
  return true;
}

}  // namespace qcaps
