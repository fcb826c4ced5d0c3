#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qcaps/caps.hpp"

namespace qcaps {

// A vector of GF(2)^(2n): n coordinate sections, each an (x, y) bit pair,
// stored as two n-bit masks (n <= 64).
struct BinaryWord {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  int n = 0;
};

// sigma_x -> (1,0), sigma_y -> (1,1), sigma_z -> (0,1), I -> (0,0).
std::pair<int, int> pauli_translate(char symbol);
BinaryWord pauli_translate(std::string_view paulis);

// sum_i (x1_i y2_i + y1_i x2_i) mod 2.  Throws on length mismatch.
int symplectic_product(const BinaryWord& u, const BinaryWord& v);

// True iff all pairwise (and self) symplectic products vanish.
bool symplectic_self_orthogonal(std::span<const BinaryWord> rows);

// The n codelines of a binary stabilizer matrix: point pairs (P_k, Q_k)
// in PG(m-1, 2), each point an m-bit mask.
struct CodeLines {
  int m = 0;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> lines;
};

struct BinaryExpansion {
  std::vector<BinaryWord> rows;  // v_1, w*v_1, ..., v_m, w*v_m
  CodeLines lines;
};

// GF(4) -> GF(2)^2 expansion of the point matrix: each GF(4) row v yields
// binary rows v and w*v, an entry a + w*b becoming the bit pair (a, b).
// Requires the matrix to have full rank (binary dimension 2(dim+1)).
BinaryExpansion expand_to_binary(const ProjSpace& space,
                                 std::span<const int> pts);
inline BinaryExpansion expand_to_binary(const Cap& c) {
  std::vector<int> p(c.points().begin(), c.points().end());
  return expand_to_binary(c.space(), p);
}

// Codimension-2 subspace given by two independent functionals in reduced
// echelon form (unique per subspace).
struct Secundum {
  std::uint16_t f1 = 0;
  std::uint16_t f2 = 0;
  bool operator==(const Secundum&) const = default;
};
Secundum canonical_secundum(std::uint16_t a, std::uint16_t b);

// (2^m - 1)(2^(m-1) - 1)/3: the number of secundums of PG(m-1, 2).
std::uint64_t secundum_count(int m);

struct SecundumCheck {
  bool ok = false;               // every secundum sees an even number of skew lines
  std::uint64_t secundums = 0;   // how many were enumerated
};

// Enumerates every secundum of PG(m-1,2) and counts the lines skew to it
// (skew iff v_P != 0, v_Q != 0, v_P != v_Q for v_R = (f1(R), f2(R))).
// Degenerate lines (zero point or P = Q) are rejected unless `permissive`;
// in permissive mode they simply never count as skew.  `jobs` workers
// split the census; verdicts combine by logical AND.
SecundumCheck secundum_parity_check(const CodeLines& lines, int jobs = 1,
                                    bool permissive = false);

// True iff every t-subset of lines spans projective dimension 2t-1.
// Supported for 1 <= t <= 3.
bool line_strength_check(const CodeLines& lines, int t);

}  // namespace qcaps
