#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qcaps/error.hpp"
#include "qcaps/gf4.hpp"

namespace qcaps {

// Homogeneous coordinate vector, length dim+1, most significant first.
using Coords = std::vector<Gf>;

// Scale so the first nonzero coordinate equals 1.  Throws on the zero vector.
Coords normalized(Coords v);

struct Point {
  Coords coords;
  int index = -1;
};

// Bitset over the points of one projective space (at most 1024 points).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int nbits) : nbits_(nbits) {}

  int size_bits() const { return nbits_; }
  void set(int i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (int k = 0; k < words(); ++k) c += __builtin_popcountll(w_[k]);
    return c;
  }
  bool empty() const {
    for (int k = 0; k < words(); ++k)
      if (w_[k]) return false;
    return true;
  }

  PointSet& operator|=(const PointSet& o) {
    for (int k = 0; k < words(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    for (int k = 0; k < words(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  PointSet& and_not(const PointSet& o) {
    for (int k = 0; k < words(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  // Drop every bit with index <= i.
  void clear_upto(int i) {
    if (i < 0) return;
    int k = i >> 6;
    for (int j = 0; j < k; ++j) w_[j] = 0;
    int r = i & 63;
    w_[k] &= (r == 63) ? 0ull : ~((2ull << r) - 1);
  }

  bool operator==(const PointSet& o) const {
    if (nbits_ != o.nbits_) return false;
    for (int k = 0; k < words(); ++k)
      if (w_[k] != o.w_[k]) return false;
    return true;
  }

  template <class F>
  void for_each(F f) const {  // ascending order
    for (int k = 0; k < words(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        int b = __builtin_ctzll(w);
        f(k * 64 + b);
        w &= w - 1;
      }
    }
  }

  // Smallest set bit >= from, or -1.
  int next_set(int from) const {
    if (from < 0) from = 0;
    int k = from >> 6;
    if (k >= words()) return -1;
    std::uint64_t w = w_[k] & ~((1ull << (from & 63)) - 1);
    for (;;) {
      if (w) return k * 64 + __builtin_ctzll(w);
      if (++k >= words()) return -1;
      w = w_[k];
    }
  }

 private:
  int words() const { return (nbits_ + 63) >> 6; }
  int nbits_ = 0;
  std::array<std::uint64_t, 16> w_{};
};

// PG(dim, q) for q in {2, 4}: the canonically ordered normalized points,
// a coords -> index lookup, and for every unordered point pair the q-1
// remaining points of their line (flat triangular table; the search inner
// loop hits it constantly).  Immutable after construction.
class ProjSpace {
 public:
  static ProjSpace make(int dim, int field_order);

  int dim() const { return dim_; }
  int q() const { return q_; }
  int point_count() const { return static_cast<int>(points_.size()); }
  const std::vector<Coords>& points() const { return points_; }
  const Coords& coords_of(int i) const { return points_[i]; }
  Point point(int i) const { return {points_[i], i}; }

  // Index of an already-normalized coordinate vector (-1 if not a point).
  int index_of(const Coords& c) const;
  // Normalize, then look up.  Throws on the zero vector.
  int normalize_index(Coords c) const { return index_of(normalized(std::move(c))); }

  // The q-1 points of line(i, j) other than i and j, in the order
  // normalize(p_i + lambda p_j), lambda = 1, ..., q-1.
  const std::uint16_t* others_on_line(int i, int j) const;

  PointSet empty_set() const { return PointSet(point_count()); }
  PointSet full_set() const;

 private:
  int dim_ = 0, q_ = 0;
  std::vector<Coords> points_;
  std::vector<std::int16_t> code_to_index_;
  std::vector<std::uint16_t> third_;  // (q-1) entries per unordered pair
  std::size_t pair_offset(int i, int j) const;
};

// The full line through two distinct points: {p, q, the q-1 others}.
std::vector<int> line_through(const ProjSpace& space, int i, int j);

}  // namespace qcaps
