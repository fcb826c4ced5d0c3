#include "qcaps/geometry.hpp"

namespace qcaps {

Coords normalized(Coords v) {
  for (Gf c : v) {
    if (c == 0) continue;
    if (c != 1) {
      Gf iv = gf_inv(c);
      for (Gf& x : v) x = gf_mul(iv, x);
    }
    return v;
  }
  throw Error("cannot normalize the zero vector");
}

namespace {

long encode(const Coords& c, int q) {
  long code = 0;
  for (Gf x : c) code = code * q + x;
  return code;
}

}  // namespace

ProjSpace ProjSpace::make(int dim, int field_order) {
  if (dim < 1) throw Error("projective dimension must be at least 1");
  if (field_order != 2 && field_order != 4)
    throw Error("unsupported field order (only 2 and 4)");

  ProjSpace s;
  s.dim_ = dim;
  s.q_ = field_order;
  const int len = dim + 1;
  long total = 1;
  for (int i = 0; i < len; ++i) {
    total *= field_order;
    if (total > 4096) throw Error("projective space too large");
  }

  s.code_to_index_.assign(total, -1);
  for (long code = 1; code < total; ++code) {
    Coords v(len);
    long c = code;
    for (int i = len - 1; i >= 0; --i) {
      v[i] = static_cast<Gf>(c % field_order);
      c /= field_order;
    }
    Gf first = 0;
    for (Gf x : v)
      if (x) {
        first = x;
        break;
      }
    if (first != 1) continue;  // not the normalized representative
    s.code_to_index_[code] = static_cast<std::int16_t>(s.points_.size());
    s.points_.push_back(std::move(v));
  }
  if (s.points_.size() > 1024) throw Error("projective space too large");

  const int n = s.point_count();
  const int per = field_order - 1;
  s.third_.resize(static_cast<std::size_t>(n) * (n - 1) / 2 * per);
  Coords sum(len);
  for (int i = 0; i < n; ++i) {
    const Coords& p = s.points_[i];
    for (int j = i + 1; j < n; ++j) {
      const Coords& r = s.points_[j];
      std::uint16_t* out = &s.third_[s.pair_offset(i, j)];
      for (Gf lam = 1; lam < field_order; ++lam) {
        for (int k = 0; k < len; ++k) sum[k] = gf_add(p[k], gf_mul(lam, r[k]));
        out[lam - 1] = static_cast<std::uint16_t>(s.index_of(normalized(sum)));
      }
    }
  }
  return s;
}

int ProjSpace::index_of(const Coords& c) const {
  long code = encode(c, q_);
  if (code <= 0 || code >= static_cast<long>(code_to_index_.size())) return -1;
  return code_to_index_[code];
}

std::size_t ProjSpace::pair_offset(int i, int j) const {
  // i < j required; row-major upper triangle.
  const std::size_t n = points_.size();
  std::size_t row = static_cast<std::size_t>(i);
  std::size_t base = row * n - row * (row + 1) / 2 + (j - i - 1);
  return base * (q_ - 1);
}

const std::uint16_t* ProjSpace::others_on_line(int i, int j) const {
  if (i == j) throw Error("line through a point and itself is undefined");
  if (i > j) std::swap(i, j);
  return &third_[pair_offset(i, j)];
}

PointSet ProjSpace::full_set() const {
  PointSet s(point_count());
  for (int i = 0; i < point_count(); ++i) s.set(i);
  return s;
}

std::vector<int> line_through(const ProjSpace& space, int i, int j) {
  if (i == j) throw Error("line through a point and itself is undefined");
  std::vector<int> line{i, j};
  if (i > j) {  // the table stores the i < j sweep; redo it in (i, j) order
    const int len = space.dim() + 1;
    const Coords& p = space.coords_of(i);
    const Coords& r = space.coords_of(j);
    Coords sum(len);
    for (Gf lam = 1; lam < space.q(); ++lam) {
      for (int k = 0; k < len; ++k) sum[k] = gf_add(p[k], gf_mul(lam, r[k]));
      line.push_back(space.index_of(normalized(sum)));
    }
    return line;
  }
  const std::uint16_t* others = space.others_on_line(i, j);
  for (int t = 0; t < space.q() - 1; ++t) line.push_back(others[t]);
  return line;
}

}  // namespace qcaps
