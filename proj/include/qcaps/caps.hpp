#pragma once

#include <span>
#include <string>
#include <vector>

#include "qcaps/geometry.hpp"

namespace qcaps {

// A cap: sorted point indices plus the set of points lying on a secant
// (for a 1-cap, just the point itself).  Values are immutable; with_point
// returns an enlarged copy.
class Cap {
 public:
  explicit Cap(const ProjSpace& space)
      : space_(&space), covered_(space.point_count()) {}

  const ProjSpace& space() const { return *space_; }
  const std::vector<std::uint16_t>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  const PointSet& covered() const { return covered_; }

  bool contains(int p) const;
  // True iff adding p keeps the cap property (p off every secant, p new).
  bool can_add(int p) const { return !covered_.test(p); }
  Cap with_point(int p) const;  // throws Error on an illegal extension

 private:
  const ProjSpace* space_;
  std::vector<std::uint16_t> points_;
  PointSet covered_;
};

// True iff no 3 of the (distinct) points are collinear.  Order-independent.
// Throws on duplicate points.
bool is_cap(const ProjSpace& space, std::span<const int> pts);

// Build a Cap, validating the cap property.  Throws if not a cap.
Cap make_cap(const ProjSpace& space, std::span<const int> pts);

// True iff every point of the space is a cap point or lies on a secant.
bool is_complete(const Cap& cap);

// ---- cap files -----------------------------------------------------------
//
//   # comment
//   PG <dim> <q>
//   n <count>
//   <dim+1 rows of digits>      (wide caps may be split into several
//   <dim+1 rows of digits>       blocks; columns concatenate in reading
//   ...                          order)

struct CapFile {
  int dim = 0;
  int q = 0;
  std::vector<Coords> columns;            // normalized
  std::vector<std::string> warnings;      // e.g. non-normalized input columns
};

CapFile parse_cap_file(const std::string& text);  // throws ParseError
std::vector<int> file_points(const CapFile& f, const ProjSpace& space);
Cap parse_cap(const std::string& text, const ProjSpace& space);
CapFile load_cap_file(const std::string& path);

// Canonical single-block rendering, columns in sorted point order.
std::string write_cap(const Cap& cap);

}  // namespace qcaps
