#include "qcaps/caps.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qcaps {

bool Cap::contains(int p) const {
  return std::binary_search(points_.begin(), points_.end(),
                            static_cast<std::uint16_t>(p));
}

Cap Cap::with_point(int p) const {
  if (p < 0 || p >= space_->point_count()) throw Error("point index out of range");
  if (covered_.test(p))
    throw Error("illegal extension: point lies on a secant of the cap");
  Cap c(*this);
  c.covered_.set(p);
  const int per = space_->q() - 1;
  for (int e : points_) {
    const std::uint16_t* t = space_->others_on_line(e, p);
    for (int k = 0; k < per; ++k) c.covered_.set(t[k]);
  }
  c.points_.insert(
      std::lower_bound(c.points_.begin(), c.points_.end(), p),
      static_cast<std::uint16_t>(p));
  return c;
}

bool is_cap(const ProjSpace& space, std::span<const int> pts) {
  std::vector<int> sorted(pts.begin(), pts.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("duplicate point");
  Cap c(space);
  for (int p : pts) {
    if (!c.can_add(p)) return false;
    c = c.with_point(p);
  }
  return true;
}

Cap make_cap(const ProjSpace& space, std::span<const int> pts) {
  if (!is_cap(space, pts)) throw Error("points do not form a cap");
  Cap c(space);
  for (int p : pts) c = c.with_point(p);
  return c;
}

bool is_complete(const Cap& cap) {
  if (cap.size() == 0) throw Error("completeness of the empty cap is undefined");
  return cap.covered().count() == cap.space().point_count();
}

CapFile parse_cap_file(const std::string& text) {
  CapFile f;
  int n = -1;
  bool have_pg = false;
  std::vector<std::vector<Gf>> rows;
  std::vector<bool> row_is_break;  // blank line seen before this row?
  bool pending_break = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) {
      pending_break = true;
      continue;
    }
    if (tok == "PG") {
      if (have_pg) throw ParseError("repeated PG header");
      if (!(ls >> f.dim >> f.q)) throw ParseError("malformed PG header");
      if (f.q != 2 && f.q != 4) throw ParseError("unsupported field order");
      if (f.dim < 1 || f.dim > 9) throw ParseError("unsupported dimension");
      have_pg = true;
      continue;
    }
    if (tok == "n") {
      if (!(ls >> n) || n < 0) throw ParseError("malformed n header");
      continue;
    }
    if (!have_pg || n < 0) throw ParseError("digit rows before PG/n header");
    std::vector<Gf> row;
    for (;;) {
      if (tok.size() != 1 || tok[0] < '0' || tok[0] > '0' + f.q - 1)
        throw ParseError("malformed digit '" + tok + "'");
      row.push_back(static_cast<Gf>(tok[0] - '0'));
      if (!(ls >> tok)) break;
    }
    rows.push_back(std::move(row));
    row_is_break.push_back(pending_break);
    pending_break = false;
  }
  if (!have_pg || n < 0) throw ParseError("missing PG or n header");

  const int m = f.dim + 1;
  if (rows.size() % m != 0)
    throw ParseError("wrong row count: " + std::to_string(rows.size()) +
                     " rows, expected a multiple of " + std::to_string(m));
  for (std::size_t b = 0; b < rows.size(); b += m) {
    std::size_t w = rows[b].size();
    for (int r = 1; r < m; ++r) {
      if (rows[b + r].size() != w)
        throw ParseError("ragged block: rows of unequal width");
      if (row_is_break[b + r])
        throw ParseError("wrong row count: blank line inside a block");
    }
    for (std::size_t j = 0; j < w; ++j) {
      Coords col(m);
      bool zero = true;
      for (int r = 0; r < m; ++r) {
        col[r] = rows[b + r][j];
        if (col[r]) zero = false;
      }
      if (zero)
        throw ParseError("zero column at position " +
                         std::to_string(f.columns.size() + 1));
      Coords norm = normalized(col);
      if (norm != col)
        f.warnings.push_back("column " + std::to_string(f.columns.size() + 1) +
                             " was not normalized; scaled to the canonical representative");
      f.columns.push_back(std::move(norm));
    }
  }
  if (static_cast<int>(f.columns.size()) != n)
    throw ParseError("column count " + std::to_string(f.columns.size()) +
                     " does not match n " + std::to_string(n));
  for (std::size_t i = 0; i < f.columns.size(); ++i)
    for (std::size_t j = i + 1; j < f.columns.size(); ++j)
      if (f.columns[i] == f.columns[j])
        throw ParseError("duplicate column (" + std::to_string(i + 1) + " and " +
                         std::to_string(j + 1) + ")");
  return f;
}

std::vector<int> file_points(const CapFile& f, const ProjSpace& space) {
  if (space.dim() != f.dim || space.q() != f.q)
    throw Error("cap file space does not match");
  std::vector<int> pts;
  pts.reserve(f.columns.size());
  for (const Coords& c : f.columns) pts.push_back(space.index_of(c));
  return pts;
}

Cap parse_cap(const std::string& text, const ProjSpace& space) {
  CapFile f = parse_cap_file(text);
  std::vector<int> pts = file_points(f, space);
  return make_cap(space, pts);
}

CapFile load_cap_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cap_file(ss.str());
}

std::string write_cap(const Cap& cap) {
  std::ostringstream out;
  const ProjSpace& s = cap.space();
  out << "PG " << s.dim() << ' ' << s.q() << "\n";
  out << "n " << cap.size() << "\n";
  for (int r = 0; r <= s.dim(); ++r) {
    for (int j = 0; j < cap.size(); ++j) {
      if (j) out << ' ';
      out << int(s.coords_of(cap.points()[j])[r]);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace qcaps
