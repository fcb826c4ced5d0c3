#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qcaps/caps.hpp"

namespace testutil {

inline const qcaps::ProjSpace& space(int dim, int q) {
  static std::map<std::pair<int, int>, std::unique_ptr<qcaps::ProjSpace>> cache;
  auto key = std::make_pair(dim, q);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<qcaps::ProjSpace>(
                                qcaps::ProjSpace::make(dim, q)))
             .first;
  return *it->second;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(QCAPS_FIXTURES_DIR) + "/" + name;
}

inline qcaps::CapFile load_fixture(const std::string& name) {
  return qcaps::load_cap_file(fixture_path(name + ".cap"));
}

inline std::vector<int> fixture_points(const std::string& name) {
  qcaps::CapFile f = load_fixture(name);
  return qcaps::file_points(f, space(f.dim, f.q));
}

inline qcaps::Cap fixture_cap(const std::string& name) {
  qcaps::CapFile f = load_fixture(name);
  const qcaps::ProjSpace& s = space(f.dim, f.q);
  return qcaps::make_cap(s, qcaps::file_points(f, s));
}

// All fixture names with their expected completeness flag.
inline const std::vector<std::pair<std::string, bool>>& fixture_list() {
  static const std::vector<std::pair<std::string, bool>> list = {
      {"10cap1", false}, {"10cap2", false}, {"12cap1", false},
      {"12cap2", false}, {"12cap3", false}, {"12cap4", false},
      {"12cap5", false}, {"20cap", true},   {"29cap1", true},
      {"29cap2", true},  {"30cap", true},   {"32cap", true},
      {"33cap1", true},  {"33cap2", true},  {"33cap3", true},
      {"36cap1", true},  {"36cap2", true},  {"38cap", true},
  };
  return list;
}

}  // namespace testutil
