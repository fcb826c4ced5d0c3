#pragma once

#include <optional>

#include "qcaps/binary.hpp"
#include "qcaps/quantum.hpp"

namespace qcaps {

struct VerifyReport {
  int dim = 0, q = 0, n = 0;
  bool is_cap = false;
  std::optional<bool> is_complete;    // absent unless the set is a cap
  int rank = 0;
  int strength = 0;
  bool hyperplane_parity_ok = false;
  bool all_weights_even = false;
  bool hermitian_self_orthogonal = false;
  std::optional<bool> symplectic_ok;  // absent when rank-deficient
  std::optional<CodeParams> params;   // absent unless a quantum cap
  WeightDistribution wd;

  bool quantum() const {
    return hyperplane_parity_ok && all_weights_even && hermitian_self_orthogonal;
  }
};

VerifyReport build_report(const ProjSpace& space, std::span<const int> pts);

// Stable machine form: sorted keys, two-space indent, trailing newline,
// no timestamps.  Identical inputs give byte-identical output.
std::string report_json(const VerifyReport& r, bool include_zero_weight = false);

// Aligned table for humans.
std::string report_table(const VerifyReport& r, bool include_zero_weight = false);

}  // namespace qcaps
