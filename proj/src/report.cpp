#include "qcaps/report.hpp"

#include <sstream>

#include "json.hpp"

namespace qcaps {

VerifyReport build_report(const ProjSpace& space, std::span<const int> pts) {
  VerifyReport r;
  r.dim = space.dim();
  r.q = space.q();
  r.n = static_cast<int>(pts.size());
  const int m = space.dim() + 1;

  r.is_cap = is_cap(space, pts);
  r.rank = rank_of(space, pts);
  r.strength = r.n > 0 ? strength(space, pts) : 0;
  r.hyperplane_parity_ok = hyperplane_parity_ok(space, pts);
  r.all_weights_even = false;
  r.hermitian_self_orthogonal = hermitian_self_orthogonal(space, pts);
  r.wd = weight_distribution(space, pts);
  r.all_weights_even = all_weights_even(r.wd);

  if (r.rank == m) {
    BinaryExpansion e = expand_to_binary(space, pts);
    r.symplectic_ok = symplectic_self_orthogonal(e.rows);
  }
  if (r.is_cap && r.n > 0) {
    std::vector<int> v(pts.begin(), pts.end());
    Cap cap = make_cap(space, v);
    r.is_complete = is_complete(cap);
    if (r.quantum() && r.rank == m) {
      try {
        r.params = code_params(cap);
      } catch (const NotQuantumError&) {
        r.params.reset();
      }
    }
  }
  return r;
}

namespace {

nlohmann::json wd_json(const WeightDistribution& wd, bool include_zero) {
  nlohmann::json arr = nlohmann::json::array();
  if (include_zero) arr.push_back({0, 1});
  for (const auto& [w, c] : wd) arr.push_back({w, c});
  return arr;
}

}  // namespace

std::string report_json(const VerifyReport& r, bool include_zero_weight) {
  nlohmann::json j;
  j["is_cap"] = r.is_cap;
  j["is_complete"] = r.is_complete ? nlohmann::json(*r.is_complete)
                                   : nlohmann::json(nullptr);
  j["rank"] = r.rank;
  j["strength"] = r.strength;
  j["hyperplane_parity_ok"] = r.hyperplane_parity_ok;
  j["all_weights_even"] = r.all_weights_even;
  j["hermitian_self_orthogonal"] = r.hermitian_self_orthogonal;
  j["symplectic_ok"] = r.symplectic_ok ? nlohmann::json(*r.symplectic_ok)
                                       : nlohmann::json(nullptr);
  if (r.params) {
    j["params"] = {{"n", r.params->n}, {"k", r.params->k}, {"d", r.params->d}};
  } else {
    j["params"] = nullptr;
  }
  j["weight_distribution"] = wd_json(r.wd, include_zero_weight);
  return j.dump(2) + "\n";
}

std::string report_table(const VerifyReport& r, bool include_zero_weight) {
  std::ostringstream out;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  out << "space                      PG(" << r.dim << "," << r.q << ")\n";
  out << "n                          " << r.n << "\n";
  out << "is_cap                     " << yn(r.is_cap) << "\n";
  out << "is_complete                "
      << (r.is_complete ? yn(*r.is_complete) : "-") << "\n";
  out << "rank                       " << r.rank << "\n";
  out << "strength                   " << r.strength << "\n";
  out << "hyperplane_parity_ok       " << yn(r.hyperplane_parity_ok) << "\n";
  out << "all_weights_even           " << yn(r.all_weights_even) << "\n";
  out << "hermitian_self_orthogonal  " << yn(r.hermitian_self_orthogonal) << "\n";
  out << "symplectic_ok              "
      << (r.symplectic_ok ? yn(*r.symplectic_ok) : "-") << "\n";
  if (r.params)
    out << "params                     [[" << r.params->n << "," << r.params->k
        << "," << r.params->d << "]]\n";
  else
    out << "params                     -\n";
  out << "weight distribution:\n";
  if (include_zero_weight) out << "  <0, 1>\n";
  for (const auto& [w, c] : r.wd) out << "  <" << w << ", " << c << ">\n";
  return out.str();
}

}  // namespace qcaps
