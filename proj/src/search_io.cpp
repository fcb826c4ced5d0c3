#include "qcaps/search_io.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "qcaps/quantum.hpp"

namespace qcaps {

std::string cap_record(const Cap& cap, bool quantum_flag) {
  const ProjSpace& s = cap.space();
  nlohmann::json j;
  j["type"] = "cap";
  j["n"] = cap.size();
  j["complete"] = is_complete(cap);
  j["quantum"] = quantum_flag;
  char sig[20];
  std::snprintf(sig, sizeof sig, "%016llx",
                static_cast<unsigned long long>(signature_hash(signature(cap))));
  j["sig"] = sig;
  nlohmann::json cols = nlohmann::json::array();
  for (int p : cap.points()) {
    std::string col;
    for (Gf x : s.coords_of(p)) col.push_back(static_cast<char>('0' + x));
    cols.push_back(col);
  }
  j["cols"] = cols;
  return j.dump();
}

PersistedSearch run_search_to_file(SearchConfig cfg, const std::string& out_path,
                                   const std::string& resume_path) {
  if (!resume_path.empty()) {
    std::ifstream in(resume_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) continue;
      if (j.value("type", "") == "branch")
        cfg.skip_branches.push_back(j.value("branch", 0));
    }
  }

  std::ofstream out(out_path, std::ios::app);
  if (!out) throw Error("cannot open " + out_path + " for writing");
  std::mutex mu;
  PersistedSearch res;

  auto user_emit = cfg.emit;
  cfg.emit = [&](const Cap& cap) {
    bool q = hyperplane_parity_ok(cap);
    {
      std::lock_guard<std::mutex> lk(mu);
      out << cap_record(cap, q) << "\n";
      ++res.caps_written;
    }
    if (user_emit) user_emit(cap);
  };
  cfg.on_branch_done = [&](int branch, std::uint64_t nodes, std::uint64_t hits) {
    std::lock_guard<std::mutex> lk(mu);
    nlohmann::json j;
    j["type"] = "branch";
    j["branch"] = branch;
    j["nodes"] = nodes;
    j["hits"] = hits;
    out << j.dump() << "\n";
    out.flush();
  };

  res.stats = run_search(cfg);

  nlohmann::json j;
  j["type"] = "summary";
  j["nodes"] = res.stats.nodes;
  j["hits"] = res.stats.hits;
  j["complete"] = res.stats.completed;
  out << j.dump() << "\n";
  return res;
}

}  // namespace qcaps
