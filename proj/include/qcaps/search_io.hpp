#pragma once

#include <string>

#include "qcaps/search.hpp"

namespace qcaps {

// Append-only JSONL persistence for long searches.  One record per line:
//   {"type":"cap","n":…,"complete":…,"quantum":…,"sig":"…","cols":["…",…]}
//   {"type":"branch","branch":…,"nodes":…,"hits":…}   (completed subtree)
//   {"type":"summary","nodes":…,"hits":…,"complete":…}
// A rerun with --resume skips every branch already recorded and appends
// the rest, so an interrupted search continues where it stopped.

struct PersistedSearch {
  SearchStats stats;
  std::uint64_t caps_written = 0;
};

// Runs cfg, streaming records to out_path.  If resume_path is nonempty,
// branch records read from it populate cfg.skip_branches first (out_path
// and resume_path may be the same file).
PersistedSearch run_search_to_file(SearchConfig cfg, const std::string& out_path,
                                   const std::string& resume_path = "");

std::string cap_record(const Cap& cap, bool quantum_flag);

}  // namespace qcaps
