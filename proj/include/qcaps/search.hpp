#pragma once

#include <functional>
#include <optional>

#include "qcaps/equiv.hpp"

namespace qcaps {

// One node of the extension tree (passed to the observe hook).
struct SearchNode {
  const Cap* cap = nullptr;
  const PointSet* candidates = nullptr;  // legally addable, index > last_index
  int last_index = -1;                   // highest point index added so far
};

struct SearchConfig {
  const ProjSpace* space = nullptr;
  std::optional<Cap> seed;  // starting cap in the ambient space
  int target_min = 1;
  int target_max = 1;
  bool require_quantum = false;   // hyperplane-parity leaf filter
  bool require_complete = false;
  // New points only off the hyperplane x_dim = 0 (the seed must lie in it),
  // so the seed hyperplane section of every hit equals the seed exactly.
  bool restrict_outside_seed_hyperplane = false;
  // Validate the target range against known_max_cap_size and return an
  // empty result when it is provably out of range.  nonexistence() turns
  // this off so its certificate rests on the traversal alone.
  bool assume_known_maximum = true;
  int jobs = 1;
  std::uint64_t node_budget = 0;  // 0 = unlimited
  std::function<void(const Cap&)> emit;
  std::function<void(const SearchNode&)> observe;  // test hook; use jobs = 1

  // Checkpointing: the first branching level is the unit of work.  Branch
  // -1 is the root visit itself; completed branches are reported through
  // on_branch_done, and branches listed in skip_branches are not replayed
  // (their results are already persisted).
  std::function<void(int branch, std::uint64_t nodes, std::uint64_t hits)>
      on_branch_done;
  std::vector<int> skip_branches;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t hits = 0;
  bool completed = true;  // false iff the node budget ran out
  std::vector<std::uint64_t> worker_nodes;
};

// Ordered depth-first extension search.  Exhaustive within the configured
// restriction: every cap in the target range passing the predicates is
// emitted exactly once (new points are taken in increasing index order;
// seed points do not constrain the order).
SearchStats run_search(const SearchConfig& cfg);

// Lift a cap of PG(dim-1, q) into the hyperplane x_dim = 0 of the ambient
// space by appending a zero coordinate to every column.
Cap embed_seed(const Cap& seed, const ProjSpace& ambient);

// Largest cap size known for the space, used to validate target ranges
// (41 for PG(4,4), 17 for PG(3,4), 6 for PG(2,4)).
std::optional<int> known_max_cap_size(const ProjSpace& space);

// External code-table bound: no [n, k] code over GF(4) has minimum
// distance exceeding max_d.
struct BoundEntry {
  int n = 0;
  int k = 5;
  int max_d = 0;
};

struct SeedConstraint {
  int target_n = 0;
  bool require_quantum = false;  // hyperplane sections share n's parity
  std::vector<BoundEntry> bounds;
};

// Hyperplane-section sizes worth seeding: at least target_n - max_d, and
// of target_n's parity when searching quantum caps.  Throws if no bound
// entry covers target_n.
std::vector<int> allowed_seed_sizes(const SeedConstraint& constraint,
                                    std::span<const int> available);

// ---- classification -------------------------------------------------------

struct CapClass {
  Cap rep;
  long count = 0;  // caps collapsed into this class
  CapSignature sig;
};

struct ClassifyOptions {
  int jobs = 1;
  std::uint64_t node_budget = 0;
};

// Enumerate every cap of the given size (ordered search over the whole
// space), bucket by signature, collapse buckets with are_equivalent.
// One representative per PGammaL class, with the number of labeled caps
// it absorbed.  Throws if the node budget runs out.
std::vector<CapClass> classify(const ProjSpace& space, int size, bool quantum,
                               const ClassifyOptions& opts = {});

// Classification restricted to caps whose seed-hyperplane section equals
// one of the given seed caps (each a class representative living in
// PG(dim-1, q)).  Complete for the target size provided the seed list
// covers every allowed section size (see allowed_seed_sizes).
std::vector<CapClass> classify_from_seeds(const ProjSpace& ambient,
                                          std::span<const Cap> seeds,
                                          int size, bool quantum,
                                          const ClassifyOptions& opts = {});

struct Certificate {
  bool verdict = false;  // true: no such cap exists
  SearchStats stats;
};

// Full ordered DFS with zero symmetry shortcuts; the node counts are the
// auditable evidence.  Throws if the budget runs out (no verdict).
Certificate nonexistence(const ProjSpace& space, int size, bool quantum,
                         const ClassifyOptions& opts = {});

}  // namespace qcaps
