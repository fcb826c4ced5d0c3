#include "qcaps/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "qcaps/quantum.hpp"

namespace qcaps {

std::optional<int> known_max_cap_size(const ProjSpace& space) {
  if (space.q() != 4) return std::nullopt;
  switch (space.dim()) {
    case 2: return 6;
    case 3: return 17;
    case 4: return 41;
  }
  return std::nullopt;
}

Cap embed_seed(const Cap& seed, const ProjSpace& ambient) {
  const ProjSpace& s = seed.space();
  if (ambient.dim() != s.dim() + 1 || ambient.q() != s.q())
    throw Error("seed space does not embed into the ambient space");
  std::vector<int> pts;
  pts.reserve(seed.size());
  for (int p : seed.points()) {
    Coords c = s.coords_of(p);
    c.push_back(0);
    pts.push_back(ambient.index_of(c));
  }
  return make_cap(ambient, pts);
}

std::vector<int> allowed_seed_sizes(const SeedConstraint& constraint,
                                    std::span<const int> available) {
  const BoundEntry* entry = nullptr;
  for (const auto& b : constraint.bounds)
    if (b.n == constraint.target_n) entry = &b;
  if (!entry)
    throw Error("no code-table bound for n = " +
                std::to_string(constraint.target_n));
  const int min_section = constraint.target_n - entry->max_d;
  std::vector<int> out;
  for (int s : available) {
    if (s < min_section) continue;
    if (constraint.require_quantum && ((s ^ constraint.target_n) & 1)) continue;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Local {
  std::uint64_t nodes = 0;
  std::uint64_t hits = 0;
};

struct Runner {
  const SearchConfig& cfg;
  const ProjSpace& space;
  int target_max_eff;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::uint64_t hits = 0;
  std::mutex mu;

  Runner(const SearchConfig& c, int tmax) : cfg(c), space(*c.space), target_max_eff(tmax) {}

  bool predicates_ok(const Cap& cap) {
    if (cfg.require_complete && !is_complete(cap)) return false;
    if (cfg.require_quantum) {
      std::vector<int> pts(cap.points().begin(), cap.points().end());
      if (!hyperplane_parity_ok(space, pts)) return false;
    }
    return true;
  }

  void visit(const Cap& cap, const PointSet& cands, int last, Local& local) {
    if (cfg.node_budget && nodes.load(std::memory_order_relaxed) >= cfg.node_budget) {
      aborted.store(true, std::memory_order_relaxed);
      return;
    }
    nodes.fetch_add(1, std::memory_order_relaxed);
    ++local.nodes;
    if (cfg.observe) cfg.observe(SearchNode{&cap, &cands, last});
    if (cap.size() >= cfg.target_min && cap.size() <= target_max_eff &&
        cap.size() > 0 && predicates_ok(cap)) {
      std::lock_guard<std::mutex> lk(mu);
      ++hits;
      ++local.hits;
      if (cfg.emit) cfg.emit(cap);
    }
    if (cap.size() >= target_max_eff) return;
    if (cap.size() + cands.count() < cfg.target_min) return;
    for (int c = cands.next_set(last + 1); c >= 0; c = cands.next_set(c + 1)) {
      if (aborted.load(std::memory_order_relaxed)) return;
      Cap child = cap.with_point(c);
      PointSet childCands = cands;
      childCands.and_not(child.covered());
      childCands.clear_upto(c);
      visit(child, childCands, c, local);
    }
  }
};

}  // namespace

SearchStats run_search(const SearchConfig& cfg) {
  if (!cfg.space) throw Error("search config has no space");
  const ProjSpace& space = *cfg.space;
  if (cfg.target_min < 0 || cfg.target_min > cfg.target_max)
    throw Error("bad target range");

  int tmax = cfg.target_max;
  if (cfg.assume_known_maximum) {
    if (auto mx = known_max_cap_size(space)) {
      if (cfg.target_min > *mx) return SearchStats{};  // provably empty
      tmax = std::min(tmax, *mx);
    }
  }

  Cap base = cfg.seed ? *cfg.seed : Cap(space);
  if (cfg.seed && &cfg.seed->space() != &space)
    throw Error("seed does not live in the search space");

  PointSet cands = space.full_set();
  cands.and_not(base.covered());
  if (cfg.restrict_outside_seed_hyperplane) {
    const int d = space.dim();
    for (int p : base.points())
      if (space.coords_of(p)[d] != 0)
        throw Error("seed is not contained in the hyperplane x_dim = 0");
    for (int p = 0; p < space.point_count(); ++p)
      if (space.coords_of(p)[d] == 0) cands.reset(p);
  }

  auto skipped = [&](int branch) {
    return std::find(cfg.skip_branches.begin(), cfg.skip_branches.end(),
                     branch) != cfg.skip_branches.end();
  };

  Runner runner(cfg, tmax);
  SearchStats stats;

  // Branch -1: the root cap itself.
  if (!skipped(-1)) {
    if (cfg.node_budget == 0 || runner.nodes.load() < cfg.node_budget) {
      Local local;
      runner.nodes.fetch_add(1, std::memory_order_relaxed);
      ++local.nodes;
      if (cfg.observe) cfg.observe(SearchNode{&base, &cands, -1});
      if (base.size() >= cfg.target_min && base.size() <= tmax &&
          base.size() > 0 && runner.predicates_ok(base)) {
        ++runner.hits;
        ++local.hits;
        if (cfg.emit) cfg.emit(base);
      }
      if (cfg.on_branch_done) cfg.on_branch_done(-1, local.nodes, local.hits);
    } else {
      runner.aborted.store(true);
    }
  }

  bool descend = base.size() < tmax &&
                 base.size() + cands.count() >= cfg.target_min &&
                 !runner.aborted.load();
  if (descend) {
    std::vector<int> roots;
    cands.for_each([&](int c) { roots.push_back(c); });
    int jobs = std::max(1, cfg.jobs);
    jobs = std::min<int>(jobs, std::max<std::size_t>(roots.size(), 1));
    std::vector<std::uint64_t> workerNodes(jobs, 0);
    std::atomic<std::size_t> nextRoot{0};

    auto work = [&](int w) {
      for (;;) {
        std::size_t r = nextRoot.fetch_add(1);
        if (r >= roots.size()) return;
        if (runner.aborted.load(std::memory_order_relaxed)) return;
        int c = roots[r];
        if (skipped(c)) continue;
        Cap child = base.with_point(c);
        PointSet childCands = cands;
        childCands.and_not(child.covered());
        childCands.clear_upto(c);
        Local local;
        runner.visit(child, childCands, c, local);
        workerNodes[w] += local.nodes;
        if (!runner.aborted.load(std::memory_order_relaxed) &&
            cfg.on_branch_done) {
          std::lock_guard<std::mutex> lk(runner.mu);
          cfg.on_branch_done(c, local.nodes, local.hits);
        }
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    stats.worker_nodes = std::move(workerNodes);
  }

  stats.nodes = runner.nodes.load();
  stats.hits = runner.hits;
  stats.completed = !runner.aborted.load();
  return stats;
}

namespace {

// Insert a cap into the running classification, collapsing by signature
// and verified equivalence.
void absorb(std::vector<CapClass>& classes, const Cap& cap, int jobs) {
  if (rank_of(cap) != cap.space().dim() + 1)
    throw Error(
        "classification collapses spanning caps only; a cap of size " +
        std::to_string(cap.size()) + " here has smaller rank");
  CapSignature sig = signature(cap);
  for (auto& cls : classes) {
    if (!cls.sig.equivalent_to(sig)) continue;
    if (are_equivalent(cls.rep, cap, /*allow_frobenius=*/true, jobs)) {
      ++cls.count;
      return;
    }
  }
  classes.push_back(CapClass{cap, 1, std::move(sig)});
}

}  // namespace

std::vector<CapClass> classify(const ProjSpace& space, int size, bool quantum,
                               const ClassifyOptions& opts) {
  if (auto mx = known_max_cap_size(space); mx && size > *mx)
    return {};
  SearchConfig cfg;
  cfg.space = &space;
  cfg.target_min = cfg.target_max = size;
  cfg.require_quantum = quantum;
  cfg.jobs = opts.jobs;
  cfg.node_budget = opts.node_budget;
  // Hits are collapsed as they stream in (run_search serializes emission),
  // so memory scales with the number of classes, not the number of caps.
  std::vector<CapClass> classes;
  cfg.emit = [&](const Cap& c) { absorb(classes, c, 1); };
  SearchStats st = run_search(cfg);
  if (!st.completed) throw Error("node budget exhausted during classification");
  return classes;
}

std::vector<CapClass> classify_from_seeds(const ProjSpace& ambient,
                                          std::span<const Cap> seeds,
                                          int size, bool quantum,
                                          const ClassifyOptions& opts) {
  std::vector<CapClass> classes;
  for (const Cap& seed : seeds) {
    Cap embedded = embed_seed(seed, ambient);
    SearchConfig cfg;
    cfg.space = &ambient;
    cfg.seed = embedded;
    cfg.target_min = cfg.target_max = size;
    cfg.require_quantum = quantum;
    cfg.restrict_outside_seed_hyperplane = true;
    cfg.jobs = opts.jobs;
    cfg.node_budget = opts.node_budget;
    cfg.emit = [&](const Cap& c) { absorb(classes, c, 1); };
    SearchStats st = run_search(cfg);
    if (!st.completed) throw Error("node budget exhausted during classification");
  }
  return classes;
}

Certificate nonexistence(const ProjSpace& space, int size, bool quantum,
                         const ClassifyOptions& opts) {
  SearchConfig cfg;
  cfg.space = &space;
  cfg.target_min = cfg.target_max = size;
  cfg.require_quantum = quantum;
  cfg.assume_known_maximum = false;  // the traversal itself is the evidence
  cfg.jobs = opts.jobs;
  cfg.node_budget = opts.node_budget;
  Certificate cert;
  cert.stats = run_search(cfg);
  if (!cert.stats.completed)
    throw Error("node budget exhausted: no nonexistence verdict");
  cert.verdict = cert.stats.hits == 0;
  return cert;
}

}  // namespace qcaps
