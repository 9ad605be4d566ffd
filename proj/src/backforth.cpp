#include <chrono>
#include <random>

#include "ormat/search.hpp"

// Alternating-direction deepening.  A subtree search from a fixed d-row
// prefix finds the best completion B; reversing B (rows mirrored, every
// second row negated) yields another matrix of the same kind for sor*, and
// its first d rows -- the deepest, most constrained end of B -- become the
// next prefix.  Searching below that prefix can only do better: the
// reversal of B itself already lives in the new subtree, so within one
// segment row counts never decrease.  That argument needs each sweep to
// exhaust its subtree, so sweeps never see the caller's target: cutting
// against a distant target would prune the whole subtree and stall every
// segment at the prefix.  Instead each sweep starts one row below the
// previous count, which the reversed matrix is guaranteed to reach, and
// the target is checked between sweeps.  For or*/psor* the reversal
// argument breaks (the reversed matrix mixes up the two witness
// patterns), so the candidate prefix is revalidated and a failed check
// starts a fresh segment from a random prefix instead.

namespace ormat {

BackForthOutcome back_and_forth(const BackForthConfig &cfg) {
  if (cfg.n < 1 || cfg.n > plane_cols_cap)
    throw std::invalid_argument("width must be in [1, " +
                                std::to_string(plane_cols_cap) + "]");
  if (!is_starred(cfg.kind))
    throw std::invalid_argument("back-and-forth explores starred kinds");
  if (cfg.prefix_rows < 2)
    throw std::invalid_argument("prefix must have at least 2 rows");
  if (cfg.stall_rounds < 1)
    throw std::invalid_argument("stall window must be >= 1");
  if (cfg.target <= 0 && cfg.budget_seconds <= 0 && cfg.max_restarts < 0)
    throw std::invalid_argument(
        "give a target, a budget, or a restart cap; the loop would not end");

  const auto start = std::chrono::steady_clock::now();
  const bool has_deadline = cfg.budget_seconds > 0;
  const auto deadline =
      start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(cfg.budget_seconds));
  auto remaining = [&]() -> double {
    if (!has_deadline) return 0;
    return std::chrono::duration<double>(deadline -
                                         std::chrono::steady_clock::now())
        .count();
  };

  std::mt19937_64 master(cfg.seed);
  auto next_seed = [&]() -> std::uint64_t {
    return cfg.seed == 0 ? 0 : master();
  };

  BackForthOutcome out;
  auto merge = [&](const SearchOutcome &so) {
    out.stats.nodes += so.stats.nodes;
    out.stats.cuts += so.stats.cuts;
    out.stats.max_depth = std::max(out.stats.max_depth, so.stats.max_depth);
    if (so.best.rows() > out.best.rows()) out.best = so.best;
  };
  auto finish = [&]() -> BackForthOutcome {
    out.stats.seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return out;
  };

  for (int segment = 0;; ++segment) {
    if (segment > 0) out.restarts = segment;
    if (cfg.max_restarts >= 0 && segment > cfg.max_restarts) return finish();
    if (has_deadline && remaining() <= 0) return finish();

    // Fresh prefix: a randomized canonical-tree descent stopped at depth d.
    SearchConfig rcfg;
    rcfg.n = cfg.n;
    rcfg.kind = cfg.kind;
    rcfg.target = cfg.prefix_rows;
    rcfg.seed = next_seed();
    rcfg.budget_seconds = has_deadline ? std::max(remaining(), 0.001) : 0;
    SearchOutcome rout = branch_search(rcfg);
    merge(rout);
    if (cfg.target > 0 && out.best.rows() >= cfg.target) {
      out.target_reached = true;
      return finish();
    }
    if (rout.best.rows() < 2) return finish(); // width admits no prefix
    BinaryMatrix prefix = rout.best;

    out.traces.emplace_back();
    std::vector<int> &trace = out.traces.back();
    for (;;) {
      if (has_deadline && remaining() <= 0) return finish();
      SearchConfig icfg;
      icfg.n = cfg.n;
      icfg.kind = cfg.kind;
      icfg.target = cfg.target;
      icfg.seed = next_seed();
      icfg.root = prefix;
      icfg.symmetry = false; // completions of a fixed prefix are not sorted
      icfg.budget_seconds = has_deadline ? std::max(remaining(), 0.001) : 0;
      SearchOutcome iout = branch_search(icfg);
      merge(iout);
      trace.push_back(iout.best.rows());
      if (iout.target_reached) {
        out.target_reached = true;
        return finish();
      }

      // Stalled: the row count matches the one from stall_rounds-1 steps
      // back (counts never decrease within a segment when reversal holds).
      const size_t t = trace.size();
      if (t >= static_cast<size_t>(cfg.stall_rounds) &&
          trace[t - 1] ==
              trace[t - static_cast<size_t>(cfg.stall_rounds)])
        break;

      BinaryMatrix rev = reverse(iout.best);
      BinaryMatrix head(cfg.n);
      for (int i = 1; i <= prefix.rows(); ++i) head.push_row(rev.row(i));
      BinaryMatrix cand = canonicalize(head);
      if (check(cand, cfg.kind).holds) {
        prefix = std::move(cand);
      } else {
        ++out.reversal_fallbacks;
        break; // draw a fresh random prefix in the next segment
      }
    }
  }
}

} // namespace ormat
