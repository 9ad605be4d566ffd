#pragma once

// Depth-first search for row-maximal starred matrices.
//
// A matrix passing the starred check with d rows can be grown one row at a
// time; appending q to A keeps the starred property exactly when the newly
// activated constraints (i, d), i < d, gain their witnesses.  Those
// conditions only mention q through the pair (last row, q), which makes the
// admissible extensions a function of one bit-plane per condition family:
//
//   primary plane   P[r][q]: every window i so far has a column k with
//                   A[i][k] != A[i+1][k] == r[k] == q[k]
//   secondary       S[r][q]: analogous with A[i+1][k] != r[k] == q[k],
//                   tracked only over the windows whose secondary
//                   requirement applies to the kind.
//
// Appending a row filters each plane by one new window in O(4^n / 64) word
// operations; the admissible next rows after r are the set bits of row r of
// the intersected planes.  Two standard prunings keep the tree small:
//
//   cutting    rows d..D-1 of any D-row completion are pairwise distinct
//              first elements of compatible pairs, so D <= d + |R| with R
//              the rows whose plane row is nonempty; subtrees that cannot
//              reach the target (or beat the best so far) are dropped.
//   symmetry   column negations and column permutations preserve all six
//              kinds, and flipping a first-row entry where rows 1 and 2
//              agree never breaks one, so the tree may fix row 1 = 0...0,
//              row 2 = 1...1 and visit only column-sorted prefixes.
//
// Symmetry pruning defaults to off when an explicit root prefix is given
// (its completions need not be column-sorted); the parallel driver turns it
// back on because its roots come out of the canonical enumeration itself.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ormat/regularity.hpp"

namespace ormat {

// Dense planes hold 4^n bits each; beyond this width they do not fit.
inline constexpr int plane_cols_cap = 12;

// 2^n x 2^n bit-plane indexed by row-value pairs (r, q).
class PairPlane {
public:
  PairPlane() = default;
  explicit PairPlane(int n);

  bool allocated() const { return !bits_.empty(); }
  size_t q_words() const { return q_words_; }
  std::uint64_t q_mask() const { return q_mask_; } // valid bits per word

  std::uint64_t *row(size_t r) { return bits_.data() + r * q_words_; }
  const std::uint64_t *row(size_t r) const { return bits_.data() + r * q_words_; }

  void fill();
  bool get(size_t r, size_t q) const;
  std::uint64_t popcount() const;

private:
  int n_ = -1;
  size_t q_words_ = 0;
  std::uint64_t q_mask_ = 0;
  std::vector<std::uint64_t> bits_;
};

// eq(k, b) = bitset over q of "column k+1 of q equals b"; the building
// block for plane filtering (intersections of such rows describe exactly
// the q that fail a window).
//
// For widths up to combo_cols_cap the 2^n x 2^n closure of those
// intersections fits in memory, so agree(cols, vals) — the q that agree
// with vals on every column of cols — is precomputed; the filter loop then
// replaces its per-column AND chain with one lookup.
inline constexpr int combo_cols_cap = 8;

class EqTable {
public:
  EqTable() = default;
  explicit EqTable(int n);
  const std::uint64_t *row(int k, int b) const {
    return bits_.data() + (static_cast<size_t>(k) * 2 + static_cast<size_t>(b)) * q_words_;
  }
  // Null unless n <= combo_cols_cap; bits of vals outside cols are ignored.
  const std::uint64_t *agree(row_bits cols, row_bits vals) const {
    if (combo_.empty()) return nullptr;
    const size_t idx = (static_cast<size_t>(cols) << n_) |
                       (static_cast<size_t>(vals) & vals_mask_);
    return combo_.data() + idx * q_words_;
  }
  size_t q_words() const { return q_words_; }

private:
  int n_ = 0;
  size_t vals_mask_ = 0;
  size_t q_words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> combo_;
};

// The plane state of one search prefix.  sec_a / sec_b are kind-dependent:
//   or*    unused
//   sor*   sec_a tracks windows 1..d-2 (what a new row must satisfy),
//          sec_b tracks windows 1..d-1 (what later rows must satisfy)
//   psor*  sec_a tracks odd windows >= 3, sec_b even windows >= 2
// r_count counts rows r whose row of the kind's cut plane is nonempty.
//
// live is a bitset over r of "primary row r is nonzero"; filtering skips
// dead rows, which is where the deep-tree time goes.  Extension writes the
// plane rows of live rows only — dead rows may hold stale words from an
// earlier use of the buffer, so consumers check the live bit before
// reading a row (plane_set_build scrubs dead rows for direct inspection).
struct PlaneSet {
  PairPlane primary;
  PairPlane sec_a;
  PairPlane sec_b;
  std::vector<std::uint64_t> live; // q_words() words
  std::uint32_t r_count = 0;
};

void plane_set_init(PlaneSet &ps, int n, RegularityKind kind);

// dst := src filtered by the window (u, v) at 1-based index 'window'; dst
// must be a distinct object.  Updates dst.r_count.
void plane_set_extend(const PlaneSet &src, PlaneSet &dst, row_bits u,
                      row_bits v, int window, int n, RegularityKind kind,
                      const EqTable &eq);

// Plane state of a whole prefix, built window by window from scratch.
PlaneSet plane_set_build(const BinaryMatrix &a, RegularityKind kind,
                         const EqTable &eq);

// Word-AND of the plane rows that govern appending after last row r when
// the prefix has 'rows' rows; out must hold q_words() words.
void plane_set_q_row(const PlaneSet &ps, row_bits r, int rows,
                     RegularityKind kind, std::uint64_t *out);

// Compatible-pair queries for a fixed prefix; a thin wrapper over the
// planes used by the search, for inspection and tests.
class CompatiblePairs {
public:
  // 'kind' must be starred; 'a' nonempty and within plane_cols_cap.
  static CompatiblePairs build(const BinaryMatrix &a, RegularityKind kind);

  int width() const { return n_; }
  RegularityKind kind() const { return kind_; }

  std::uint64_t pair_count() const { return ps_.primary.popcount(); }
  bool contains(row_bits r, row_bits q) const { return ps_.primary.get(r, q); }

  // Rows usable as future first elements (the cutting set).
  std::vector<row_bits> r_set() const;

  // Rows that may follow when r is the current last row.
  std::vector<row_bits> q_set(row_bits r) const;

private:
  int n_ = 0;
  int rows_ = 0;
  RegularityKind kind_ = RegularityKind::ORstar;
  PlaneSet ps_;
};

struct SearchConfig {
  int n = 0;
  RegularityKind kind = RegularityKind::ORstar; // starred kinds only
  int target = 0;          // stop once a matrix with this many rows is found
  std::uint64_t seed = 0;  // 0 = ascending child order, else per-node shuffle
  std::optional<BinaryMatrix> root; // fixed prefix; must pass the starred check
  std::optional<bool> symmetry;     // default: on without root, off with one
  bool use_cutting = true;
  double budget_seconds = 0; // 0 = unlimited

  // With seed 0, visit children most-promising first instead of ascending:
  // promise = how many rows could follow the child under the constraints
  // known so far (one window short, so an optimistic out-degree).  Reaches
  // deep matrices much sooner; used by the drivers to grow lower bounds.
  bool lookahead_order = false;

  // Deterministic truncation: stop after visiting this many nodes (0 =
  // unlimited).  Unlike a time budget this keeps the outcome a pure
  // function of the configuration.
  std::uint64_t node_budget = 0;

  // Start the incumbent at this row count without a witness matrix.  The
  // search then only reports matrices that beat it; everything else is cut
  // against it.  Lets a driver push a global lower bound into independent
  // subtree searches without sharing state.
  int initial_best_rows = 0;

  // Subtree-root streaming for the parallel driver: nodes at exactly this
  // depth are handed to emit_node instead of being descended into; a false
  // return stops the walk.  Incompatible with 'target'.
  int emit_depth = 0;
  std::function<bool(const BinaryMatrix &)> emit_node;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t cuts = 0;
  int max_depth = 0;
  double seconds = 0;
};

struct SearchOutcome {
  BinaryMatrix best;
  bool target_reached = false;
  bool exhausted = false; // whole subtree visited (no budget/target stop)
  SearchStats stats;
};

// Deterministic for fixed configuration: with seed 0 the first row-maximal
// matrix in ascending child order is returned.
SearchOutcome branch_search(const SearchConfig &cfg);

struct ExhaustiveProgress {
  std::uint64_t roots_emitted = 0;
  std::uint64_t roots_done = 0;
  std::uint64_t roots_skipped = 0;
  std::uint64_t nodes = 0;
  int best_rows = 0;
  double seconds = 0;
  bool done = false;
};

struct ExhaustiveConfig {
  int n = 0;
  RegularityKind kind = RegularityKind::ORstar;
  int split_depth = 0; // 0 = auto
  int workers = 0;     // 0 = ORMAT_WORKERS env var, else hardware threads
  std::uint64_t seed = 0;
  std::string journal;       // checkpoint file: loaded if present, appended to
  double budget_seconds = 0; // 0 = none; an interrupted run is resumable
  double progress_seconds = 0; // 0 = no progress callbacks
  std::function<void(const ExhaustiveProgress &)> on_progress;
};

struct ExhaustiveOutcome {
  BinaryMatrix best;
  int extremal_star_rows = 0;
  // Largest unstarred row count, via the duplicate-row correspondence:
  // star rows - 1 for or*/sor*, -1 (not derivable) for psor*.
  int extremal_rows = -1;
  bool exhausted = false;
  bool failed = false;
  std::string failure;
  std::uint64_t roots_total = 0, roots_searched = 0, roots_skipped = 0;
  SearchStats stats;
};

// Canonical-tree enumeration split at a fixed depth: one thread streams
// subtree roots, a worker pool searches each subtree independently with a
// seed derived from the root's content, results merge by (rows, emitted
// text).  The outcome is therefore a function of the configuration alone,
// independent of worker count and scheduling, and a journal makes
// interrupted runs resumable.
ExhaustiveOutcome exhaustive_parallel(const ExhaustiveConfig &cfg);

struct BackForthConfig {
  int n = 0;
  int prefix_rows = 8; // d: rows carried from one direction to the other
  RegularityKind kind = RegularityKind::SORstar;
  std::uint64_t seed = 0;
  int stall_rounds = 3; // stop a segment when the row count repeats this far back
  int target = 0;
  double budget_seconds = 0;
  int max_restarts = -1; // -1 = until budget or target
};

struct BackForthOutcome {
  BinaryMatrix best;
  bool target_reached = false;
  int restarts = 0;
  std::uint64_t reversal_fallbacks = 0; // reversed prefix failed revalidation
  std::vector<std::vector<int>> traces; // row counts per iteration, per segment
  SearchStats stats;
};

// Alternating-direction local search: search down from a d-row prefix, then
// reverse the best matrix found and keep its first d rows as the next
// prefix.  Reversal preserves sor*, so there the row counts never decrease
// within a segment; for or*/psor* the reversed prefix is revalidated and a
// fresh random prefix is drawn when it fails.
BackForthOutcome back_and_forth(const BackForthConfig &cfg);

// Independent ground truth for tiny sizes: enumerate all 2^(m n) matrices
// per row count with the naive checker.  Returns the largest m <= m_cap
// admitting a matrix of the kind.  Guarded to n * m_cap <= 21.
int brute_force_extremal(int n, int m_cap,
                         RegularityKind kind = RegularityKind::OR);

} // namespace ormat
