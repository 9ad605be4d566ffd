#include "ormat/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>
#include <memory>
#include <random>
#include <stdexcept>

#include "ormat/reference.hpp"

namespace ormat {

PairPlane::PairPlane(int n) : n_(n) {
  if (n < 1 || n > plane_cols_cap)
    throw std::invalid_argument("plane width must be in [1, " +
                                std::to_string(plane_cols_cap) + "]");
  const size_t q_count = size_t{1} << n;
  q_words_ = q_count <= 64 ? 1 : q_count / 64;
  q_mask_ = q_count >= 64 ? ~std::uint64_t{0}
                          : (std::uint64_t{1} << q_count) - 1;
  bits_.assign(q_count * q_words_, 0);
}

void PairPlane::fill() {
  std::fill(bits_.begin(), bits_.end(), q_mask_);
}

bool PairPlane::get(size_t r, size_t q) const {
  return (row(r)[q / 64] >> (q % 64)) & 1u;
}

std::uint64_t PairPlane::popcount() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return c;
}

EqTable::EqTable(int n) {
  n_ = n;
  const size_t q_count = size_t{1} << n;
  vals_mask_ = q_count - 1;
  q_words_ = q_count <= 64 ? 1 : q_count / 64;
  bits_.assign(static_cast<size_t>(n) * 2 * q_words_, 0);
  for (size_t q = 0; q < q_count; ++q)
    for (int k = 0; k < n; ++k) {
      const int b = (q >> k) & 1u;
      std::uint64_t *r = bits_.data() +
                         (static_cast<size_t>(k) * 2 + static_cast<size_t>(b)) * q_words_;
      r[q / 64] |= std::uint64_t{1} << (q % 64);
    }
  if (n > combo_cols_cap) return;
  const std::uint64_t q_mask =
      q_count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q_count) - 1;
  combo_.assign(q_count * q_count * q_words_, 0);
  // agree(cols, vals) = agree(cols - lowest column, vals) & eq(that column).
  for (size_t cols = 0; cols < q_count; ++cols)
    for (size_t vals = 0; vals < q_count; ++vals) {
      std::uint64_t *out = combo_.data() + ((cols << n) | vals) * q_words_;
      if (cols == 0) {
        for (size_t i = 0; i < q_words_; ++i) out[i] = q_mask;
        continue;
      }
      const int k = __builtin_ctzll(cols);
      const std::uint64_t *up =
          combo_.data() + (((cols & (cols - 1)) << n) | vals) * q_words_;
      const std::uint64_t *er = row(k, (vals >> k) & 1u);
      for (size_t i = 0; i < q_words_; ++i) out[i] = up[i] & er[i];
    }
}

namespace {

// One immutable table per width and thread; rebuilding it (with its agree
// closure) per search shows up when many small searches run, as in the
// exhaustive driver's per-root walks.
const EqTable &shared_eq_table(int n) {
  thread_local int cached_n = 0;
  thread_local std::unique_ptr<EqTable> cached;
  if (!cached || cached_n != n) {
    cached = std::make_unique<EqTable>(n);
    cached_n = n;
  }
  return *cached;
}

inline bool row_any(const std::uint64_t *p, size_t words) {
  for (size_t i = 0; i < words; ++i)
    if (p[i]) return true;
  return false;
}

// The q that agree with 'vals' on every column of 'cols': a table row when
// the width admits one, else an AND chain of eq rows built in 'scratch'.
inline const std::uint64_t *agree_mask(const EqTable &eq, row_bits cols,
                                       row_bits vals, std::uint64_t *scratch,
                                       size_t words, std::uint64_t mask) {
  if (const std::uint64_t *t = eq.agree(cols, vals)) return t;
  for (size_t i = 0; i < words; ++i) scratch[i] = mask;
  while (cols) {
    const int k = __builtin_ctzll(cols);
    cols &= cols - 1;
    const std::uint64_t *er = eq.row(k, (vals >> k) & 1u);
    for (size_t i = 0; i < words; ++i) scratch[i] &= er[i];
  }
  return scratch;
}

// Copy only the rows marked in 'live'; the rest keep stale contents,
// which every consumer screens off via the destination live mask.
void copy_plane_rows(const PairPlane &src, PairPlane &dst, int n,
                     const std::vector<std::uint64_t> &live) {
  if (!dst.allocated()) dst = PairPlane(n);
  const size_t words = src.q_words();
  for (size_t wi = 0; wi < live.size(); ++wi) {
    std::uint64_t lw = live[wi];
    while (lw) {
      const size_t r = wi * 64 + static_cast<size_t>(__builtin_ctzll(lw));
      lw &= lw - 1;
      std::copy(src.row(r), src.row(r) + words, dst.row(r));
    }
  }
}

// Hot loop of the search, templated on the compile-time word count per
// plane row (W = 0 keeps it dynamic) so the common narrow widths run
// without inner loops or calls.  Only rows live in 'src' are visited; the
// destination buffers are zeroed up front, so dead rows read as empty
// everywhere.  Returns the cut-set size.
template <size_t W>
std::uint32_t extend_rows(const PlaneSet &src, PlaneSet &dst, size_t q_count,
                          row_bits v, row_bits w, RegularityKind kind,
                          const EqTable &eq, const PairPlane *sec_src,
                          PairPlane *sec_dst, size_t words_dyn) {
  const size_t words = W ? W : words_dyn;
  (void)q_count;
  const std::uint64_t qmask = src.primary.q_mask();

  // Only rows that stay live are written; rows that die keep stale words
  // from an earlier use of the buffer, and every consumer screens rows
  // through dst.live first.
  std::uint64_t scratch[64]; // q_words <= 2^12/64 = 64
  std::uint32_t r_count = 0;
  for (size_t wi = 0; wi < words; ++wi) {
    std::uint64_t lw = src.live[wi];
    std::uint64_t dl = 0;
    while (lw) {
      const size_t r = wi * 64 + static_cast<size_t>(__builtin_ctzll(lw));
      lw &= lw - 1;
      const row_bits a = w & ~(static_cast<row_bits>(r) ^ v);
      if (a == 0) continue; // no window column can witness: row dies
      const std::uint64_t *sp = src.primary.row(r);
      std::uint64_t *dp = dst.primary.row(r);
      const std::uint64_t *bad = agree_mask(eq, a, ~v, scratch, words, qmask);
      std::uint64_t any = 0;
      for (size_t i = 0; i < words; ++i) {
        dp[i] = sp[i] & ~bad[i];
        any |= dp[i];
      }
      if (!any) continue;
      dl |= std::uint64_t{1} << (r % 64);

      if (sec_dst) {
        const std::uint64_t *ss = sec_src->row(r);
        std::uint64_t *sd = sec_dst->row(r);
        const row_bits b = w & (static_cast<row_bits>(r) ^ v);
        if (b != 0 && row_any(ss, words)) {
          const std::uint64_t *sb = agree_mask(eq, b, v, scratch, words, qmask);
          for (size_t i = 0; i < words; ++i) sd[i] = ss[i] & ~sb[i];
        } else {
          for (size_t i = 0; i < words; ++i) sd[i] = 0;
        }
      }

      // Count r into the cut set when its row of the kind's cut plane is
      // nonzero: or* uses the primary plane alone, sor* intersects the
      // relaxed plane, psor* the union of both parities.
      bool in_cut = false;
      if (kind == RegularityKind::ORstar) {
        in_cut = true;
      } else if (kind == RegularityKind::SORstar) {
        const std::uint64_t *x = dst.sec_a.row(r);
        for (size_t i = 0; i < words; ++i)
          if (dp[i] & x[i]) { in_cut = true; break; }
      } else {
        const std::uint64_t *x = dst.sec_a.row(r);
        const std::uint64_t *y = dst.sec_b.row(r);
        for (size_t i = 0; i < words; ++i)
          if (dp[i] & (x[i] | y[i])) { in_cut = true; break; }
      }
      if (in_cut) ++r_count;
    }
    dst.live[wi] = dl;
  }
  return r_count;
}

} // namespace

void plane_set_init(PlaneSet &ps, int n, RegularityKind kind) {
  if (!is_starred(kind))
    throw std::invalid_argument("plane sets exist for starred kinds only");
  if (!ps.primary.allocated()) ps.primary = PairPlane(n);
  ps.primary.fill();
  if (kind != RegularityKind::ORstar) {
    if (!ps.sec_a.allocated()) ps.sec_a = PairPlane(n);
    if (!ps.sec_b.allocated()) ps.sec_b = PairPlane(n);
    ps.sec_a.fill();
    ps.sec_b.fill();
  }
  ps.live.assign(ps.primary.q_words(), ps.primary.q_mask());
  ps.r_count = std::uint32_t{1} << n;
}

void plane_set_extend(const PlaneSet &src, PlaneSet &dst, row_bits u,
                      row_bits v, int window, int n, RegularityKind kind,
                      const EqTable &eq) {
  assert(&src != &dst);
  const size_t q_count = size_t{1} << n;
  const size_t words = src.primary.q_words();
  const row_bits colmask =
      n == 64 ? ~row_bits{0} : (row_bits{1} << n) - 1;
  const row_bits w = (u ^ v) & colmask;

  if (!dst.primary.allocated()) dst.primary = PairPlane(n);
  if (dst.live.size() != words) dst.live.assign(words, 0);

  // Which secondary plane this window filters (the other is copied).
  PairPlane const *sec_src = nullptr;
  PairPlane *sec_dst = nullptr;
  if (kind == RegularityKind::SORstar) {
    // New relaxed plane = old strict plane; strict additionally filters.
    copy_plane_rows(src.sec_b, dst.sec_a, n, src.live);
    if (!dst.sec_b.allocated()) dst.sec_b = PairPlane(n);
    sec_src = &src.sec_b;
    sec_dst = &dst.sec_b;
  } else if (kind == RegularityKind::PSORstar) {
    if (window == 1) {
      // Window 1 carries no secondary requirement for any landing row.
      copy_plane_rows(src.sec_a, dst.sec_a, n, src.live);
      copy_plane_rows(src.sec_b, dst.sec_b, n, src.live);
    } else if (window % 2 == 1) {
      copy_plane_rows(src.sec_b, dst.sec_b, n, src.live);
      if (!dst.sec_a.allocated()) dst.sec_a = PairPlane(n);
      sec_src = &src.sec_a;
      sec_dst = &dst.sec_a;
    } else {
      copy_plane_rows(src.sec_a, dst.sec_a, n, src.live);
      if (!dst.sec_b.allocated()) dst.sec_b = PairPlane(n);
      sec_src = &src.sec_b;
      sec_dst = &dst.sec_b;
    }
  }

  if (words == 1)
    dst.r_count = extend_rows<1>(src, dst, q_count, v, w, kind, eq, sec_src,
                                 sec_dst, words);
  else if (words == 2)
    dst.r_count = extend_rows<2>(src, dst, q_count, v, w, kind, eq, sec_src,
                                 sec_dst, words);
  else if (words == 4)
    dst.r_count = extend_rows<4>(src, dst, q_count, v, w, kind, eq, sec_src,
                                 sec_dst, words);
  else
    dst.r_count = extend_rows<0>(src, dst, q_count, v, w, kind, eq, sec_src,
                                 sec_dst, words);
}

PlaneSet plane_set_build(const BinaryMatrix &a, RegularityKind kind,
                         const EqTable &eq) {
  if (a.rows() < 1) throw std::invalid_argument("plane build needs a row");
  const int n = a.cols();
  PlaneSet cur, nxt;
  plane_set_init(cur, n, kind);
  for (int i = 1; i + 1 <= a.rows(); ++i) {
    plane_set_extend(cur, nxt, a.row(i), a.row(i + 1), i, n, kind, eq);
    std::swap(cur, nxt);
  }
  // Extending writes live rows only; scrub the rest so direct inspection of
  // the returned planes (the pair queries) sees zeros, not stale words.
  const size_t q_count = size_t{1} << n;
  const size_t words = cur.primary.q_words();
  for (size_t r = 0; r < q_count; ++r) {
    if ((cur.live[r / 64] >> (r % 64)) & 1u) continue;
    std::fill(cur.primary.row(r), cur.primary.row(r) + words, 0);
    if (cur.sec_a.allocated())
      std::fill(cur.sec_a.row(r), cur.sec_a.row(r) + words, 0);
    if (cur.sec_b.allocated())
      std::fill(cur.sec_b.row(r), cur.sec_b.row(r) + words, 0);
  }
  return cur;
}

void plane_set_q_row(const PlaneSet &ps, row_bits r, int rows,
                     RegularityKind kind, std::uint64_t *out) {
  const size_t words = ps.primary.q_words();
  if (!((ps.live[r / 64] >> (r % 64)) & 1u)) {
    // Dead rows may hold stale words from an earlier extension.
    for (size_t i = 0; i < words; ++i) out[i] = 0;
    return;
  }
  const std::uint64_t *p = ps.primary.row(r);
  for (size_t i = 0; i < words; ++i) out[i] = p[i];
  if (kind == RegularityKind::SORstar) {
    const std::uint64_t *s = ps.sec_a.row(r);
    for (size_t i = 0; i < words; ++i) out[i] &= s[i];
  } else if (kind == RegularityKind::PSORstar) {
    // New constraints land at j = rows; their parity selects the plane.
    const PairPlane &sel = (rows % 2 == 1) ? ps.sec_a : ps.sec_b;
    const std::uint64_t *s = sel.row(r);
    for (size_t i = 0; i < words; ++i) out[i] &= s[i];
  }
}

CompatiblePairs CompatiblePairs::build(const BinaryMatrix &a,
                                       RegularityKind kind) {
  if (!is_starred(kind))
    throw std::invalid_argument("compatible pairs exist for starred kinds only");
  if (a.rows() < 1) throw std::invalid_argument("prefix must be nonempty");
  if (a.cols() > plane_cols_cap)
    throw std::invalid_argument("width beyond the dense-plane cap");
  CompatiblePairs cp;
  cp.n_ = a.cols();
  cp.rows_ = a.rows();
  cp.kind_ = kind;
  cp.ps_ = plane_set_build(a, kind, shared_eq_table(a.cols()));
  return cp;
}

std::vector<row_bits> CompatiblePairs::r_set() const {
  std::vector<row_bits> out;
  const size_t q_count = size_t{1} << n_;
  const size_t words = ps_.primary.q_words();
  for (size_t r = 0; r < q_count; ++r) {
    const std::uint64_t *p = ps_.primary.row(r);
    bool live = false;
    for (size_t i = 0; i < words && !live; ++i) {
      std::uint64_t w = p[i];
      if (kind_ == RegularityKind::SORstar)
        w &= ps_.sec_a.row(r)[i];
      else if (kind_ == RegularityKind::PSORstar)
        w &= ps_.sec_a.row(r)[i] | ps_.sec_b.row(r)[i];
      live = w != 0;
    }
    if (live) out.push_back(static_cast<row_bits>(r));
  }
  return out;
}

std::vector<row_bits> CompatiblePairs::q_set(row_bits r) const {
  std::vector<std::uint64_t> buf(ps_.primary.q_words());
  plane_set_q_row(ps_, r, rows_, kind_, buf.data());
  std::vector<row_bits> out;
  for (size_t i = 0; i < buf.size(); ++i) {
    std::uint64_t w = buf[i];
    while (w) {
      out.push_back(static_cast<row_bits>(i * 64 +
                                          static_cast<size_t>(__builtin_ctzll(w))));
      w &= w - 1;
    }
  }
  return out;
}

namespace {

struct Level {
  PlaneSet planes;
  std::vector<std::uint16_t> children; // reused across siblings
  row_bits eq_cols = 0; // adjacent column pairs still equal after this row
};

class BranchEngine {
public:
  explicit BranchEngine(const SearchConfig &cfg) : cfg_(cfg) {
    if (cfg.n < 1 || cfg.n > plane_cols_cap)
      throw std::invalid_argument("search width must be in [1, " +
                                  std::to_string(plane_cols_cap) + "]");
    if (!is_starred(cfg.kind))
      throw std::invalid_argument("search explores starred kinds only");
    if (cfg.emit_depth > 0 && cfg.target > 0)
      throw std::invalid_argument("emit mode is incompatible with a target");
    n_ = cfg.n;
    kind_ = cfg.kind;
    colmask_ = n_ == 64 ? ~row_bits{0} : (row_bits{1} << n_) - 1;
    pair_mask_ = n_ >= 2 ? (row_bits{1} << (n_ - 1)) - 1 : 0;
    root_rows_ = 0;
    if (cfg.root && cfg.root->rows() > 0) {
      if (cfg.root->cols() != n_)
        throw std::invalid_argument("root width does not match n");
      if (!check(*cfg.root, kind_).holds)
        throw std::invalid_argument("root fails the " + kind_name(kind_) +
                                    " check");
      root_rows_ = cfg.root->rows();
    }
    symmetry_ = cfg.symmetry.value_or(root_rows_ == 0);
    best_rows_ = std::max(0, cfg.initial_best_rows);
    eq_ = &shared_eq_table(n_);
    rng_.seed(cfg.seed);
  }

  SearchOutcome run() {
    const auto start = std::chrono::steady_clock::now();
    has_deadline_ = cfg_.budget_seconds > 0;
    if (has_deadline_)
      deadline_ = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(cfg_.budget_seconds));

    row_stack_.clear();
    levels_.clear();
    levels_.emplace_back();
    // All column pairs start equal, so the sorted-column restriction prunes
    // from the first free row on; a rooted search recomputes this below.
    levels_[0].eq_cols = pair_mask_;
    int d0 = 0;
    if (root_rows_ > 0) {
      d0 = root_rows_;
      for (int i = 1; i <= d0; ++i) row_stack_.push_back(cfg_.root->row(i));
      while (static_cast<int>(levels_.size()) <= d0) levels_.emplace_back();
      levels_[static_cast<size_t>(d0)].planes =
          plane_set_build(*cfg_.root, kind_, *eq_);
      row_bits e = pair_mask_;
      for (row_bits r : row_stack_) e &= ~(r ^ (r >> 1));
      levels_[static_cast<size_t>(d0)].eq_cols = e & pair_mask_;
    }
    visit(d0);

    SearchOutcome out;
    out.best = best_;
    out.target_reached = target_reached_;
    out.exhausted = !truncated_ && !target_reached_;
    out.stats = stats_;
    out.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return out;
  }

private:
  BinaryMatrix materialize() const {
    return BinaryMatrix(n_, row_stack_);
  }

  // Returns false when the walk should unwind completely.
  bool visit(int d) {
    ++stats_.nodes;
    if (cfg_.node_budget && stats_.nodes > cfg_.node_budget) {
      truncated_ = true;
      return false;
    }
    if (has_deadline_ && (stats_.nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() >= deadline_) {
      truncated_ = true;
      return false;
    }
    stats_.max_depth = std::max(stats_.max_depth, d);
    if (d > best_rows_) {
      best_rows_ = d;
      best_ = materialize();
      if (cfg_.target > 0 && best_rows_ >= cfg_.target) {
        target_reached_ = true;
        return false;
      }
    }
    // Row-count bound: any matrix of a starred kind has at most 2^(n-1)+2
    // rows (the unstarred bound plus the duplicate row).
    assert(d <= (1 << (n_ - 1)) + 2);

    Level &lv = levels_[static_cast<size_t>(d)];
    if (cfg_.use_cutting && d >= 1) {
      // Row bound: the remaining rows d .. D-1 of any D-row completion are
      // pairwise distinct and every one keeps a nonzero row of the cut
      // plane, so D <= d + r_count.
      const int threshold = std::max(cfg_.target, best_rows_ + 1);
      if (d + static_cast<int>(lv.planes.r_count) < threshold) {
        ++stats_.cuts;
        return true;
      }
    }
    if (cfg_.emit_depth > 0 && d == cfg_.emit_depth) {
      if (!cfg_.emit_node(materialize())) {
        truncated_ = true;
        return false;
      }
      return true;
    }

    collect_children(d, lv);
    if (lv.children.empty()) return true;
    if (cfg_.seed != 0)
      std::shuffle(lv.children.begin(), lv.children.end(), rng_);
    else if (cfg_.lookahead_order && d >= 1 && lv.children.size() > 1)
      order_children(d, lv);

    if (static_cast<int>(levels_.size()) <= d + 1) levels_.emplace_back();
    // std::deque keeps 'lv' valid across the emplace above.
    std::vector<std::uint16_t> kids;
    kids.swap(lv.children); // keep the list stable while recursing
    bool cont = true;
    for (std::uint16_t q : kids) {
      Level &child = levels_[static_cast<size_t>(d) + 1];
      if (d == 0)
        plane_set_init(child.planes, n_, kind_);
      else
        plane_set_extend(lv.planes, child.planes, row_stack_.back(), q, d, n_,
                         kind_, *eq_);
      child.eq_cols = symmetry_ ? (lv.eq_cols & ~(q ^ (q >> 1)) & pair_mask_)
                                : 0;
      row_stack_.push_back(q);
      cont = visit(d + 1);
      row_stack_.pop_back();
      if (!cont) break;
    }
    kids.clear();
    lv.children.swap(kids);
    return cont;
  }

  // Most-promising child first: rank q by how many rows the parent planes
  // still allow after it (one window short of the child's true planes, so
  // an optimistic out-degree).  Ties keep ascending q, so the order is a
  // pure function of the prefix.
  void order_children(int d, Level &lv) {
    const size_t words = lv.planes.primary.q_words();
    std::uint64_t buf[64];
    scored_.clear();
    for (std::uint16_t q : lv.children) {
      plane_set_q_row(lv.planes, q, d + 1, kind_, buf);
      std::uint32_t deg = 0;
      for (size_t i = 0; i < words; ++i)
        deg += static_cast<std::uint32_t>(__builtin_popcountll(buf[i]));
      scored_.emplace_back(deg, q);
    }
    std::stable_sort(scored_.begin(), scored_.end(),
                     [](const auto &a, const auto &b) { return a.first > b.first; });
    for (size_t i = 0; i < scored_.size(); ++i) lv.children[i] = scored_[i].second;
  }

  void collect_children(int d, Level &lv) {
    lv.children.clear();
    if (d == 0) {
      if (symmetry_) {
        lv.children.push_back(0);
      } else {
        for (std::uint32_t q = 0; q < (std::uint32_t{1} << n_); ++q)
          lv.children.push_back(static_cast<std::uint16_t>(q));
      }
      return;
    }
    if (symmetry_ && d == 1) {
      // Row 2 may be fixed to the all-ones row: where rows 1 and 2 agree,
      // flipping the row-1 entry preserves every kind, so some extremal
      // matrix has row 2 equal to the negation of row 1.
      lv.children.push_back(static_cast<std::uint16_t>(colmask_));
      return;
    }
    std::uint64_t buf[64];
    plane_set_q_row(lv.planes, row_stack_.back(), d, kind_, buf);
    const size_t words = lv.planes.primary.q_words();
    for (size_t i = 0; i < words; ++i) {
      std::uint64_t w = buf[i];
      while (w) {
        const std::uint32_t q = static_cast<std::uint32_t>(
            i * 64 + static_cast<size_t>(__builtin_ctzll(w)));
        w &= w - 1;
        if (symmetry_) {
          // Keep columns sorted: a still-equal adjacent pair must not
          // receive (1, 0) in the new row.
          if (lv.eq_cols & q & ~(static_cast<row_bits>(q) >> 1)) continue;
        }
        lv.children.push_back(static_cast<std::uint16_t>(q));
      }
    }
  }

  SearchConfig cfg_;
  int n_ = 0;
  RegularityKind kind_ = RegularityKind::ORstar;
  row_bits colmask_ = 0, pair_mask_ = 0;
  int root_rows_ = 0;
  bool symmetry_ = true;
  const EqTable *eq_ = nullptr;
  std::deque<Level> levels_;
  std::vector<row_bits> row_stack_;
  std::vector<std::pair<std::uint32_t, std::uint16_t>> scored_;
  std::mt19937_64 rng_;
  BinaryMatrix best_;
  int best_rows_ = 0;
  SearchStats stats_;
  bool target_reached_ = false;
  bool truncated_ = false;
  bool has_deadline_ = false;
  std::chrono::steady_clock::time_point deadline_;
};

} // namespace

SearchOutcome branch_search(const SearchConfig &cfg) {
  BranchEngine engine(cfg);
  return engine.run();
}

int brute_force_extremal(int n, int m_cap, RegularityKind kind) {
  if (n < 1 || m_cap < 1 || n * m_cap > 21)
    throw std::invalid_argument("brute force guarded to n * m_cap <= 21");
  int best = is_starred(kind) ? 1 : 0;
  for (int m = 2; m <= m_cap; ++m) {
    const std::uint64_t total = std::uint64_t{1} << (n * m);
    bool found = false;
    for (std::uint64_t code = 0; code < total && !found; ++code) {
      std::vector<row_bits> rows(static_cast<size_t>(m));
      std::uint64_t c = code;
      const row_bits mask = (row_bits{1} << n) - 1;
      for (int i = 0; i < m; ++i) {
        rows[static_cast<size_t>(i)] = c & mask;
        c >>= n;
      }
      found = naive_check(BinaryMatrix(n, std::move(rows)), kind).holds;
    }
    if (!found) break;
    best = m;
  }
  return best;
}

} // namespace ormat
