#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "ormat/search.hpp"

// Parallel driver.  One producer streams canonical subtree roots at a fixed
// split depth; workers pull roots from a bounded queue and run independent
// subtree searches.  Every per-subtree quantity (best matrix, node count)
// depends only on the root's content, so sums and the (rows, text)-ordered
// best are identical whatever the worker count or scheduling -- the shared
// best is deliberately *not* fed back into worker pruning, which would make
// results timing-dependent.  A journal file records finished subtrees, so a
// killed run can resume by skipping them; the journal stores each subtree's
// best and counters to keep resumed totals equal to fresh ones.

namespace ormat {

namespace {

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string hex16(std::uint64_t h) {
  char b[17];
  std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(h));
  return b;
}

std::string encode_rows(const BinaryMatrix &m) {
  if (m.rows() == 0) return "-"; // subtree produced nothing above the seed
  std::string out;
  for (int i = 1; i <= m.rows(); ++i) {
    if (i > 1) out += ',';
    char b[20];
    std::snprintf(b, sizeof b, "%llx",
                  static_cast<unsigned long long>(m.row(i)));
    out += b;
  }
  return out;
}

BinaryMatrix decode_rows(int n, const std::string &s) {
  BinaryMatrix m(n);
  if (s == "-") return m;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    m.push_row(std::strtoull(tok.c_str(), nullptr, 16));
  return m;
}

struct Shared {
  std::mutex mu;
  std::condition_variable cv_push, cv_pop, cv_report;
  std::deque<BinaryMatrix> queue;
  bool closed = false;
  bool report_stop = false;
  static constexpr size_t queue_cap = 1024;

  BinaryMatrix best;
  std::string best_text;
  SearchStats stats;
  bool any_truncated = false;
  bool failed = false;
  std::string failure;
  std::uint64_t roots_searched = 0, roots_skipped = 0;

  std::unordered_set<std::uint64_t> done; // read-only while threads run
  std::ofstream journal;
  bool has_journal = false;

  std::atomic<std::uint64_t> a_emitted{0}, a_done{0}, a_skipped{0}, a_nodes{0};
  std::atomic<int> a_best{0};
};

// Total order on results so the merged best is schedule-independent.
void merge_best(Shared &sh, const BinaryMatrix &m) {
  std::string text = emit_matrix(m);
  if (m.rows() > sh.best.rows() ||
      (m.rows() == sh.best.rows() && text < sh.best_text)) {
    sh.best = m;
    sh.best_text = std::move(text);
    sh.a_best.store(sh.best.rows(), std::memory_order_relaxed);
  }
}

std::string journal_header(const ExhaustiveConfig &cfg, int split) {
  std::ostringstream os;
  os << "# ormat exhaustive n=" << cfg.n << " kind=" << kind_name(cfg.kind)
     << " split=" << split << " seed=" << cfg.seed;
  return os.str();
}

// Node budget of the lower-bound pass run before the enumeration.  A node
// budget (never a time budget) keeps the seed matrix -- and with it every
// downstream cut, journal line, and the merged outcome -- a pure function
// of the configuration.
constexpr std::uint64_t seed_pass_nodes = 2'000'000;

} // namespace

ExhaustiveOutcome exhaustive_parallel(const ExhaustiveConfig &cfg) {
  if (cfg.n < 1 || cfg.n > plane_cols_cap)
    throw std::invalid_argument("width must be in [1, " +
                                std::to_string(plane_cols_cap) + "]");
  if (!is_starred(cfg.kind))
    throw std::invalid_argument("exhaustive search explores starred kinds");

  int split = cfg.split_depth;
  if (split <= 0) split = std::min(6, std::max(4, cfg.n - 1));

  int workers = cfg.workers;
  if (workers <= 0) {
    if (const char *env = std::getenv("ORMAT_WORKERS")) workers = std::atoi(env);
    if (workers <= 0)
      workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }

  const auto start = std::chrono::steady_clock::now();
  const bool has_deadline = cfg.budget_seconds > 0;
  const auto deadline =
      start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(cfg.budget_seconds));

  Shared sh;

  // Lower-bound seeding: a short lookahead-ordered search realizes some
  // deep matrix first, and its row count primes the incumbent of the
  // producer and of every subtree search.  Cutting against a realized
  // lower bound never hides a strictly larger matrix, so the extremal
  // answer is untouched, but subtrees that cannot beat the seed now die
  // at their root instead of re-climbing from scratch.
  SearchConfig seed_cfg;
  seed_cfg.n = cfg.n;
  seed_cfg.kind = cfg.kind;
  seed_cfg.lookahead_order = true;
  seed_cfg.node_budget = seed_pass_nodes;
  const SearchOutcome seed_out = branch_search(seed_cfg);
  const int seed_rows = seed_out.best.rows();
  sh.stats.nodes += seed_out.stats.nodes;
  sh.stats.cuts += seed_out.stats.cuts;
  sh.stats.max_depth = std::max(sh.stats.max_depth, seed_out.stats.max_depth);
  sh.a_nodes.fetch_add(seed_out.stats.nodes, std::memory_order_relaxed);
  merge_best(sh, seed_out.best);

  // Journal: replay finished subtrees, then append to the file.
  if (!cfg.journal.empty()) {
    const std::string header = journal_header(cfg, split);
    std::ifstream in(cfg.journal);
    if (in) {
      std::string line;
      bool first = true;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
          first = false;
          if (line != header)
            throw std::invalid_argument(
                "journal belongs to a different run configuration: " + line);
          continue;
        }
        std::istringstream ls(line);
        std::string digest, rows_s, nodes_s, cuts_s, enc;
        if (!(ls >> digest >> rows_s >> nodes_s >> cuts_s >> enc)) continue;
        sh.done.insert(std::strtoull(digest.c_str(), nullptr, 16));
        sh.stats.nodes += std::strtoull(nodes_s.c_str(), nullptr, 10);
        sh.stats.cuts += std::strtoull(cuts_s.c_str(), nullptr, 10);
        BinaryMatrix m = decode_rows(cfg.n, enc);
        sh.stats.max_depth = std::max(sh.stats.max_depth, m.rows());
        merge_best(sh, m);
      }
      in.close();
      sh.journal.open(cfg.journal, std::ios::app);
    } else {
      sh.journal.open(cfg.journal, std::ios::out);
      sh.journal << header << "\n" << std::flush;
    }
    if (!sh.journal)
      throw std::runtime_error("cannot open journal '" + cfg.journal + "'");
    sh.has_journal = true;
  }

  auto remaining = [&]() -> double {
    if (!has_deadline) return 0;
    const double left = std::chrono::duration<double>(
                            deadline - std::chrono::steady_clock::now())
                            .count();
    return left > 0 ? left : -1;
  };

  std::thread producer([&] {
    try {
      SearchConfig ecfg;
      ecfg.n = cfg.n;
      ecfg.kind = cfg.kind;
      ecfg.seed = cfg.seed;
      ecfg.symmetry = true;
      ecfg.initial_best_rows = seed_rows;
      ecfg.budget_seconds = has_deadline ? std::max(remaining(), 0.001) : 0;
      ecfg.emit_depth = split;
      ecfg.emit_node = [&](const BinaryMatrix &m) {
        std::unique_lock<std::mutex> lk(sh.mu);
        sh.cv_push.wait(lk, [&] {
          return sh.queue.size() < Shared::queue_cap || sh.failed;
        });
        if (sh.failed) return false;
        sh.queue.push_back(m);
        sh.a_emitted.fetch_add(1, std::memory_order_relaxed);
        sh.cv_pop.notify_one();
        return true;
      };
      SearchOutcome out = branch_search(ecfg);
      std::lock_guard<std::mutex> lk(sh.mu);
      sh.stats.nodes += out.stats.nodes;
      sh.stats.cuts += out.stats.cuts;
      sh.stats.max_depth = std::max(sh.stats.max_depth, out.stats.max_depth);
      sh.a_nodes.fetch_add(out.stats.nodes, std::memory_order_relaxed);
      if (!out.exhausted) sh.any_truncated = true;
      if (out.best.rows() > 0) merge_best(sh, out.best);
    } catch (const std::exception &e) {
      std::lock_guard<std::mutex> lk(sh.mu);
      sh.failed = true;
      sh.failure = e.what();
    }
    std::lock_guard<std::mutex> lk(sh.mu);
    sh.closed = true;
    sh.cv_pop.notify_all();
  });

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        BinaryMatrix root;
        {
          std::unique_lock<std::mutex> lk(sh.mu);
          sh.cv_pop.wait(lk, [&] { return !sh.queue.empty() || sh.closed; });
          if (sh.queue.empty()) return;
          root = std::move(sh.queue.front());
          sh.queue.pop_front();
          sh.cv_push.notify_one();
        }
        try {
          const std::string text = emit_matrix(root);
          const std::uint64_t digest = fnv1a(text);
          if (sh.done.count(digest)) {
            sh.a_skipped.fetch_add(1, std::memory_order_relaxed);
            std::lock_guard<std::mutex> lk(sh.mu);
            ++sh.roots_skipped;
            continue;
          }
          double left = remaining();
          if (has_deadline && left < 0) {
            std::lock_guard<std::mutex> lk(sh.mu);
            sh.any_truncated = true;
            continue;
          }
          SearchConfig scfg;
          scfg.n = cfg.n;
          scfg.kind = cfg.kind;
          scfg.seed = cfg.seed == 0 ? 0 : splitmix64(cfg.seed ^ digest);
          scfg.root = root;
          scfg.symmetry = true; // roots come from the canonical enumeration
          scfg.initial_best_rows = seed_rows;
          // No lookahead ordering here: with the best row count already
          // seeded the cut threshold is fixed, so visiting order cannot
          // shrink a root's tree — ordering would be pure overhead.
          scfg.budget_seconds = has_deadline ? left : 0;
          SearchOutcome out = branch_search(scfg);
          sh.a_done.fetch_add(1, std::memory_order_relaxed);
          sh.a_nodes.fetch_add(out.stats.nodes, std::memory_order_relaxed);
          std::lock_guard<std::mutex> lk(sh.mu);
          sh.stats.nodes += out.stats.nodes;
          sh.stats.cuts += out.stats.cuts;
          sh.stats.max_depth =
              std::max(sh.stats.max_depth, out.stats.max_depth);
          if (out.exhausted) {
            ++sh.roots_searched;
            merge_best(sh, out.best);
            if (sh.has_journal)
              sh.journal << hex16(digest) << ' ' << out.best.rows() << ' '
                         << out.stats.nodes << ' ' << out.stats.cuts << ' '
                         << encode_rows(out.best) << "\n"
                         << std::flush;
          } else {
            sh.any_truncated = true;
          }
        } catch (const std::exception &e) {
          std::lock_guard<std::mutex> lk(sh.mu);
          sh.failed = true;
          sh.failure = e.what();
          sh.cv_push.notify_all();
          sh.cv_pop.notify_all();
          return;
        }
      }
    });
  }

  std::thread reporter;
  if (cfg.progress_seconds > 0 && cfg.on_progress) {
    reporter = std::thread([&] {
      std::unique_lock<std::mutex> lk(sh.mu);
      while (!sh.report_stop) {
        if (sh.cv_report.wait_for(
                lk, std::chrono::duration<double>(cfg.progress_seconds),
                [&] { return sh.report_stop; }))
          break;
        ExhaustiveProgress p;
        p.roots_emitted = sh.a_emitted.load(std::memory_order_relaxed);
        p.roots_done = sh.a_done.load(std::memory_order_relaxed);
        p.roots_skipped = sh.a_skipped.load(std::memory_order_relaxed);
        p.nodes = sh.a_nodes.load(std::memory_order_relaxed);
        p.best_rows = sh.a_best.load(std::memory_order_relaxed);
        p.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        lk.unlock();
        cfg.on_progress(p);
        lk.lock();
      }
    });
  }

  producer.join();
  for (std::thread &t : pool) t.join();
  if (reporter.joinable()) {
    {
      std::lock_guard<std::mutex> g(sh.mu);
      sh.report_stop = true;
    }
    sh.cv_report.notify_all();
    reporter.join();
  }

  ExhaustiveOutcome out;
  out.best = sh.best;
  out.extremal_star_rows = sh.best.rows();
  if (cfg.kind == RegularityKind::ORstar || cfg.kind == RegularityKind::SORstar)
    out.extremal_rows = out.extremal_star_rows - 1;
  out.failed = sh.failed;
  out.failure = sh.failure;
  out.exhausted = !sh.any_truncated && !sh.failed;
  out.roots_total = sh.a_emitted.load();
  out.roots_searched = sh.roots_searched;
  out.roots_skipped = sh.roots_skipped;
  out.stats = sh.stats;
  out.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (cfg.progress_seconds > 0 && cfg.on_progress) {
    ExhaustiveProgress p;
    p.roots_emitted = out.roots_total;
    p.roots_done = sh.a_done.load();
    p.roots_skipped = out.roots_skipped;
    p.nodes = sh.a_nodes.load();
    p.best_rows = out.extremal_star_rows;
    p.seconds = out.stats.seconds;
    p.done = true;
    cfg.on_progress(p);
  }
  return out;
}

} // namespace ormat
