#include "ormat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ormat/constructions.hpp"
#include "ormat/search.hpp"

namespace ormat {

namespace {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("cannot read '" + path + "'");
  return ss.str();
}

BinaryMatrix load_matrix(const std::string &path) {
  try {
    return parse_matrix(read_file(path));
  } catch (const io_error &) {
    throw;
  } catch (const std::exception &e) {
    throw io_error(path + ": " + e.what());
  }
}

void write_file(const std::string &path, const std::string &data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << data;
  if (!out) throw io_error("cannot write '" + path + "'");
}

// Embedded-block lookup, tolerant of underscores ("psor35x8" = "psor_35x8").
const BuildingBlock *lookup_block(const std::string &name) {
  auto squeeze = [](const std::string &s) {
    std::string t;
    for (char c : s)
      if (c != '_') t += c;
    return t;
  };
  for (const BuildingBlock &b : embedded_blocks())
    if (b.name == name || squeeze(b.name) == squeeze(name)) return &b;
  return nullptr;
}

// --block values name either an embedded block or a matrix file.
BinaryMatrix resolve_block(const std::string &name) {
  if (const BuildingBlock *b = lookup_block(name)) return b->matrix;
  return load_matrix(name);
}

RegularityKind starred_kind_flag(const std::string &name) {
  RegularityKind k = parse_kind(name);
  if (!is_starred(k))
    throw CLI::ValidationError(
        "--kind", "search runs on starred kinds (e.g. '" +
                      kind_name(star_of(k)) +
                      "'); drop the last row of the result to read the " +
                      kind_name(k) + " answer");
  return k;
}

void print_search_header(std::ostream &out, RegularityKind kind,
                         const BinaryMatrix &best, int target,
                         bool target_reached) {
  out << "# kind: " << kind_name(kind) << "\n";
  out << "# rows: " << best.rows() << "\n";
  if (kind == RegularityKind::ORstar || kind == RegularityKind::SORstar)
    out << "# " << kind_name(base_of(kind)) << " rows: " << best.rows() - 1
        << "\n";
  if (target > 0)
    out << "# target " << target << (target_reached ? "" : " not")
        << " reached\n";
}

void print_stats(std::ostream &err, const SearchStats &st) {
  err << "# nodes=" << st.nodes << " cuts=" << st.cuts
      << " max_depth=" << st.max_depth << " seconds=" << st.seconds << "\n";
}

int cmd_verify(const std::string &kind_s, const std::string &file,
               std::ostream &out, std::ostream &err) {
  const RegularityKind kind = parse_kind(kind_s);
  const BinaryMatrix a = load_matrix(file);
  CheckResult r;
  try {
    r = check(a, kind);
  } catch (const std::exception &e) {
    throw io_error(file + ": " + e.what());
  }
  if (r.holds) {
    out << "HOLDS\n";
    return 0;
  }
  out << "VIOLATED (" << r.violated.i << "," << r.violated.j << ")\n";
  err << "# missing " << (r.secondary_missing ? "secondary" : "primary")
      << " witness\n";
  return 1;
}

int cmd_construct(const std::string &scheme_s, const std::string &block_s,
                  int levels, bool verify, bool allow_large, int pad,
                  std::ostream &out, std::ostream &err) {
  const Scheme scheme = scheme_of(scheme_s);
  BinaryMatrix m;
  if (scheme == Scheme::simple) {
    if (!block_s.empty())
      throw CLI::ValidationError("--block", "the simple scheme takes no block");
    m = construct_simple(levels, allow_large);
  } else {
    if (block_s.empty())
      throw CLI::ValidationError("--block", "this scheme needs a seed block");
    const BinaryMatrix block = resolve_block(block_s);
    m = scheme == Scheme::main ? construct_main(block, levels, allow_large)
                               : construct_modified(block, levels, allow_large);
  }
  if (pad > 0) m = pad_columns(m, pad);
  int rc = 0;
  err << "# constructed " << m.rows() << "x" << m.cols() << "\n";
  if (verify) {
    const CheckResult r = check(m, RegularityKind::OR);
    if (r.holds) {
      err << "# verify: or holds\n";
    } else {
      err << "# verify: or VIOLATED (" << r.violated.i << ","
          << r.violated.j << ")\n";
      rc = 1;
    }
  }
  out << emit_matrix(m);
  return rc;
}

int cmd_search(const SearchConfig &cfg, std::ostream &out, std::ostream &err) {
  const SearchOutcome o = branch_search(cfg);
  print_search_header(out, cfg.kind, o.best, cfg.target, o.target_reached);
  out << "# exhausted: " << (o.exhausted ? "yes" : "no") << "\n";
  out << emit_matrix(o.best);
  print_stats(err, o.stats);
  return cfg.target > 0 && !o.target_reached ? 1 : 0;
}

int cmd_exhaustive(ExhaustiveConfig cfg, std::ostream &out, std::ostream &err) {
  cfg.on_progress = [&err](const ExhaustiveProgress &p) {
    err << "# progress roots=" << p.roots_done << "+" << p.roots_skipped
        << "/" << p.roots_emitted << " nodes=" << p.nodes
        << " best=" << p.best_rows << " seconds=" << p.seconds
        << (p.done ? " done" : "") << "\n";
  };
  const ExhaustiveOutcome o = exhaustive_parallel(cfg);
  if (o.failed) {
    err << "# worker failure: " << o.failure << "\n";
    print_stats(err, o.stats);
    return 3;
  }
  out << "# kind: " << kind_name(cfg.kind) << "\n";
  out << "# extremal star rows: " << o.extremal_star_rows << "\n";
  if (o.extremal_rows >= 0)
    out << "# extremal " << kind_name(base_of(cfg.kind))
        << " rows: " << o.extremal_rows << "\n";
  out << "# exhausted: " << (o.exhausted ? "yes" : "no") << "\n";
  out << emit_matrix(o.best);
  err << "# roots total=" << o.roots_total << " searched=" << o.roots_searched
      << " skipped=" << o.roots_skipped << "\n";
  print_stats(err, o.stats);
  return 0;
}

int cmd_baf(const BackForthConfig &cfg, std::ostream &out, std::ostream &err) {
  const BackForthOutcome o = back_and_forth(cfg);
  print_search_header(out, cfg.kind, o.best, cfg.target, o.target_reached);
  out << emit_matrix(o.best);
  err << "# restarts=" << o.restarts
      << " reversal_fallbacks=" << o.reversal_fallbacks << " traces=";
  for (size_t s = 0; s < o.traces.size(); ++s) {
    if (s) err << ";";
    for (size_t i = 0; i < o.traces[s].size(); ++i)
      err << (i ? "," : "") << o.traces[s][i];
  }
  err << "\n";
  print_stats(err, o.stats);
  return cfg.target > 0 && !o.target_reached ? 1 : 0;
}

int cmd_map(const std::string &file, const std::string &png,
            std::ostream &out, std::ostream &err) {
  const BinaryMatrix a = load_matrix(file);
  ConstraintMap map = [&] {
    try {
      return constraint_map(a);
    } catch (const std::exception &e) {
      throw io_error(file + ": " + e.what());
    }
  }();
  out << render_constraint_grid(map);
  if (!png.empty()) {
    write_file(png, render_constraint_ppm(map));
    err << "# wrote " << png << " (" << map.rows() - 1 << "x"
        << map.rows() - 1 << " P6)\n";
  }
  return 0;
}

int cmd_blocks(const std::string &emit, std::ostream &out) {
  if (!emit.empty()) {
    const BuildingBlock *b = lookup_block(emit);
    if (!b) throw std::invalid_argument("no embedded block named '" + emit + "'");
    out << emit_matrix(b->matrix);
    return 0;
  }
  for (const BuildingBlock &b : embedded_blocks())
    out << b.name << " " << kind_name(b.kind) << " " << b.matrix.rows() << "x"
        << b.matrix.cols() << "\n";
  return 0;
}

int cmd_bounds(const std::string &scheme_s, const std::string &block_s,
               int levels, std::ostream &out) {
  Scheme scheme;
  int rows = 0, cols = 0;
  std::string label;
  if (block_s.empty() || block_s == "simple") {
    scheme = scheme_s.empty() ? Scheme::simple : scheme_of(scheme_s);
    if (scheme != Scheme::simple)
      throw CLI::ValidationError("--scheme", "that scheme needs a block");
    label = "simple";
  } else {
    const BuildingBlock *blk = lookup_block(block_s);
    BinaryMatrix m = blk ? blk->matrix : load_matrix(block_s);
    rows = m.rows();
    cols = m.cols();
    if (!scheme_s.empty())
      scheme = scheme_of(scheme_s);
    else if (blk && blk->kind == RegularityKind::SOR)
      scheme = Scheme::main;
    else if (blk && blk->kind == RegularityKind::PSOR)
      scheme = Scheme::modified;
    else if (check(m, RegularityKind::SOR).holds)
      scheme = Scheme::main;
    else
      scheme = Scheme::modified;
    label = block_s + " (" + std::to_string(rows) + "x" +
            std::to_string(cols) + ")";
  }
  out << "# scheme: " << scheme_name(scheme) << " block: " << label << "\n";
  out << "# level rows cols rate\n";
  char buf[64];
  for (const ConstructionReport &r : bound_table(scheme, rows, cols, levels)) {
    std::snprintf(buf, sizeof buf, "%.5f", r.rate);
    out << r.level << " ";
    if (r.rows_exact)
      out << r.rows;
    else
      out << "-";
    out << " " << r.cols << " " << buf << "\n";
  }
  std::snprintf(buf, sizeof buf, "%.5f",
                asymptotic_rate(scheme, rows, cols));
  out << "# asymptotic rate: " << buf << "\n";
  return 0;
}

} // namespace

int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
  CLI::App app{"order-regular matrix toolkit"};
  app.require_subcommand(1);

  // verify
  auto *verify = app.add_subcommand("verify", "check a matrix file");
  std::string v_kind = "or", v_file;
  verify->add_option("--kind", v_kind, "or|or*|sor|sor*|psor|psor*");
  verify->add_option("file", v_file, "matrix file ('-' for stdin)")->required();

  // construct
  auto *construct = app.add_subcommand("construct", "build a matrix");
  std::string c_scheme = "simple", c_block;
  int c_levels = 1, c_pad = 0;
  bool c_verify = false, c_large = false;
  construct->add_option("--scheme", c_scheme, "simple|main|modified");
  construct->add_option("--block", c_block, "embedded block name or file");
  construct->add_option("--levels", c_levels, "recursion level")->required();
  construct->add_flag("--verify", c_verify, "check the result");
  construct->add_flag("--allow-large", c_large, "permit >1e5 rows");
  construct->add_option("--pad", c_pad, "append this many all-zero columns");

  // search
  auto *search = app.add_subcommand("search", "single branch search");
  int s_n = 0, s_target = 0;
  std::string s_kind = "or*", s_root;
  std::uint64_t s_seed = 0;
  double s_budget = 0;
  bool s_nocut = false, s_nosym = false, s_sym = false;
  search->add_option("--n", s_n, "columns")->required();
  search->add_option("--kind", s_kind, "starred kind");
  search->add_option("--target", s_target, "stop at this many rows");
  search->add_option("--seed", s_seed, "0 = ascending child order");
  search->add_option("--budget", s_budget, "seconds");
  search->add_option("--root", s_root, "fixed prefix file");
  search->add_flag("--no-cutting", s_nocut, "disable subtree cutting");
  search->add_flag("--no-symmetry", s_nosym, "disable symmetry pruning");
  search->add_flag("--symmetry", s_sym, "force symmetry pruning");

  // exhaustive
  auto *exh = app.add_subcommand("exhaustive", "parallel full enumeration");
  ExhaustiveConfig e_cfg;
  std::string e_kind = "or*";
  exh->add_option("--n", e_cfg.n, "columns")->required();
  exh->add_option("--kind", e_kind, "starred kind");
  exh->add_option("--split-depth", e_cfg.split_depth, "subtree root depth");
  exh->add_option("--workers", e_cfg.workers,
                  "0 = ORMAT_WORKERS env or hardware");
  exh->add_option("--seed", e_cfg.seed, "subtree child order");
  exh->add_option("--resume", e_cfg.journal, "journal file (created/resumed)");
  exh->add_option("--budget", e_cfg.budget_seconds, "seconds");
  double e_progress = 5;
  exh->add_option("--progress", e_progress, "progress interval (0 = off)");

  // baf
  auto *baf = app.add_subcommand("baf", "back-and-forth local search");
  BackForthConfig b_cfg;
  std::string b_kind = "sor*";
  baf->add_option("--n", b_cfg.n, "columns")->required();
  baf->add_option("--d", b_cfg.prefix_rows, "prefix rows");
  baf->add_option("--kind", b_kind, "starred kind");
  baf->add_option("--stall", b_cfg.stall_rounds, "stall window");
  baf->add_option("--seed", b_cfg.seed, "0 = deterministic descent");
  baf->add_option("--target", b_cfg.target, "stop at this many rows");
  baf->add_option("--budget", b_cfg.budget_seconds, "seconds");
  baf->add_option("--restarts", b_cfg.max_restarts, "-1 = unbounded");

  // map
  auto *map = app.add_subcommand("map", "render the witness grid");
  std::string m_file, m_png;
  map->add_option("file", m_file, "matrix file")->required();
  map->add_option("--png", m_png, "also write a P6 pixel map here");

  // blocks
  auto *blocks = app.add_subcommand("blocks", "list embedded blocks");
  std::string k_emit;
  blocks->add_option("--emit", k_emit, "print this block's matrix");

  // bounds
  auto *bounds = app.add_subcommand("bounds", "growth-rate table");
  std::string d_scheme, d_block;
  int d_levels = 10;
  bounds->add_option("--scheme", d_scheme, "simple|main|modified");
  bounds->add_option("--block", d_block, "embedded block, file, or 'simple'");
  bounds->add_option("--levels", d_levels, "levels to tabulate");

  std::reverse(args.begin(), args.end()); // CLI11 consumes back to front
  try {
    app.parse(args);

    if (*verify) return cmd_verify(v_kind, v_file, out, err);
    if (*construct)
      return cmd_construct(c_scheme, c_block, c_levels, c_verify, c_large,
                           c_pad, out, err);
    if (*search) {
      SearchConfig cfg;
      cfg.n = s_n;
      cfg.kind = starred_kind_flag(s_kind);
      cfg.target = s_target;
      cfg.seed = s_seed;
      cfg.budget_seconds = s_budget;
      cfg.use_cutting = !s_nocut;
      if (!s_root.empty()) cfg.root = load_matrix(s_root);
      if (s_sym && s_nosym)
        throw CLI::ValidationError("--symmetry", "contradicts --no-symmetry");
      if (s_sym) cfg.symmetry = true;
      if (s_nosym) cfg.symmetry = false;
      return cmd_search(cfg, out, err);
    }
    if (*exh) {
      e_cfg.kind = starred_kind_flag(e_kind);
      e_cfg.progress_seconds = e_progress;
      return cmd_exhaustive(e_cfg, out, err);
    }
    if (*baf) {
      b_cfg.kind = starred_kind_flag(b_kind);
      return cmd_baf(b_cfg, out, err);
    }
    if (*map) return cmd_map(m_file, m_png, out, err);
    if (*blocks) return cmd_blocks(k_emit, out);
    if (*bounds) return cmd_bounds(d_scheme, d_block, d_levels, out);
    return 2;
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const io_error &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

} // namespace ormat
