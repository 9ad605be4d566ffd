#include "ormat/constructions.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ormat {

const std::vector<BuildingBlock> &embedded_blocks() {
  static const std::vector<BuildingBlock> blocks = [] {
    std::vector<BuildingBlock> b{
        {"extremal_5x3", RegularityKind::PSOR, parse_matrix(
             "000\n"
             "111\n"
             "001\n"
             "011\n"
             "010\n")},
        {"extremal_8x4", RegularityKind::OR, parse_matrix(
             "0000\n"
             "1111\n"
             "0001\n"
             "0111\n"
             "0010\n"
             "0110\n"
             "0100\n"
             "1100\n")},
        {"sor_3x2", RegularityKind::SOR, parse_matrix(
             "00\n"
             "11\n"
             "01\n")},
        {"sor_33x8", RegularityKind::SOR, parse_matrix(
             "00000000\n"
             "11111111\n"
             "00000001\n"
             "01111111\n"
             "00000010\n"
             "10111111\n"
             "00000100\n"
             "10011111\n"
             "01001000\n"
             "10011110\n"
             "00101000\n"
             "10011010\n"
             "01111000\n"
             "10010001\n"
             "01011100\n"
             "10010000\n"
             "01011000\n"
             "10011001\n"
             "00001100\n"
             "00011011\n"
             "00110100\n"
             "00011010\n"
             "00111100\n"
             "00011001\n"
             "00010100\n"
             "00011111\n"
             "00000101\n"
             "01010111\n"
             "00100111\n"
             "01000111\n"
             "11100111\n"
             "01100011\n"
             "01100111\n")},
        {"psor_35x8", RegularityKind::PSOR, parse_matrix(
             "00000000\n"
             "11111111\n"
             "00000001\n"
             "01111111\n"
             "00000010\n"
             "10111111\n"
             "10000100\n"
             "01011111\n"
             "11000001\n"
             "11011110\n"
             "10001001\n"
             "01101110\n"
             "10001000\n"
             "01111100\n"
             "00001000\n"
             "01111001\n"
             "11010000\n"
             "00111010\n"
             "01100000\n"
             "11111010\n"
             "01101000\n"
             "11001010\n"
             "11101001\n"
             "10101110\n"
             "11101000\n"
             "11100110\n"
             "11101011\n"
             "10100010\n"
             "01101010\n"
             "01110010\n"
             "00100011\n"
             "01000011\n"
             "11100011\n"
             "01100010\n"
             "01100011\n")},
    };
    for (const BuildingBlock &blk : b) {
      if (!check(blk.matrix, blk.kind).holds)
        throw std::logic_error("embedded block '" + blk.name +
                               "' fails its declared kind check");
    }
    return b;
  }();
  return blocks;
}

const BuildingBlock &find_block(const std::string &name) {
  for (const BuildingBlock &b : embedded_blocks())
    if (b.name == name) return b;
  throw std::invalid_argument("no embedded block named '" + name + "'");
}

namespace {

void guard_rows(long long rows, bool allow_large) {
  if (rows > large_rows_cap && !allow_large)
    throw std::invalid_argument(
        "construction would have " + std::to_string(rows) +
        " rows; pass allow_large to go past " + std::to_string(large_rows_cap));
}

} // namespace

BinaryMatrix construct_simple(int levels, bool allow_large) {
  if (levels < 1) throw std::invalid_argument("level must be >= 1");
  if (levels > 62) throw std::invalid_argument("level too large");
  if (2 * levels - 1 > max_cols)
    throw std::invalid_argument("construction wider than 64 columns");
  guard_rows(1LL << levels, allow_large);
  BinaryMatrix a(1, {0, 1});
  for (int l = 2; l <= levels; ++l) {
    const int n = a.cols();
    BinaryMatrix t = tilde(a);
    BinaryMatrix next(n + 2);
    next.reserve(2 * static_cast<size_t>(a.rows()));
    // Top half: previous level with two columns alternating 0,1,0,1,...
    for (int i = 1; i <= a.rows(); ++i) {
      row_bits extra = (i % 2 == 0) ? (row_bits{3} << n) : 0;
      next.push_row(a.row(i) | extra);
    }
    // Bottom half: tilde twin with a constant 1-column and 0-column.
    for (int i = 1; i <= t.rows(); ++i)
      next.push_row(t.row(i) | (row_bits{1} << n));
    a = std::move(next);
  }
  return a;
}

namespace {

// Shared body of the main and modified schemes; 'modified' selects the
// alternate bookkeeping columns.
BinaryMatrix construct_blockwise(const BinaryMatrix &block, int levels,
                                 bool modified, bool allow_large) {
  if (levels < 1) throw std::invalid_argument("level must be >= 1");
  const int M = block.rows(), N = block.cols();
  if (M < 3 || M % 2 == 0)
    throw std::invalid_argument("seed block needs an odd row count >= 3");
  const RegularityKind need =
      modified ? RegularityKind::PSOR : RegularityKind::SOR;
  if (!check(block, need).holds)
    throw std::invalid_argument("seed block is not " + kind_name(need));

  long long rows = M, cols = N;
  for (int l = 2; l <= levels; ++l) {
    if (rows > (1LL << 40) / M)
      throw std::invalid_argument("level too large");
    rows *= M;
    cols += N + 2;
    if (cols > max_cols)
      throw std::invalid_argument("construction wider than 64 columns");
  }
  guard_rows(rows, allow_large);

  BinaryMatrix a = block;
  for (int l = 2; l <= levels; ++l) {
    const int n = a.cols(), m_prev = a.rows();
    BinaryMatrix c = glue(a, M);
    BinaryMatrix next(n + N + 2);
    next.reserve(static_cast<size_t>(c.rows()));
    for (int g = 1; g <= c.rows(); ++g) {
      const int s = (g - 1) / m_prev + 1;   // slice 1..M
      const int rel = (g - 1) % m_prev + 1; // row within the slice
      const bool odd_row = rel % 2 == 1;
      // D: column k repeats the block pair (B[s][k], B[s+1][k]) down the
      // slice, with row M+1 of the block reading as row M.
      const int s_below = s < M ? s + 1 : M;
      row_bits d = odd_row ? block.row(s) : block.row(s_below);
      // E: two columns, patterns chosen by slice parity; the modified
      // variant swaps in <0/1>,<0/1> at slice 1 and <0/0>,<0/0> at slice M.
      bool e1, e2;
      const bool alt = !odd_row; // pattern <0/1> reads 1 on even rows
      if (!modified) {
        e1 = (s % 2 == 1) && alt;
        e2 = (s % 2 == 0) && alt;
      } else if (s == 1) {
        e1 = alt;
        e2 = alt;
      } else if (s == M) {
        e1 = false;
        e2 = false;
      } else {
        e1 = (s % 2 == 1) && alt;
        e2 = (s % 2 == 0) && alt;
      }
      row_bits r = c.row(g) | (d << n);
      if (e1) r |= row_bits{1} << (n + N);
      if (e2) r |= row_bits{1} << (n + N + 1);
      next.push_row(r);
    }
    a = std::move(next);
    assert(a.rows() == static_cast<long long>(m_prev) * M);
  }
  return a;
}

} // namespace

BinaryMatrix construct_main(const BinaryMatrix &block, int levels,
                            bool allow_large) {
  return construct_blockwise(block, levels, false, allow_large);
}

BinaryMatrix construct_modified(const BinaryMatrix &block, int levels,
                                bool allow_large) {
  return construct_blockwise(block, levels, true, allow_large);
}

Scheme scheme_of(const std::string &name) {
  if (name == "simple") return Scheme::simple;
  if (name == "main") return Scheme::main;
  if (name == "modified") return Scheme::modified;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string scheme_name(Scheme s) {
  switch (s) {
  case Scheme::simple: return "simple";
  case Scheme::main: return "main";
  case Scheme::modified: return "modified";
  }
  return "?";
}

std::vector<ConstructionReport> bound_table(Scheme scheme, int block_rows,
                                            int block_cols, int max_level) {
  if (max_level < 1) throw std::invalid_argument("level must be >= 1");
  if (scheme != Scheme::simple && (block_rows < 3 || block_cols < 1))
    throw std::invalid_argument("block dimensions out of range");
  std::vector<ConstructionReport> out;
  out.reserve(static_cast<size_t>(max_level));
  for (int l = 1; l <= max_level; ++l) {
    ConstructionReport r;
    r.level = l;
    double log_rows;
    if (scheme == Scheme::simple) {
      log_rows = l * std::log(2.0);
      r.cols = 2LL * l - 1;
    } else {
      log_rows = l * std::log(static_cast<double>(block_rows));
      r.cols = static_cast<long long>(l) * block_cols + 2 * (l - 1);
    }
    r.rate = std::exp(log_rows / static_cast<double>(r.cols));
    r.rows_exact = log_rows < 63.9 * std::log(2.0);
    if (r.rows_exact) {
      unsigned long long rows = 1;
      for (int t = 0; t < l; ++t)
        rows *= scheme == Scheme::simple
                    ? 2ULL
                    : static_cast<unsigned long long>(block_rows);
      r.rows = rows;
    }
    out.push_back(r);
  }
  return out;
}

double asymptotic_rate(Scheme scheme, int block_rows, int block_cols) {
  if (scheme == Scheme::simple) return std::sqrt(2.0);
  return std::exp(std::log(static_cast<double>(block_rows)) /
                  static_cast<double>(block_cols + 2));
}

BinaryMatrix pad_columns(const BinaryMatrix &a, int count) {
  if (count < 0 || a.cols() + count > max_cols)
    throw std::invalid_argument("padded width out of range");
  return BinaryMatrix(a.cols() + count, a.row_words());
}

} // namespace ormat
