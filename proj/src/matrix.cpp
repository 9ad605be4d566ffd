#include "ormat/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace ormat {

BinaryMatrix Pattern::realize(int blocks) const {
  if (top.cols() != bottom.cols())
    throw std::invalid_argument("pattern blocks must have equal width");
  if (blocks < 0) throw std::invalid_argument("block count must be >= 0");
  BinaryMatrix out(top.cols());
  out.reserve(static_cast<size_t>(blocks) *
              static_cast<size_t>(std::max(top.rows(), bottom.rows())));
  for (int s = 1; s <= blocks; ++s) {
    const BinaryMatrix &blk = (s % 2 == 1) ? top : bottom;
    for (int i = 1; i <= blk.rows(); ++i) out.push_row(blk.row(i));
  }
  return out;
}

BinaryMatrix parse_matrix(std::string_view text) {
  std::vector<row_bits> rows;
  int n_cols = -1;
  size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
      line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    if (static_cast<int>(line.size()) > max_cols)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": more than 64 columns");
    if (n_cols < 0)
      n_cols = static_cast<int>(line.size());
    else if (static_cast<int>(line.size()) != n_cols)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": ragged row (expected " +
                                  std::to_string(n_cols) + " columns)");
    row_bits r = 0;
    for (size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '1')
        r |= row_bits{1} << k;
      else if (line[k] != '0')
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": character outside {0,1}");
    }
    rows.push_back(r);
  }
  if (rows.empty()) return BinaryMatrix{};
  return BinaryMatrix(n_cols, std::move(rows));
}

std::string row_text(const BinaryMatrix &a, int i) {
  std::string s(static_cast<size_t>(a.cols()), '0');
  row_bits r = a.row(i);
  for (int k = 0; k < a.cols(); ++k)
    if ((r >> k) & 1u) s[static_cast<size_t>(k)] = '1';
  return s;
}

std::string emit_matrix(const BinaryMatrix &a) {
  std::string out;
  out.reserve(static_cast<size_t>(a.rows()) *
              (static_cast<size_t>(a.cols()) + 1));
  for (int i = 1; i <= a.rows(); ++i) {
    out += row_text(a, i);
    out += '\n';
  }
  return out;
}

BinaryMatrix negate_columns(const BinaryMatrix &a, row_bits mask) {
  if (mask & ~a.col_mask())
    throw std::invalid_argument("negation mask names columns beyond the width");
  std::vector<row_bits> rows = a.row_words();
  for (row_bits &r : rows) r ^= mask;
  return BinaryMatrix(a.cols(), std::move(rows));
}

BinaryMatrix tilde(const BinaryMatrix &a) {
  if (a.empty()) throw std::invalid_argument("tilde of an empty matrix");
  return negate_columns(a, a.row(1) ^ a.row(a.rows()));
}

BinaryMatrix glue(const BinaryMatrix &a, int blocks) {
  if (blocks < 1) throw std::invalid_argument("glue needs at least one block");
  return Pattern{a, tilde(a)}.realize(blocks);
}

BinaryMatrix reverse(const BinaryMatrix &a) {
  BinaryMatrix out(a.cols());
  out.reserve(static_cast<size_t>(a.rows()));
  for (int i = 1; i <= a.rows(); ++i) {
    row_bits r = a.row(a.rows() + 1 - i);
    if (i % 2 == 0) r ^= a.col_mask();
    out.push_row(r);
  }
  return out;
}

namespace {

// Column k as a bitstring read top to bottom, packed MSB-first so that
// lexicographic word comparison equals lexicographic bit comparison.
std::vector<row_bits> column_key(const BinaryMatrix &a, int k) {
  std::vector<row_bits> key((static_cast<size_t>(a.rows()) + 63) / 64, 0);
  for (int i = 1; i <= a.rows(); ++i)
    if (a.bit(i, k))
      key[static_cast<size_t>(i - 1) / 64] |=
          row_bits{1} << (63 - ((i - 1) % 64));
  return key;
}

} // namespace

BinaryMatrix canonicalize(const BinaryMatrix &a) {
  if (a.rows() < 2)
    throw std::invalid_argument("canonical form needs at least 2 rows");
  BinaryMatrix b = negate_columns(a, a.row(1));
  assert(b.row(1) == 0);
  std::vector<std::vector<row_bits>> keys;
  keys.reserve(static_cast<size_t>(b.cols()));
  for (int k = 1; k <= b.cols(); ++k) keys.push_back(column_key(b, k));
  std::vector<int> order(static_cast<size_t>(b.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return keys[static_cast<size_t>(x)] < keys[static_cast<size_t>(y)];
  });
  BinaryMatrix out(b.cols());
  out.reserve(static_cast<size_t>(b.rows()));
  for (int i = 1; i <= b.rows(); ++i) {
    row_bits src = b.row(i), dst = 0;
    for (int p = 0; p < b.cols(); ++p)
      if ((src >> order[static_cast<size_t>(p)]) & 1u) dst |= row_bits{1} << p;
    out.push_row(dst);
  }
  return out;
}

bool is_canonical(const BinaryMatrix &a) {
  if (a.rows() < 2) return false;
  if (a.row(1) != 0) return false;
  for (int k = 1; k < a.cols(); ++k)
    if (column_key(a, k) > column_key(a, k + 1)) return false;
  return true;
}

} // namespace ormat
