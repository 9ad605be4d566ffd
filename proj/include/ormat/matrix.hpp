#pragma once

// Binary matrices over {0,1} stored one row per 64-bit word.  Rows and
// columns are 1-based throughout; column k of a row lives at bit (k-1),
// so parsing the row text left to right fills bits from the LSB upward.
// Width is capped at 64 columns, which covers every matrix this toolkit
// handles (extremal instances live at n <= 8, constructions at n <= 40).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ormat {

using row_bits = std::uint64_t;

inline constexpr int max_cols = 64;

class BinaryMatrix {
public:
  BinaryMatrix() = default; // empty 0x0

  explicit BinaryMatrix(int n_cols) : n_cols_(n_cols) { validate_width(n_cols); }

  BinaryMatrix(int n_cols, std::vector<row_bits> rows)
      : n_cols_(n_cols), rows_(std::move(rows)) {
    validate_width(n_cols);
    if (!rows_.empty() && n_cols_ == 0)
      throw std::invalid_argument("matrix with rows must have at least one column");
    for (row_bits &r : rows_) r &= col_mask();
  }

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return n_cols_; }
  bool empty() const { return rows_.empty(); }

  // 1-based row access; row words never carry bits beyond col_mask().
  row_bits row(int i) const { return rows_[static_cast<size_t>(i) - 1]; }
  bool bit(int i, int k) const { return (row(i) >> (k - 1)) & 1u; }

  row_bits col_mask() const {
    return n_cols_ == 64 ? ~row_bits{0} : (row_bits{1} << n_cols_) - 1;
  }

  void push_row(row_bits r) {
    if (n_cols_ == 0)
      throw std::invalid_argument("matrix with rows must have at least one column");
    rows_.push_back(r & col_mask());
  }

  void reserve(size_t m) { rows_.reserve(m); }

  const std::vector<row_bits> &row_words() const { return rows_; }

  bool operator==(const BinaryMatrix &o) const = default;

private:
  static void validate_width(int n) {
    if (n < 0 || n > max_cols)
      throw std::invalid_argument("column count must be in [0, 64]");
  }

  int n_cols_ = 0;
  std::vector<row_bits> rows_;
};

// A vertical block pattern <top/bottom>: 'realize (blocks)' stacks that many
// copies alternating top, bottom, top, ...  With 1x1 blocks this is the
// alternating column pattern <a/b> (entry r is 'top' for odd r).
struct Pattern {
  BinaryMatrix top;
  BinaryMatrix bottom;

  BinaryMatrix realize(int blocks) const;
};

// Text format: one row per line, characters '0'/'1', column 1 first.  Blank
// lines and lines whose first non-blank character is '#' are skipped.  CRLF
// input is tolerated.  Errors: ragged rows, characters outside {0,1}, more
// than 64 columns.
BinaryMatrix parse_matrix(std::string_view text);

// Inverse of parse_matrix: rows joined by '\n' with a trailing newline; the
// empty matrix emits the empty string.  parse_matrix(emit_matrix(a)) == a.
std::string emit_matrix(const BinaryMatrix &a);

std::string row_text(const BinaryMatrix &a, int i);

// Flip every column in 'mask' (bit k-1 = column k).  Involution.
BinaryMatrix negate_columns(const BinaryMatrix &a, row_bits mask);

// Negate exactly the columns where first and last row disagree.  The first
// row of tilde(a) equals the last row of a (and vice versa), which is what
// makes glued copies line up.
BinaryMatrix tilde(const BinaryMatrix &a);

// Stack 'blocks' total copies alternating a, tilde(a), a, ...
BinaryMatrix glue(const BinaryMatrix &a, int blocks);

// Row i of the result is row m+1-i of the input, negated for even i.  An
// involution when the row count is odd.
BinaryMatrix reverse(const BinaryMatrix &a);

// Canonical representative of the column-negation + column-permutation
// orbit: negate every column whose first entry is 1 (making row 1 all-zero),
// then stably sort columns as bitstrings read top to bottom, row 1 most
// significant, in non-decreasing order.  Requires at least 2 rows.
BinaryMatrix canonicalize(const BinaryMatrix &a);

bool is_canonical(const BinaryMatrix &a);

} // namespace ormat
