#pragma once

// Order-regularity checking.  A matrix A with m rows is order-regular (OR)
// when every constraint pair (i, j), 1 <= i < j <= m, has a primary witness
// column k with
//
//   A[i][k] != A[i+1][k] == A[j][k] == A[j+1][k]
//
// under the convention that row m+1 reads as a copy of row m, and the last
// two rows differ.  (The row pattern at such a k is 0111 or 1000 read at
// rows i, i+1, j, j+1.)  The strengthened kinds additionally require a
// secondary witness column with pattern 0100 / 1011,
//
//   A[i][k] != A[i+1][k], A[i+1][k] != A[j][k], A[j][k] == A[j+1][k],
//
// for SOR on every pair with i+1 < j, and for PSOR on every pair with
// 1 < i < j < m and j - i even.  Starred kinds drop all constraints with
// j == m from both requirements as well as the distinct-last-rows rule;
// they describe matrices that still admit downward extension.
//
// Note the distinct-last-rows rule needs no separate code path: the primary
// witness set of constraint (m-1, m) degenerates to the set of columns where
// rows m-1 and m differ, so it is empty exactly when they coincide.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ormat/matrix.hpp"

namespace ormat {

enum class RegularityKind { OR, ORstar, SOR, SORstar, PSOR, PSORstar };

bool is_starred(RegularityKind k);
RegularityKind base_of(RegularityKind k);
RegularityKind star_of(RegularityKind k);

// "or", "or*", "sor", "sor*", "psor", "psor*" (case-insensitive; "star"
// accepted for "*").  Throws on anything else.
RegularityKind parse_kind(std::string_view name);
std::string kind_name(RegularityKind k);

struct Constraint {
  int i = 0;
  int j = 0; // 1 <= i < j <= m
  bool operator==(const Constraint &) const = default;
};

struct CheckResult {
  bool holds = false;
  // First violated constraint in scan order (j ascending, then i), and
  // whether the missing witness was the secondary one.  Meaningful only
  // when holds is false.
  Constraint violated{};
  bool secondary_missing = false;
};

// Witness column sets for one constraint, as column masks (bit k-1 =
// column k).  The two sets are disjoint by construction: a primary witness
// has A[i+1][k] == A[j][k], a secondary witness the opposite.
struct ConstraintWitnesses {
  row_bits primary = 0;
  row_bits secondary = 0;
};

// Whether 'kind' demands a strict secondary witness at constraint (i, j)
// of an m-row matrix; starred kinds drop every constraint with j == m.
bool secondary_required(RegularityKind kind, int i, int j, int m);

// Bitwise verdict for any of the six kinds.  Unstarred kinds require
// m >= 2; starred kinds accept m >= 1.  Runs in O(m^2) word operations.
CheckResult check(const BinaryMatrix &a, RegularityKind kind);

ConstraintWitnesses constraint_satisfied(const BinaryMatrix &a, Constraint c);

// All witness sets of an m-row matrix, indexed by constraint.  Quadratic
// storage, so materialization is capped (map_rows_cap) -- check() itself
// streams and has no cap.
class ConstraintMap {
public:
  ConstraintMap(int m, std::vector<ConstraintWitnesses> cells)
      : m_(m), cells_(std::move(cells)) {}

  int rows() const { return m_; }

  const ConstraintWitnesses &at(int i, int j) const {
    return cells_[index(i, j)];
  }

private:
  size_t index(int i, int j) const {
    if (i < 1 || i >= j || j > m_)
      throw std::out_of_range("constraint out of range");
    return static_cast<size_t>(j - 1) * (j - 2) / 2 +
           static_cast<size_t>(i - 1);
  }

  int m_;
  std::vector<ConstraintWitnesses> cells_; // (i,j) at (j-1)(j-2)/2 + i-1
};

inline constexpr int map_rows_cap = 4096;

ConstraintMap constraint_map(const BinaryMatrix &a);

// Text rendering of the witness structure: one output row per j = 2..m
// (top to bottom), one cell per i = 1..j-1 (left to right).  Cell legend:
// '.' no witness at all, '1' primary only, '2' secondary only, 'B' both.
std::string render_constraint_grid(const ConstraintMap &map);

// Same grid as a binary portable pixel-map (P6) with one pixel per cell on
// a white background:  '.' red, '1' green, '2' orange, 'B' blue.
std::string render_constraint_ppm(const ConstraintMap &map);

enum class StarDirection { to_star, from_star };

// OR matrices with m rows correspond to OR* matrices with m+1 rows:
// to_star appends a copy of the last row, from_star drops the last row.
// Preconditions: to_star needs an OR input, from_star an OR* input with at
// least 2 rows.  The same correspondence holds for SOR/SOR* (the unstarred
// secondary requirement already reaches j == m through the virtual row), but
// *not* for PSOR/PSOR*: PSOR never requires secondary witnesses at j == m,
// while PSOR* of the extended matrix does at j == m < m+1, and that can
// fail.  Passing a PSOR kind therefore throws.
BinaryMatrix or_star_bijection(const BinaryMatrix &a, StarDirection dir,
                               RegularityKind base_kind = RegularityKind::OR);

} // namespace ormat
