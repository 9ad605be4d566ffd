#include "ormat/reference.hpp"

#include <stdexcept>

namespace ormat {

namespace {

// Entry (r, k) with row m+1 reading as row m.
bool entry(const BinaryMatrix &a, int r, int k) {
  if (r == a.rows() + 1) r = a.rows();
  return a.bit(r, k);
}

bool primary_witness(const BinaryMatrix &a, int i, int j, int k) {
  return entry(a, i, k) != entry(a, i + 1, k) &&
         entry(a, i + 1, k) == entry(a, j, k) &&
         entry(a, j, k) == entry(a, j + 1, k);
}

bool secondary_witness(const BinaryMatrix &a, int i, int j, int k) {
  return entry(a, i, k) != entry(a, i + 1, k) &&
         entry(a, i + 1, k) != entry(a, j, k) &&
         entry(a, j, k) == entry(a, j + 1, k);
}

bool has_primary(const BinaryMatrix &a, int i, int j) {
  for (int k = 1; k <= a.cols(); ++k)
    if (primary_witness(a, i, j, k)) return true;
  return false;
}

bool has_secondary(const BinaryMatrix &a, int i, int j) {
  for (int k = 1; k <= a.cols(); ++k)
    if (secondary_witness(a, i, j, k)) return true;
  return false;
}

} // namespace

CheckResult naive_check(const BinaryMatrix &a, RegularityKind kind) {
  const int m = a.rows();
  if (m == 0) throw std::invalid_argument("check needs at least one row");
  if (!is_starred(kind) && m < 2)
    throw std::invalid_argument("unstarred kinds need at least two rows");
  const int j_hi = is_starred(kind) ? m - 1 : m;
  for (int j = 2; j <= j_hi; ++j) {
    for (int i = 1; i < j; ++i) {
      if (!has_primary(a, i, j)) return {false, {i, j}, false};
      if (secondary_required(kind, i, j, m) && !has_secondary(a, i, j))
        return {false, {i, j}, true};
    }
  }
  if (!is_starred(kind)) {
    bool distinct = false;
    for (int k = 1; k <= a.cols(); ++k)
      if (a.bit(m - 1, k) != a.bit(m, k)) distinct = true;
    if (!distinct) return {false, {m - 1, m}, false};
  }
  return {true, {}, false};
}

ConstraintWitnesses naive_constraint_satisfied(const BinaryMatrix &a,
                                               Constraint c) {
  if (c.i < 1 || c.i >= c.j || c.j > a.rows())
    throw std::invalid_argument("constraint out of range");
  ConstraintWitnesses w;
  for (int k = 1; k <= a.cols(); ++k) {
    if (primary_witness(a, c.i, c.j, k)) w.primary |= row_bits{1} << (k - 1);
    if (secondary_witness(a, c.i, c.j, k)) w.secondary |= row_bits{1} << (k - 1);
  }
  return w;
}

} // namespace ormat
