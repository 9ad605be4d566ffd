#include "ormat/regularity.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace ormat {

bool is_starred(RegularityKind k) {
  return k == RegularityKind::ORstar || k == RegularityKind::SORstar ||
         k == RegularityKind::PSORstar;
}

RegularityKind base_of(RegularityKind k) {
  switch (k) {
  case RegularityKind::ORstar: return RegularityKind::OR;
  case RegularityKind::SORstar: return RegularityKind::SOR;
  case RegularityKind::PSORstar: return RegularityKind::PSOR;
  default: return k;
  }
}

RegularityKind star_of(RegularityKind k) {
  switch (k) {
  case RegularityKind::OR: return RegularityKind::ORstar;
  case RegularityKind::SOR: return RegularityKind::SORstar;
  case RegularityKind::PSOR: return RegularityKind::PSORstar;
  default: return k;
  }
}

RegularityKind parse_kind(std::string_view name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  bool star = false;
  if (s.size() >= 1 && s.back() == '*') {
    star = true;
    s.pop_back();
  } else if (s.size() > 4 && s.substr(s.size() - 4) == "star") {
    star = true;
    s.resize(s.size() - 4);
  }
  if (!s.empty() && s.back() == '_') s.pop_back();
  RegularityKind base;
  if (s == "or") base = RegularityKind::OR;
  else if (s == "sor") base = RegularityKind::SOR;
  else if (s == "psor") base = RegularityKind::PSOR;
  else throw std::invalid_argument("unknown regularity kind: '" + std::string(name) + "'");
  return star ? star_of(base) : base;
}

std::string kind_name(RegularityKind k) {
  switch (k) {
  case RegularityKind::OR: return "or";
  case RegularityKind::ORstar: return "or*";
  case RegularityKind::SOR: return "sor";
  case RegularityKind::SORstar: return "sor*";
  case RegularityKind::PSOR: return "psor";
  case RegularityKind::PSORstar: return "psor*";
  }
  return "?";
}

bool secondary_required(RegularityKind kind, int i, int j, int m) {
  if (is_starred(kind) && j == m) return false; // no constraints end there
  switch (base_of(kind)) {
  case RegularityKind::SOR: return i + 1 < j;
  case RegularityKind::PSOR: return 1 < i && j < m && (j - i) % 2 == 0;
  default: return false;
  }
}

namespace {

// Row j+1 with the virtual-copy convention at the bottom edge.
inline row_bits row_below(const BinaryMatrix &a, int j) {
  return a.row(j < a.rows() ? j + 1 : a.rows());
}

inline ConstraintWitnesses witnesses_at(const BinaryMatrix &a, int i, int j) {
  const row_bits mask = a.col_mask();
  const row_bits d = a.row(i) ^ a.row(i + 1);        // A[i] != A[i+1]
  const row_bits e = ~(a.row(i + 1) ^ a.row(j));     // A[i+1] == A[j]
  const row_bits f = ~(a.row(j) ^ row_below(a, j));  // A[j] == A[j+1]
  ConstraintWitnesses w;
  w.primary = d & e & f & mask;
  w.secondary = d & ~e & f & mask;
  assert((w.primary & w.secondary) == 0);
  return w;
}

void validate_for_check(const BinaryMatrix &a, RegularityKind kind) {
  if (a.rows() == 0)
    throw std::invalid_argument("check needs at least one row");
  if (!is_starred(kind) && a.rows() < 2)
    throw std::invalid_argument("unstarred kinds need at least two rows");
}

} // namespace

CheckResult check(const BinaryMatrix &a, RegularityKind kind) {
  validate_for_check(a, kind);
  const int m = a.rows();
  const int j_hi = is_starred(kind) ? m - 1 : m;
  for (int j = 2; j <= j_hi; ++j) {
    const row_bits f = ~(a.row(j) ^ row_below(a, j)) & a.col_mask();
    if (f == 0) {
      // No column has A[j] == A[j+1], so no primary witness exists for any
      // i; report the first scanned pair.
      return {false, {1, j}, false};
    }
    for (int i = 1; i < j; ++i) {
      const row_bits d = a.row(i) ^ a.row(i + 1);
      const row_bits e = ~(a.row(i + 1) ^ a.row(j));
      if ((d & e & f) == 0) return {false, {i, j}, false};
      if (secondary_required(kind, i, j, m) && (d & ~e & f) == 0)
        return {false, {i, j}, true};
    }
  }
  return {true, {}, false};
}

ConstraintWitnesses constraint_satisfied(const BinaryMatrix &a, Constraint c) {
  if (c.i < 1 || c.i >= c.j || c.j > a.rows())
    throw std::invalid_argument("constraint out of range");
  return witnesses_at(a, c.i, c.j);
}

ConstraintMap constraint_map(const BinaryMatrix &a) {
  if (a.rows() < 2)
    throw std::invalid_argument("constraint map needs at least two rows");
  if (a.rows() > map_rows_cap)
    throw std::invalid_argument("constraint map capped at " +
                                std::to_string(map_rows_cap) + " rows");
  const int m = a.rows();
  std::vector<ConstraintWitnesses> cells;
  cells.reserve(static_cast<size_t>(m) * (m - 1) / 2);
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i) cells.push_back(witnesses_at(a, i, j));
  return ConstraintMap(m, std::move(cells));
}

namespace {

char cell_char(const ConstraintWitnesses &w) {
  if (w.primary && w.secondary) return 'B';
  if (w.primary) return '1';
  if (w.secondary) return '2';
  return '.';
}

} // namespace

std::string render_constraint_grid(const ConstraintMap &map) {
  std::string out;
  for (int j = 2; j <= map.rows(); ++j) {
    for (int i = 1; i < j; ++i) out += cell_char(map.at(i, j));
    out += '\n';
  }
  return out;
}

std::string render_constraint_ppm(const ConstraintMap &map) {
  const int w = map.rows() - 1; // cells i = 1..m-1, rows j = 2..m
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(w) + "\n255\n";
  auto put = [&out](unsigned char r, unsigned char g, unsigned char b) {
    out += static_cast<char>(r);
    out += static_cast<char>(g);
    out += static_cast<char>(b);
  };
  for (int j = 2; j <= map.rows(); ++j) {
    for (int i = 1; i <= w; ++i) {
      if (i >= j) {
        put(255, 255, 255); // outside the triangle
        continue;
      }
      switch (cell_char(map.at(i, j))) {
      case 'B': put(40, 70, 200); break;
      case '1': put(60, 170, 90); break;
      case '2': put(235, 150, 40); break;
      default: put(220, 50, 50); break;
      }
    }
  }
  return out;
}

BinaryMatrix or_star_bijection(const BinaryMatrix &a, StarDirection dir,
                               RegularityKind base_kind) {
  base_kind = base_of(base_kind);
  if (base_kind == RegularityKind::PSOR)
    throw std::invalid_argument(
        "no duplicate-row correspondence for psor/psor*");
  if (dir == StarDirection::to_star) {
    CheckResult r = check(a, base_kind);
    if (!r.holds)
      throw std::invalid_argument("to_star input is not " + kind_name(base_kind));
    std::vector<row_bits> rows = a.row_words();
    rows.push_back(rows.back());
    return BinaryMatrix(a.cols(), std::move(rows));
  }
  if (a.rows() < 2)
    throw std::invalid_argument("from_star needs at least two rows");
  CheckResult r = check(a, star_of(base_kind));
  if (!r.holds)
    throw std::invalid_argument("from_star input is not " +
                                kind_name(star_of(base_kind)));
  std::vector<row_bits> rows = a.row_words();
  rows.pop_back();
  return BinaryMatrix(a.cols(), std::move(rows));
}

} // namespace ormat
