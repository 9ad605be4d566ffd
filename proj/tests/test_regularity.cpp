#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ormat/regularity.hpp"

using namespace ormat;

namespace {

BinaryMatrix load_fixture(const std::string &name) {
  std::ifstream in(std::string(ORMAT_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

// Straight transliteration of the definitions over row texts; the bitwise
// checker must agree with this on everything.
struct NaiveVerdict {
  bool holds = true;
  Constraint violated{};
  bool secondary_missing = false;
};

NaiveVerdict naive_check(const BinaryMatrix &a, RegularityKind kind) {
  const int m = a.rows(), n = a.cols();
  const bool star = is_starred(kind);
  std::vector<std::string> t;
  for (int i = 1; i <= m; ++i) t.push_back(row_text(a, i));
  t.push_back(t.back()); // virtual row m+1
  auto primary = [&](int i, int j) {
    for (int k = 0; k < n; ++k)
      if (t[i - 1][k] != t[i][k] && t[i][k] == t[j - 1][k] && t[j - 1][k] == t[j][k])
        return true;
    return false;
  };
  auto secondary = [&](int i, int j) {
    for (int k = 0; k < n; ++k)
      if (t[i - 1][k] != t[i][k] && t[i][k] != t[j - 1][k] && t[j - 1][k] == t[j][k])
        return true;
    return false;
  };
  for (int j = 2; j <= m; ++j) {
    if (star && j == m) continue;
    for (int i = 1; i < j; ++i) {
      if (!primary(i, j)) return {false, {i, j}, false};
      if (secondary_required(kind, i, j, m) && !secondary(i, j))
        return {false, {i, j}, true};
    }
  }
  if (!star && m >= 2 && a.row(m - 1) == a.row(m))
    return {false, {m - 1, m}, false};
  return {};
}

BinaryMatrix random_matrix(std::mt19937_64 &rng, int m, int n) {
  BinaryMatrix a(n);
  for (int i = 0; i < m; ++i) a.push_row(rng());
  return a;
}

} // namespace

TEST_CASE("kind names parse and print") {
  CHECK(parse_kind("or") == RegularityKind::OR);
  CHECK(parse_kind("OR*") == RegularityKind::ORstar);
  CHECK(parse_kind("sorstar") == RegularityKind::SORstar);
  CHECK(parse_kind("Psor") == RegularityKind::PSOR);
  CHECK(parse_kind("psor*") == RegularityKind::PSORstar);
  for (RegularityKind k :
       {RegularityKind::OR, RegularityKind::ORstar, RegularityKind::SOR,
        RegularityKind::SORstar, RegularityKind::PSOR, RegularityKind::PSORstar}) {
    CHECK(parse_kind(kind_name(k)) == k);
    CHECK(is_starred(star_of(k)));
    CHECK_FALSE(is_starred(base_of(k)));
    CHECK(star_of(base_of(k)) == star_of(k));
  }
  CHECK_THROWS_AS(parse_kind("regular"), std::invalid_argument);
}

TEST_CASE("secondary witnesses are demanded exactly where the kind says") {
  const int m = 8;
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i) {
      CHECK_FALSE(secondary_required(RegularityKind::OR, i, j, m));
      CHECK_FALSE(secondary_required(RegularityKind::ORstar, i, j, m));
      CHECK(secondary_required(RegularityKind::SOR, i, j, m) == (i + 1 < j));
      CHECK(secondary_required(RegularityKind::SORstar, i, j, m) ==
            (i + 1 < j && j != m));
      CHECK(secondary_required(RegularityKind::PSOR, i, j, m) ==
            (1 < i && j < m && (j - i) % 2 == 0));
      CHECK(secondary_required(RegularityKind::PSORstar, i, j, m) ==
            (1 < i && j < m && (j - i) % 2 == 0));
    }
}

TEST_CASE("embedded fixture files certify as their declared kinds") {
  BinaryMatrix b33 = load_fixture("sor_33x8.txt");
  REQUIRE(b33.rows() == 33);
  REQUIRE(b33.cols() == 8);
  CHECK(check(b33, RegularityKind::SOR).holds);
  CHECK(check(b33, RegularityKind::OR).holds);
  CHECK(check(b33, RegularityKind::PSOR).holds); // SOR implies PSOR

  BinaryMatrix b35 = load_fixture("psor_35x8.txt");
  REQUIRE(b35.rows() == 35);
  REQUIRE(b35.cols() == 8);
  CHECK(check(b35, RegularityKind::PSOR).holds);
  CHECK(check(b35, RegularityKind::OR).holds);
  CheckResult asSor = check(b35, RegularityKind::SOR);
  CHECK_FALSE(asSor.holds);
  CHECK(asSor.violated == Constraint{6, 9});
  CHECK(asSor.secondary_missing);

  BinaryMatrix e5 = load_fixture("extremal_5x3.txt");
  CHECK(check(e5, RegularityKind::OR).holds);
  CHECK(check(e5, RegularityKind::PSOR).holds);

  BinaryMatrix e8 = load_fixture("extremal_8x4.txt");
  REQUIRE(e8.rows() == 8);
  CHECK(check(e8, RegularityKind::OR).holds);

  BinaryMatrix s3 = load_fixture("sor_3x2.txt");
  CHECK(check(s3, RegularityKind::SOR).holds);
}

TEST_CASE("row-count preconditions") {
  BinaryMatrix one = parse_matrix("01\n");
  CHECK_THROWS_AS(check(one, RegularityKind::OR), std::invalid_argument);
  CHECK(check(one, RegularityKind::ORstar).holds);
  CHECK_THROWS_AS(check(BinaryMatrix{}, RegularityKind::ORstar),
                  std::invalid_argument);
}

TEST_CASE("equal last rows violate unstarred kinds as constraint (m-1, m)") {
  BinaryMatrix a = parse_matrix("00\n11\n11\n");
  CheckResult r = check(a, RegularityKind::OR);
  CHECK_FALSE(r.holds);
  CHECK(r.violated == Constraint{2, 3});
  CHECK(check(a, RegularityKind::ORstar).holds);
}

TEST_CASE("bitwise checker equals the naive one on every tiny matrix") {
  const RegularityKind kinds[] = {RegularityKind::OR,   RegularityKind::ORstar,
                                  RegularityKind::SOR,  RegularityKind::SORstar,
                                  RegularityKind::PSOR, RegularityKind::PSORstar};
  for (int n = 1; n <= 3; ++n)
    for (int m = 2; m <= 4; ++m) {
      const row_bits lim = row_bits{1} << (m * n);
      for (row_bits code = 0; code < lim; ++code) {
        BinaryMatrix a(n);
        for (int i = 0; i < m; ++i)
          a.push_row((code >> (i * n)) & ((row_bits{1} << n) - 1));
        for (RegularityKind k : kinds) {
          NaiveVerdict want = naive_check(a, k);
          CheckResult got = check(a, k);
          REQUIRE(got.holds == want.holds);
          if (!want.holds) {
            REQUIRE(got.violated == want.violated);
            REQUIRE(got.secondary_missing == want.secondary_missing);
          }
        }
      }
    }
}

TEST_CASE("bitwise checker equals the naive one on random wide matrices") {
  std::mt19937_64 rng(20240817);
  const RegularityKind kinds[] = {RegularityKind::OR,   RegularityKind::ORstar,
                                  RegularityKind::SOR,  RegularityKind::SORstar,
                                  RegularityKind::PSOR, RegularityKind::PSORstar};
  for (int t = 0; t < 500; ++t) {
    int m = 2 + static_cast<int>(rng() % 20);
    int n = 1 + static_cast<int>(rng() % 8);
    BinaryMatrix a = random_matrix(rng, m, n);
    for (RegularityKind k : kinds) {
      NaiveVerdict want = naive_check(a, k);
      CheckResult got = check(a, k);
      REQUIRE(got.holds == want.holds);
      if (!want.holds) {
        REQUIRE(got.violated == want.violated);
        REQUIRE(got.secondary_missing == want.secondary_missing);
      }
    }
  }
}

TEST_CASE("witness masks match a per-column scan") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    int m = 2 + static_cast<int>(rng() % 8);
    int n = 1 + static_cast<int>(rng() % 6);
    BinaryMatrix a = random_matrix(rng, m, n);
    std::vector<std::string> txt;
    for (int i = 1; i <= m; ++i) txt.push_back(row_text(a, i));
    txt.push_back(txt.back());
    for (int j = 2; j <= m; ++j)
      for (int i = 1; i < j; ++i) {
        ConstraintWitnesses w = constraint_satisfied(a, {i, j});
        row_bits prim = 0, sec = 0;
        for (int k = 0; k < n; ++k) {
          if (txt[i - 1][k] != txt[i][k] && txt[j - 1][k] == txt[j][k]) {
            if (txt[i][k] == txt[j - 1][k]) prim |= row_bits{1} << k;
            else sec |= row_bits{1} << k;
          }
        }
        REQUIRE(w.primary == prim);
        REQUIRE(w.secondary == sec);
      }
  }
}

TEST_CASE("constraint grid of the 5x3 extremal matrix") {
  BinaryMatrix e5 = load_fixture("extremal_5x3.txt");
  ConstraintMap map = constraint_map(e5);
  CHECK(map.rows() == 5);
  CHECK(render_constraint_grid(map) == "1\nB1\nBB1\nBB11\n");
  CHECK_THROWS_AS(map.at(3, 3), std::out_of_range);

  std::string ppm = render_constraint_ppm(map);
  CHECK(ppm.substr(0, 11) == "P6\n4 4\n255\n");
  CHECK(ppm.size() == 11 + 3u * 4 * 4);
}

TEST_CASE("star bijection round-trips for OR and SOR") {
  BinaryMatrix e5 = load_fixture("extremal_5x3.txt");
  BinaryMatrix up = or_star_bijection(e5, StarDirection::to_star);
  REQUIRE(up.rows() == 6);
  CHECK(up.row(5) == up.row(6));
  CHECK(check(up, RegularityKind::ORstar).holds);
  CHECK(or_star_bijection(up, StarDirection::from_star) == e5);

  BinaryMatrix s3 = load_fixture("sor_3x2.txt");
  BinaryMatrix sup =
      or_star_bijection(s3, StarDirection::to_star, RegularityKind::SOR);
  CHECK(check(sup, RegularityKind::SORstar).holds);
  CHECK(or_star_bijection(sup, StarDirection::from_star, RegularityKind::SOR) == s3);
}

TEST_CASE("the duplicate-row correspondence genuinely fails for PSOR") {
  // This matrix satisfies PSOR, yet appending a copy of its last row breaks
  // PSOR*: the extension must doubly-satisfy (3, 5), which PSOR of the
  // original never demanded (j = m is exempt there).
  BinaryMatrix p = parse_matrix("1100\n1001\n0011\n1011\n1010\n");
  REQUIRE(check(p, RegularityKind::PSOR).holds);
  BinaryMatrix ext(4, {p.row(1), p.row(2), p.row(3), p.row(4), p.row(5), p.row(5)});
  CheckResult r = check(ext, RegularityKind::PSORstar);
  CHECK_FALSE(r.holds);
  CHECK(r.violated == Constraint{3, 5});
  CHECK(r.secondary_missing);
  CHECK_THROWS_AS(or_star_bijection(p, StarDirection::to_star, RegularityKind::PSOR),
                  std::invalid_argument);
}
