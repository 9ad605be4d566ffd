#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ormat/matrix.hpp"

using namespace ormat;

namespace {

// Column permutation as an independent helper: rebuilds each row from the
// permuted column texts.
BinaryMatrix permute_columns(const BinaryMatrix &a, const std::vector<int> &perm) {
  BinaryMatrix out(a.cols());
  for (int i = 1; i <= a.rows(); ++i) {
    row_bits r = 0;
    for (int k = 1; k <= a.cols(); ++k)
      if (a.bit(i, perm[static_cast<size_t>(k) - 1])) r |= row_bits{1} << (k - 1);
    out.push_row(r);
  }
  return out;
}

} // namespace

TEST_CASE("parse assigns column 1 to the lowest bit") {
  BinaryMatrix a = parse_matrix("101\n");
  CHECK(a.rows() == 1);
  CHECK(a.cols() == 3);
  CHECK(a.row(1) == 0b101u); // col 1 = bit 0 set, col 2 clear, col 3 set
  CHECK(a.bit(1, 1));
  CHECK_FALSE(a.bit(1, 2));
  CHECK(a.bit(1, 3));
  CHECK(row_text(a, 1) == "101");
}

TEST_CASE("parse and emit round-trip") {
  const std::string text = "000\n111\n101\n";
  BinaryMatrix a = parse_matrix(text);
  CHECK(emit_matrix(a) == text);
  CHECK(parse_matrix(emit_matrix(a)) == a);
  CHECK(emit_matrix(BinaryMatrix{}) == "");
}

TEST_CASE("parse tolerates comments, blank lines and CRLF") {
  BinaryMatrix plain = parse_matrix("00\n11\n");
  CHECK(parse_matrix("# header\n00\n\n11\n") == plain);
  CHECK(parse_matrix("  # indented comment\n00\n11") == plain);
  CHECK(parse_matrix("00\r\n11\r\n") == plain);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_matrix("00\n111\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix("0a0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix(std::string(65, '0') + "\n"), std::invalid_argument);
}

TEST_CASE("row words are masked to the declared width") {
  BinaryMatrix a(3, {0xffu});
  CHECK(a.row(1) == 0b111u);
  CHECK_THROWS_AS(BinaryMatrix(65), std::invalid_argument);
  CHECK_THROWS_AS(BinaryMatrix(0, {1u}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryMatrix(0).push_row(0), std::invalid_argument);
}

TEST_CASE("negate_columns flips exactly the masked columns and is an involution") {
  BinaryMatrix a = parse_matrix("000\n111\n101\n");
  BinaryMatrix b = negate_columns(a, 0b011);
  CHECK(emit_matrix(b) == "110\n001\n011\n");
  CHECK(negate_columns(b, 0b011) == a);
  CHECK_THROWS_AS(negate_columns(a, 0b1000), std::invalid_argument);
}

TEST_CASE("tilde aligns the seam for gluing") {
  BinaryMatrix a = parse_matrix("000\n111\n001\n011\n010\n");
  CHECK(emit_matrix(tilde(a)) == "010\n101\n011\n001\n000\n");
  // first row of tilde(a) equals last row of a and vice versa
  CHECK(tilde(a).row(1) == a.row(a.rows()));
  CHECK(tilde(a).row(a.rows()) == a.row(1));
  CHECK(tilde(tilde(a)) == a);
}

TEST_CASE("glue alternates the matrix with its tilde twin") {
  BinaryMatrix a = parse_matrix("000\n111\n001\n011\n010\n");
  BinaryMatrix g = glue(a, 3);
  REQUIRE(g.rows() == 15);
  BinaryMatrix t = tilde(a);
  for (int i = 1; i <= 5; ++i) {
    CHECK(g.row(i) == a.row(i));
    CHECK(g.row(5 + i) == t.row(i));
    CHECK(g.row(10 + i) == a.row(i));
  }
  // seams repeat the row, which is what the virtual-row convention needs
  CHECK(g.row(5) == g.row(6));
  CHECK(g.row(10) == g.row(11));
  CHECK(glue(a, 1) == a);
  CHECK_THROWS_AS(glue(a, 0), std::invalid_argument);
}

TEST_CASE("reverse flips the row order and negates even output rows") {
  BinaryMatrix a = parse_matrix("000\n111\n001\n011\n010\n");
  CHECK(emit_matrix(reverse(a)) == "010\n100\n001\n000\n000\n");
  CHECK(reverse(reverse(a)) == a); // odd row count: involution
}

TEST_CASE("canonicalize zeroes row 1 and sorts columns") {
  BinaryMatrix a = parse_matrix("000\n111\n101\n");
  BinaryMatrix c = canonicalize(a);
  CHECK(emit_matrix(c) == "000\n111\n011\n");
  CHECK(is_canonical(c));
  CHECK_FALSE(is_canonical(a));
  CHECK(canonicalize(c) == c);
  CHECK_THROWS_AS(canonicalize(parse_matrix("01\n")), std::invalid_argument);
}

TEST_CASE("canonical form is invariant over the symmetry orbit") {
  BinaryMatrix a = parse_matrix("0000\n1111\n0001\n0111\n0101\n1101\n0100\n0110\n");
  BinaryMatrix c = canonicalize(a);
  std::mt19937_64 rng(7);
  std::vector<int> perm{1, 2, 3, 4};
  for (int t = 0; t < 200; ++t) {
    row_bits mask = rng() & a.col_mask();
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(canonicalize(permute_columns(negate_columns(a, mask), perm)) == c);
  }
}

TEST_CASE("patterns stack alternating copies starting from the top block") {
  Pattern p{parse_matrix("0\n"), parse_matrix("1\n")};
  CHECK(emit_matrix(p.realize(5)) == "0\n1\n0\n1\n0\n");
  Pattern two{parse_matrix("00\n01\n"), parse_matrix("11\n10\n")};
  CHECK(emit_matrix(two.realize(3)) == "00\n01\n11\n10\n00\n01\n");
  CHECK(p.realize(0).empty());
  CHECK_THROWS_AS(Pattern(parse_matrix("0\n"), parse_matrix("00\n")).realize(2),
                  std::invalid_argument);
}
