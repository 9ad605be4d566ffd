#pragma once

// Recursive lower-bound constructions.  All three schemes produce OR
// matrices whose row count grows exponentially in the column count:
//
//   simple    m = 2^l,  n = 2l - 1      rate 2^(1/2)   ~ 1.4142
//   main      m = M^l,  n = lN + 2(l-1) rate M^(1/(N+2))
//   modified  m = M^l,  n = lN + 2(l-1) same arithmetic, weaker block kind
//
// where the seed block has M rows (M odd) and N columns.  With the embedded
// 33x8 SOR block the main scheme reaches 33^(1/10) ~ 1.4186; the modified
// scheme accepts PSOR blocks, and with the embedded 35x8 block reaches
// 35^(1/10) ~ 1.4269.

#include <string>
#include <vector>

#include "ormat/regularity.hpp"

namespace ormat {

struct BuildingBlock {
  std::string name;
  RegularityKind kind; // strongest unstarred kind the block satisfies
  BinaryMatrix matrix;
};

// Seed blocks compiled into the library.  Each entry is re-verified against
// its declared kind on first access; a corrupted build fails fast here.
const std::vector<BuildingBlock> &embedded_blocks();

const BuildingBlock &find_block(const std::string &name);

// Row counts beyond this need 'allow_large': M^l grows fast and a stray
// level argument should not allocate gigabytes by accident.
inline constexpr long long large_rows_cap = 100000;

// Level l >= 1 of the doubling scheme: level 1 is [0; 1], and each level
// stacks the previous one over its tilde twin and appends two alternating
// columns on top and a constant 1-column / 0-column pair below.
BinaryMatrix construct_simple(int levels, bool allow_large = false);

// Level l >= 1 of the block-recursive scheme seeded with an SOR block with
// an odd number of rows.  Level 1 is the block itself; each later level is
// [C D E] with C the previous level glued M times (alternating with its
// tilde), D repeating the block's row pairs as alternating column patterns
// slice by slice, and E two bookkeeping columns alternating by slice parity.
BinaryMatrix construct_main(const BinaryMatrix &block, int levels,
                            bool allow_large = false);

// Same shape as construct_main but accepts the weaker PSOR block kind; the
// E columns change at the first and last slice (both odd, M being odd) to
// repair the constraint pairs PSOR no longer covers.
BinaryMatrix construct_modified(const BinaryMatrix &block, int levels,
                                bool allow_large = false);

enum class Scheme { simple, main, modified };

Scheme scheme_of(const std::string &name);
std::string scheme_name(Scheme s);

struct ConstructionReport {
  int level = 0;
  unsigned long long rows = 0; // valid when rows_exact
  bool rows_exact = true;      // false once M^l overflows 64 bits
  long long cols = 0;
  double rate = 0; // rows^(1/cols) at this level
};

// Growth figures per level, plus the limiting rate which the per-level
// rates approach from above (the per-level column overhead shrinks away).
// M and N are the seed block dimensions; the simple scheme ignores them.
std::vector<ConstructionReport> bound_table(Scheme scheme, int block_rows,
                                            int block_cols, int max_level);

double asymptotic_rate(Scheme scheme, int block_rows, int block_cols);

// Appended all-zero columns.  A constant column never separates two rows,
// so it can witness nothing and every regularity kind is preserved;
// useful to state row bounds at a given width without a matching block.
BinaryMatrix pad_columns(const BinaryMatrix &a, int count);

} // namespace ormat
