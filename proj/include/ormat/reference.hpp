#pragma once

// Reference implementations written for obviousness, not speed: plain
// triple loops over (i, j, k) reading single bits.  They exist only to
// cross-check the bitwise routines in regularity.cpp and share no code
// with them beyond the matrix type.

#include "ormat/regularity.hpp"

namespace ormat {

CheckResult naive_check(const BinaryMatrix &a, RegularityKind kind);

ConstraintWitnesses naive_constraint_satisfied(const BinaryMatrix &a,
                                               Constraint c);

} // namespace ormat
