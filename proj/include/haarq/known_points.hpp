#pragma once

#include "haarq/adversary.hpp"

namespace haarq {

// Closed-form optimal balanced dual points for the bundled functions; the
// feasibility and balance certificates are exercised in the test suite.

// Value 1: W = [[0, 1/2], [1/2, 0]], Omega = I/2.
DualPoint identity1_dual_point();

// Value sqrt(2): weight 1/(2*sqrt(2)) on the pairs {01,11} and {10,11},
// Omega = diag(0, 1/4, 1/4, 1/2).
DualPoint nand2_dual_point();

// NAND restricted to {00,01,10} is constantly 1; the dual forces W = 0 and
// any nonnegative unit-trace Omega, value 0.
PartialBoolFn nand2_partial();
DualPoint nand2_partial_dual_point();

}  // namespace haarq
