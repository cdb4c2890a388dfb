#pragma once

#include <cstdint>

#include "haarq/fault_tree.hpp"
#include "haarq/oracle.hpp"

namespace haarq {

struct RunReport {
  long long answer = 0;  // h estimate or root bit, per algorithm
  std::uint64_t queries = 0;
  bool error_flag = false;
  std::uint64_t seed = 0;
};

// Per-probe sample count of the randomized search:
// ceil(log2(c * ceil(log2 n))).
int search_samples_per_probe(int n, int c);

// Randomized binary search for the smallest h whose prefix [0, 2^h) is
// non-constant; each probe samples indices with replacement and declares the
// prefix constant when every sampled bit agrees. Wrong answers are
// probabilistic and tracked by the harness, not flagged here.
RunReport binary_search_h(Oracle& oracle, int c, std::uint64_t seed);

// Evaluates a tree with one fault per root-to-leaf path from its leaf oracle:
// the prefix search lands on the height of the leftmost fault, and the root
// is that height's parity. answer is the root bit.
RunReport classical_tree_eval(Oracle& leaf_oracle, int c, std::uint64_t seed);

// Sample count used by majority_eval: ceil(2/eps^2 * ln(2/delta)).
std::uint64_t majority_sample_count(double epsilon, double delta);

// Majority vote over a constant number of leaf samples; an even-depth tree
// takes the majority value, an odd-depth tree its negation. Requires the
// leaf ratio promise (a strict, bounded majority).
RunReport majority_eval(Oracle& leaf_oracle, double epsilon, double delta,
                        std::uint64_t seed);

// Exact minimax number of adaptive classical queries a deterministic strategy
// needs to pin down h* on every length-2^n promise oracle. Exhaustive
// game-tree search with knowledge-state memoization; n <= 3 only.
int exact_det_query_complexity(int n);

}  // namespace haarq
