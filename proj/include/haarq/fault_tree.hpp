#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "haarq/oracle.hpp"

namespace haarq {

// Complete binary NAND tree in heap order: root at index 1, children of v at
// 2v and 2v+1, leaves at [2^depth, 2^(depth+1)) left to right (leaf order
// equals oracle index order). A node is a fault when its children differ;
// fault nodes always carry value 1. kappa counts nested faults through
// 0-valued (strong) children.
struct EvaluatedTree {
  int depth = 0;
  std::vector<std::uint8_t> values;
  std::vector<int> kappa;
  std::vector<std::uint8_t> fault;

  std::size_t leaf_count() const { return std::size_t{1} << depth; }
  int root_value() const { return values[1]; }
  std::span<const std::uint8_t> leaves() const {
    return std::span<const std::uint8_t>(values).subspan(leaf_count(), leaf_count());
  }
  // Height of node v: 0 for leaves, depth for the root.
  int height_of(std::size_t v) const;
};

// Bottom-up evaluation of values, fault flags and kappa in one pass.
// Leaf count must be a power of two (depth 0 = single leaf is allowed).
EvaluatedTree eval_tree(std::span<const std::uint8_t> leaves);

int max_kappa(const EvaluatedTree& tree);   // strict condition: max over all nodes
int root_kappa(const EvaluatedTree& tree);  // relaxed condition: root only

// Tree whose leaves are the instance's expanded bits; every root-to-leaf
// path has exactly one fault, all at height h_star.
EvaluatedTree haar_tree(const HaarInstance& inst);

// Root value of a tree with all faults at height h: (n - h + 1) mod 2.
int root_via_parity(int n, int h);

enum class HeightMode { fixed, all_even, all_odd };

// Random tree in which every root-to-leaf path crosses exactly one fault,
// at a height matching the mode. fixed_h is read only for HeightMode::fixed.
// The result is re-checked with verify_one_fault_per_path before returning.
EvaluatedTree gen_one_fault_per_path(int depth, HeightMode mode, int fixed_h,
                                     std::uint64_t seed);

struct PathFaultReport {
  bool ok = false;
  std::vector<int> fault_heights;  // one entry per root-to-leaf path, when ok
};

// Independent path-walking check: walks every root-to-leaf path and verifies
// it crosses exactly one fault, at a height allowed by the mode.
PathFaultReport verify_one_fault_per_path(const EvaluatedTree& tree, HeightMode mode,
                                          int fixed_h);

}  // namespace haarq
