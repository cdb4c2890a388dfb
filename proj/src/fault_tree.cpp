#include "haarq/fault_tree.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "haarq/rng.hpp"

namespace haarq {

int EvaluatedTree::height_of(std::size_t v) const {
  // node v lives at depth floor(log2 v); height = depth - that
  return depth - (std::bit_width(v) - 1);
}

EvaluatedTree eval_tree(std::span<const std::uint8_t> leaves) {
  const std::size_t len = leaves.size();
  if (len == 0 || (len & (len - 1)) != 0) {
    throw std::invalid_argument("leaf count must be a power of two");
  }
  EvaluatedTree t;
  t.depth = std::bit_width(len) - 1;
  t.values.assign(2 * len, 0);
  t.kappa.assign(2 * len, 0);
  t.fault.assign(2 * len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (leaves[i] > 1) throw std::invalid_argument("leaves must be 0 or 1");
    t.values[len + i] = leaves[i];
  }
  for (std::size_t v = len - 1; v >= 1; --v) {
    const std::uint8_t a = t.values[2 * v];
    const std::uint8_t b = t.values[2 * v + 1];
    t.values[v] = static_cast<std::uint8_t>(!(a && b));
    if (a == b) {
      t.kappa[v] = std::max(t.kappa[2 * v], t.kappa[2 * v + 1]);
    } else {
      t.fault[v] = 1;
      t.kappa[v] = 1 + t.kappa[a == 0 ? 2 * v : 2 * v + 1];
    }
  }
  return t;
}

int max_kappa(const EvaluatedTree& tree) {
  return *std::max_element(tree.kappa.begin() + 1, tree.kappa.end());
}

int root_kappa(const EvaluatedTree& tree) { return tree.kappa[1]; }

EvaluatedTree haar_tree(const HaarInstance& inst) {
  Oracle o = expand(inst);
  return eval_tree(o.bits_copy());
}

int root_via_parity(int n, int h) {
  if (h < 1 || h > n) throw std::invalid_argument("need 1 <= h <= n");
  return (n - h + 1) % 2;
}

namespace {

bool height_allowed(HeightMode mode, int fixed_h, int h) {
  switch (mode) {
    case HeightMode::fixed:
      return h == fixed_h;
    case HeightMode::all_even:
      return h % 2 == 0;
    case HeightMode::all_odd:
      return h % 2 == 1;
  }
  return false;
}

// Is there an allowed fault height in 1..max_h?
bool mode_reachable(HeightMode mode, int fixed_h, int max_h) {
  switch (mode) {
    case HeightMode::fixed:
      return fixed_h >= 1 && fixed_h <= max_h;
    case HeightMode::all_even:
      return max_h >= 2;
    case HeightMode::all_odd:
      return max_h >= 1;
  }
  return false;
}

// All-equal leaves of a fault-free subtree with the given root value.
void fill_solid(std::span<std::uint8_t> buf, int height, int root_value) {
  const std::uint8_t leaf = static_cast<std::uint8_t>(root_value ^ (height & 1));
  std::fill(buf.begin(), buf.end(), leaf);
}

// Leaves of a subtree with root value `value` at height `height`, exactly one
// fault per path, fault heights per mode.
void gen_subtree(std::span<std::uint8_t> buf, int height, int value, HeightMode mode,
                 int fixed_h, Rng& rng) {
  const bool can_fault = value == 1 && height >= 1 && height_allowed(mode, fixed_h, height);
  const bool can_descend = height >= 1 && mode_reachable(mode, fixed_h, height - 1);
  if (!can_fault && !can_descend) {
    throw std::logic_error("one-fault generator reached an infeasible node");
  }
  const bool fault_here = can_fault && (!can_descend || rng.next_bit());
  const std::size_t half = buf.size() / 2;
  if (fault_here) {
    const int zero_side = rng.next_bit();
    fill_solid(buf.subspan(0, half), height - 1, zero_side ? 1 : 0);
    fill_solid(buf.subspan(half), height - 1, zero_side ? 0 : 1);
  } else {
    gen_subtree(buf.subspan(0, half), height - 1, 1 - value, mode, fixed_h, rng);
    gen_subtree(buf.subspan(half), height - 1, 1 - value, mode, fixed_h, rng);
  }
}

}  // namespace

EvaluatedTree gen_one_fault_per_path(int depth, HeightMode mode, int fixed_h,
                                     std::uint64_t seed) {
  if (depth < 1 || depth > kMaxEagerN) {
    throw std::invalid_argument("depth must be in 1.." + std::to_string(kMaxEagerN));
  }
  if (!mode_reachable(mode, fixed_h, depth)) {
    throw std::invalid_argument("no allowed fault height fits a tree of this depth");
  }
  // One fault per path pins every fault to the same height parity, so the
  // root value is forced by any allowed height.
  int some_h = 0;
  switch (mode) {
    case HeightMode::fixed:
      some_h = fixed_h;
      break;
    case HeightMode::all_even:
      some_h = 2;
      break;
    case HeightMode::all_odd:
      some_h = 1;
      break;
  }
  const int root_value = root_via_parity(depth, some_h);

  std::vector<std::uint8_t> leaves(std::size_t{1} << depth);
  Rng rng(seed);
  gen_subtree(leaves, depth, root_value, mode, fixed_h, rng);
  EvaluatedTree t = eval_tree(leaves);
  if (!verify_one_fault_per_path(t, mode, fixed_h).ok) {
    throw std::logic_error("one-fault generator produced an invalid tree");
  }
  return t;
}

PathFaultReport verify_one_fault_per_path(const EvaluatedTree& tree, HeightMode mode,
                                          int fixed_h) {
  PathFaultReport report;
  const std::size_t leaves = tree.leaf_count();
  report.fault_heights.reserve(leaves);
  for (std::size_t leaf = leaves; leaf < 2 * leaves; ++leaf) {
    int count = 0;
    int fault_height = -1;
    for (std::size_t v = leaf; v >= 1; v /= 2) {
      if (tree.fault[v]) {
        ++count;
        fault_height = tree.height_of(v);
      }
    }
    if (count != 1 || !height_allowed(mode, fixed_h, fault_height)) {
      report.ok = false;
      report.fault_heights.clear();
      return report;
    }
    report.fault_heights.push_back(fault_height);
  }
  report.ok = true;
  return report;
}

}  // namespace haarq
