#include <doctest.h>

#include <vector>

#include "haarq/fault_tree.hpp"

using namespace haarq;

namespace {

std::vector<std::uint8_t> bits(std::initializer_list<int> v) {
  return std::vector<std::uint8_t>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("eval_tree hand-checked cases") {
  const EvaluatedTree a = eval_tree(bits({1, 1}));
  CHECK(a.root_value() == 0);
  CHECK(a.fault[1] == 0);
  CHECK(root_kappa(a) == 0);
  CHECK(max_kappa(a) == 0);

  const EvaluatedTree b = eval_tree(bits({0, 1, 1, 1}));
  CHECK(b.values[2] == 1);
  CHECK(b.values[3] == 0);
  CHECK(b.root_value() == 1);
  CHECK(b.fault[1] == 1);
  CHECK(root_kappa(b) == 1);
  CHECK(max_kappa(b) == 1);

  const EvaluatedTree c = eval_tree(bits({0, 1, 1, 0, 1, 1, 1, 1}));
  CHECK(c.root_value() == 1);
  CHECK(max_kappa(c) == 2);
  CHECK(root_kappa(c) == 2);

  CHECK_THROWS_AS(eval_tree(bits({0, 1, 1})), std::invalid_argument);
}

TEST_CASE("depth-0 tree is a single leaf") {
  CHECK(eval_tree(bits({1})).root_value() == 1);
  CHECK(eval_tree(bits({0})).root_value() == 0);
}

TEST_CASE("haar trees have the parity-determined root and kappa exactly 1") {
  CHECK(haar_tree(make_instance(3, 2, bits({1, 0}))).root_value() == 0);
  CHECK(haar_tree(make_instance(1, 1, bits({0}))).root_value() == 1);
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<std::uint8_t> b(4);
    for (int l = 0; l < 4; ++l) b[l] = (mask >> l) & 1;
    CHECK(haar_tree(make_instance(4, 2, b)).root_value() == 1);
  }
}

TEST_CASE("root_via_parity") {
  CHECK(root_via_parity(3, 2) == 0);
  CHECK(root_via_parity(1, 1) == 1);
  CHECK(root_via_parity(4, 2) == 1);
  CHECK_THROWS_AS(root_via_parity(3, 4), std::invalid_argument);
}

TEST_CASE("parity formula and 1-fault property, exhaustive for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    for (int h = 1; h <= n; ++h) {
      const int nb = 1 << (n - h);
      for (int mask = 0; mask < (1 << nb); ++mask) {
        std::vector<std::uint8_t> b(nb);
        for (int l = 0; l < nb; ++l) b[l] = (mask >> l) & 1;
        const EvaluatedTree t = haar_tree(make_instance(n, h, b));
        CHECK(t.root_value() == root_via_parity(n, h));
        CHECK(max_kappa(t) == 1);
        const auto report = verify_one_fault_per_path(t, HeightMode::fixed, h);
        CHECK(report.ok);
      }
    }
  }
}

TEST_CASE("faults always carry value 1, all assignments up to depth 4") {
  for (int depth = 1; depth <= 4; ++depth) {
    const int len = 1 << depth;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      std::vector<std::uint8_t> leaves(len);
      for (int i = 0; i < len; ++i) leaves[i] = (mask >> i) & 1;
      const EvaluatedTree t = eval_tree(leaves);
      for (std::size_t v = 1; v < t.values.size(); ++v) {
        if (t.fault[v]) CHECK(t.values[v] == 1);
      }
    }
  }
}

TEST_CASE("one-fault generator: fixed heights") {
  const EvaluatedTree t = gen_one_fault_per_path(2, HeightMode::fixed, 1, 42);
  CHECK(verify_one_fault_per_path(t, HeightMode::fixed, 1).ok);
  CHECK(t.root_value() == 0);
  CHECK(t.fault[2] == 1);
  CHECK(t.fault[3] == 1);

  const EvaluatedTree d1 = gen_one_fault_per_path(1, HeightMode::fixed, 1, 7);
  const auto leaves = d1.leaves();
  const bool ok01 = leaves[0] == 0 && leaves[1] == 1;
  const bool ok10 = leaves[0] == 1 && leaves[1] == 0;
  CHECK((ok01 || ok10));
}

TEST_CASE("one-fault generator: parity modes verified over many seeds") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const EvaluatedTree odd = gen_one_fault_per_path(3, HeightMode::all_odd, 0, seed);
    const auto r = verify_one_fault_per_path(odd, HeightMode::all_odd, 0);
    CHECK(r.ok);
    for (int h : r.fault_heights) CHECK((h == 1 || h == 3));

    for (int depth = 2; depth <= 7; ++depth) {
      const auto even = gen_one_fault_per_path(depth, HeightMode::all_even, 0, seed * 31 + depth);
      CHECK(verify_one_fault_per_path(even, HeightMode::all_even, 0).ok);
      const auto anyodd = gen_one_fault_per_path(depth, HeightMode::all_odd, 0, seed * 17 + depth);
      CHECK(verify_one_fault_per_path(anyodd, HeightMode::all_odd, 0).ok);
    }
  }
}

TEST_CASE("one-fault generator rejects impossible modes") {
  CHECK_THROWS_AS(gen_one_fault_per_path(1, HeightMode::all_even, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_one_fault_per_path(3, HeightMode::fixed, 4, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_one_fault_per_path(0, HeightMode::all_odd, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("generated trees are verified against the independent walker") {
  // a tampered tree must fail the walker
  EvaluatedTree t = gen_one_fault_per_path(4, HeightMode::all_even, 0, 5);
  CHECK(verify_one_fault_per_path(t, HeightMode::all_odd, 0).ok == false);
  EvaluatedTree solid = eval_tree(std::vector<std::uint8_t>(16, 1));
  CHECK(verify_one_fault_per_path(solid, HeightMode::all_even, 0).ok == false);
}
