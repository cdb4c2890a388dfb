// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails. Tolerances are pinned in the checks themselves.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "haarq/adversary.hpp"
#include "haarq/classical.hpp"
#include "haarq/known_points.hpp"
#include "haarq/rng.hpp"
#include "haarq/sim.hpp"
#include "reference.hpp"

using namespace haarq;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <typename Fn>
void for_each_instance(int max_n, Fn&& fn) {
  for (int n = 1; n <= max_n; ++n) {
    for (int h = 1; h <= n; ++h) {
      const int nb = 1 << (n - h);
      for (int mask = 0; mask < (1 << nb); ++mask) {
        std::vector<std::uint8_t> b(nb);
        for (int l = 0; l < nb; ++l) b[l] = (mask >> l) & 1;
        fn(make_instance(n, h, b));
      }
    }
  }
}

bool one_query_haar(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  int cases = 0;
  bool ok = true;
  for_each_instance(4, [&](const HaarInstance& inst) {
    Oracle o = expand(inst);
    const HaarRun run = haar_algorithm(o);
    ok = ok && run.queries == 1 && o.queries() == 1 && run.h_out == inst.h_star &&
         std::abs(run.distribution.band_mass(inst.h_star) - 1.0) <= 1e-9;
    ++cases;
  });
  Rng rng(20260809);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_below(8));
    const HaarInstance inst = random_instance(n, rng.next());
    Oracle o = expand(inst);
    const HaarRun run = haar_algorithm(o);
    ok = ok && run.queries == 1 && run.h_out == inst.h_star &&
         std::abs(run.distribution.band_mass(inst.h_star) - 1.0) <= 1e-9;
    ++cases;
  }
  const double elapsed = seconds_since(start);
  detail = std::to_string(cases) + " instances, " + std::to_string(elapsed) + " s";
  return ok && elapsed < 10.0;
}

bool haar_tree_reduction(std::string& detail) {
  int cases = 0;
  bool ok = true;
  for_each_instance(4, [&](const HaarInstance& inst) {
    const EvaluatedTree t = haar_tree(inst);
    ok = ok && t.root_value() == root_via_parity(inst.n, inst.h_star) && max_kappa(t) == 1;
    ++cases;
  });
  detail = std::to_string(cases) + " trees checked";
  return ok;
}

bool bv_relation(std::string& detail) {
  bool ok = true;
  int parity_cases = 0;
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      Oracle o = parity_oracle(make_parity_instance(n, k));
      const BvRun run = bv_algorithm(o);
      ok = ok && run.outcome == k && run.outcome_p >= 1.0 - 1e-9;
      ++parity_cases;
    }
  }
  int haar_cases = 0;
  const auto check_haar = [&](const HaarInstance& inst) {
    Oracle o = expand(inst);
    const BvRun run = bv_algorithm(o);
    ok = ok && run.h_from_k == inst.h_star;
    for (std::size_t k = 0; k < run.distribution.p.size(); ++k) {
      if (run.distribution.p[k] > 1e-9) {
        ok = ok && k != 0 && std::countr_zero(k) + 1 == inst.h_star;
      }
    }
    ++haar_cases;
  };
  for_each_instance(4, check_haar);
  Rng rng(777);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_below(8));
    check_haar(random_instance(n, rng.next()));
  }
  detail = std::to_string(parity_cases) + " parity + " + std::to_string(haar_cases) +
           " haar oracles";
  return ok;
}

bool mixed_level_extension(std::string& detail) {
  bool ok = true;
  Rng rng(31337);
  int built = 0;
  for (int i = 0; i < 200; ++i) {
    const HeightMode mode = i % 2 == 0 ? HeightMode::all_odd : HeightMode::all_even;
    const int min_depth = mode == HeightMode::all_even ? 2 : 1;
    const int depth = min_depth + static_cast<int>(rng.next_below(11 - min_depth));
    const EvaluatedTree tree = gen_one_fault_per_path(depth, mode, 0, rng.next());
    std::vector<std::uint8_t> leaves(tree.leaves().begin(), tree.leaves().end());
    Oracle o = Oracle::eager(depth, leaves);
    const HaarRun run = haar_algorithm(o);
    double parity_mass = 0;
    for (int h = mode == HeightMode::all_odd ? 1 : 2; h <= depth; h += 2) {
      parity_mass += run.distribution.band_mass(h);
    }
    ok = ok && std::abs(parity_mass - 1.0) <= 1e-9 && run.queries == 1;
    ++built;
  }
  detail = std::to_string(built) + " trees, depths <= 10";
  return ok;
}

bool classical_search(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const int trials = 1000;
  int errors = 0;
  bool ok = true;
  Rng rng(640);
  for (int t = 0; t < trials; ++t) {
    const int h = 1 + static_cast<int>(rng.next_below(64));
    Oracle o = lazy_oracle(64, h, rng.next());
    const RunReport r = binary_search_h(o, 10, rng.next());
    if (r.answer != h) ++errors;
    ok = ok && r.queries <= 36;
  }
  const double sigma = std::sqrt(0.1 * 0.9 / trials);
  const double rate = static_cast<double>(errors) / trials;
  const double elapsed = seconds_since(start);
  detail = "error rate " + std::to_string(rate) + " (bound " +
           std::to_string(0.1 + 3 * sigma) + "), " + std::to_string(elapsed) + " s";
  return ok && rate <= 0.1 + 3 * sigma && elapsed < 5.0;
}

bool majority_lemma(std::string& detail) {
  // exhaustive depth-4 check of the lemma itself
  int promise_trees = 0;
  bool ok = true;
  std::vector<std::vector<std::uint8_t>> margin_pool;
  const double eps = 0.25;
  const double delta = 0.05;
  for (std::uint64_t mask = 0; mask < (1u << 16); ++mask) {
    std::vector<std::uint8_t> leaves(16);
    int ones = 0;
    for (int i = 0; i < 16; ++i) {
      leaves[i] = (mask >> i) & 1;
      ones += leaves[i];
    }
    if (2 * ones == 16) continue;
    const EvaluatedTree t = eval_tree(leaves);
    if (max_kappa(t) > 1) continue;
    const int g = 2 * ones > 16 ? 1 : 0;
    ok = ok && t.root_value() == g;  // depth 4 is even
    ++promise_trees;
    if (std::max(ones, 16 - ones) / 16.0 >= 0.5 + eps / 2) {
      margin_pool.push_back(std::move(leaves));
    }
  }

  // the sampling algorithm stays within delta on promise inputs
  Rng rng(5150);
  int errors = 0;
  const int runs = 1000;
  for (int t = 0; t < runs; ++t) {
    const auto& leaves = margin_pool[rng.next_below(margin_pool.size())];
    Oracle o = Oracle::eager(4, leaves);
    const RunReport r = majority_eval(o, eps, delta, rng.next());
    if (r.answer != eval_tree(leaves).root_value()) ++errors;
  }
  detail = std::to_string(promise_trees) + " strict-majority 1-fault trees, sampler errors " +
           std::to_string(errors) + "/" + std::to_string(runs);
  return ok && errors <= static_cast<int>(runs * delta);
}

bool brute_force_oracle(std::string& detail) {
  const int v1 = exact_det_query_complexity(1);
  const int v2 = exact_det_query_complexity(2);
  const int v3a = exact_det_query_complexity(3);
  const int v3b = exact_det_query_complexity(3);
  detail = "n=1: " + std::to_string(v1) + ", n=2: " + std::to_string(v2) +
           ", n=3: " + std::to_string(v3a);
  return v1 == 0 && v2 == 2 && v3a == v3b && v3a >= 2;
}

bool transforms(std::string& detail) {
  bool ok = true;
  // Gram matrix of the implemented basis vs identity
  for (int n = 1; n <= 8; ++n) {
    const std::size_t len = std::size_t{1} << n;
    std::vector<std::vector<double>> basis(len);
    for (std::size_t pos = 0; pos < len; ++pos) {
      basis[pos] = testing::haar_basis_vector(n, unlayout(n, pos));
    }
    for (std::size_t a = 0; a < len && ok; ++a) {
      for (std::size_t b = a; b < len; ++b) {
        double dot = 0;
        for (std::size_t i = 0; i < len; ++i) dot += basis[a][i] * basis[b][i];
        if (std::abs(dot - (a == b ? 1.0 : 0.0)) > 1e-12) ok = false;
      }
    }
  }
  // fast vs naive and round trips
  Rng rng(4242);
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = 2.0 * rng.next_double() - 1.0;
    std::vector<double> fast = v;
    haar_forward(fast);
    const std::vector<double> naive = testing::naive_haar_forward(v);
    std::vector<double> fast_w = v;
    walsh_hadamard(fast_w);
    const std::vector<double> naive_w = testing::naive_walsh(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      ok = ok && std::abs(fast[i] - naive[i]) <= 1e-12 &&
           std::abs(fast_w[i] - naive_w[i]) <= 1e-12;
    }
  }
  for (int n = 10; n <= 12; ++n) {
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = 2.0 * rng.next_double() - 1.0;
    std::vector<double> round = v;
    haar_forward(round);
    haar_inverse(round);
    std::vector<double> round_w = v;
    walsh_hadamard(round_w);
    walsh_hadamard(round_w);
    for (std::size_t i = 0; i < v.size(); ++i) {
      ok = ok && std::abs(round[i] - v[i]) <= 1e-12 && std::abs(round_w[i] - v[i]) <= 1e-12;
    }
  }
  detail = "gram n<=8, fast-vs-naive n<=8, round trips n<=12";
  return ok;
}

bool adversary_dual(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  SolveOptions opts;
  opts.seed = 11;
  const SolveResult id = solve_adv(PartialBoolFn::identity1(), opts);
  const SolveResult nand = solve_adv(PartialBoolFn::nand2(), opts);
  const FeasibilityReport id_feas = check_feasible(PartialBoolFn::identity1(), id.point);
  const FeasibilityReport nand_feas = check_feasible(PartialBoolFn::nand2(), nand.point);
  const double elapsed = seconds_since(start);
  detail = "id1 " + std::to_string(id.report.value) + ", nand " +
           std::to_string(nand.report.value) + ", residual " +
           std::to_string(nand_feas.min_eigenvalue) + ", " + std::to_string(elapsed) + " s";
  return std::abs(id.report.value - 1.0) <= 1e-4 && id_feas.feasible(1e-8) &&
         nand.report.value >= 1.41421 - 1e-3 && nand_feas.min_eigenvalue >= -1e-8 &&
         nand_feas.zero_pattern == 0.0 && nand_feas.trace_error <= 1e-10 && elapsed < 30.0;
}

bool composition(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const PartialBoolFn nand = PartialBoolFn::nand2();

  const ComposeResult total = compose_dual(nand2_dual_point(), nand2_dual_point(), nand, nand);
  const FeasibilityReport total_feas = check_feasible(total.composed, total.point);
  double total_trace = 0;
  for (double v : total.point.omega) total_trace += v;
  const bool total_ok = std::abs(total_feas.value - 2.0) <= 1e-6 &&
                        std::abs(total_trace - 1.0) <= 1e-9 &&
                        total_feas.min_eigenvalue >= -1e-6;

  const ComposeResult part = compose_dual(nand2_partial_dual_point(), nand2_dual_point(),
                                          nand2_partial(), nand);
  const FeasibilityReport part_feas = check_feasible(part.composed, part.point);
  double part_trace = 0;
  for (double v : part.point.omega) part_trace += v;
  const bool part_ok = std::abs(part_feas.value - part.expected_value) <= 1e-6 &&
                       std::abs(part_trace - 1.0) <= 1e-9 &&
                       part_feas.min_eigenvalue >= -1e-6;

  SolveOptions opts;
  opts.seed = 11;
  const double nand_value = solve_adv(nand, opts).report.value;
  const double composed_value = solve_adv(compose_function(nand, nand), opts).report.value;
  const bool power_ok = composed_value >= nand_value * nand_value - 1e-3;

  const double elapsed = seconds_since(start);
  detail = "objective " + std::to_string(total_feas.value) + ", trace " +
           std::to_string(total_trace) + ", min_eig " +
           std::to_string(total_feas.min_eigenvalue) + "; solve(nand^2) " +
           std::to_string(composed_value) + " vs " + std::to_string(nand_value * nand_value) +
           "; " + std::to_string(elapsed) + " s";
  return total_ok && part_ok && power_ok && elapsed < 300.0;
}

bool tilde_psd(std::string& detail) {
  bool ok = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> b(4, std::vector<double>(4));
    for (auto& row : b) {
      for (double& x : row) x = 2.0 * rng.next_double() - 1.0;
    }
    SymMatrix src(4);
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        double dot = 0;
        for (int k = 0; k < 4; ++k) dot += b[k][i] * b[k][j];
        src.set(i, j, dot);
      }
    }
    const SymMatrix expanded = tilde_expand(src, PartialBoolFn::nand2(), 2);
    ok = ok && min_eigenvalue(expanded) >= -1e-10;
  }
  detail = "100 random PSD sources expanded to 16x16";
  return ok;
}

}  // namespace

int main() {
  criterion(1, "one-query Haar algorithm, exhaustive n<=4 + 1000 random n<=12",
            one_query_haar);
  criterion(2, "Haar-Tree reduction: root = parity(n-h*+1), kappa = 1", haar_tree_reduction);
  criterion(3, "Bernstein-Vazirani relation on parity and Haar oracles", bv_relation);
  criterion(4, "mixed-level trees: all mass on the promised height parity",
            mixed_level_extension);
  criterion(5, "classical search at n=64: error rate and query budget", classical_search);
  criterion(6, "majority lemma, exhaustive depth 4 + sampling error <= delta",
            majority_lemma);
  criterion(7, "brute-force deterministic query complexity (n = 1, 2, 3)",
            brute_force_oracle);
  criterion(8, "transform Gram identity, naive agreement, round trips", transforms);
  criterion(9, "adversary dual solver: identity and NAND certificates", adversary_dual);
  criterion(10, "composed dual point: objective, trace, feasibility, power law",
            composition);
  criterion(11, "block expansion preserves positive semidefiniteness", tilde_psd);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
