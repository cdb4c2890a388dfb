#include "haarq/classical.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "haarq/rng.hpp"

namespace haarq {

int search_samples_per_probe(int n, int c) {
  const auto ceil_log2 = [](std::uint64_t x) {
    return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1));
  };
  const int rounds = ceil_log2(static_cast<std::uint64_t>(n));
  return std::max(1, ceil_log2(static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(rounds)));
}

RunReport binary_search_h(Oracle& oracle, int c, std::uint64_t seed) {
  const int n = oracle.n();
  if (n < 2) throw std::invalid_argument("binary search needs n >= 2");
  if (c < 2) throw std::invalid_argument("c must be at least 2");

  const int samples = search_samples_per_probe(n, c);
  Rng rng(seed);
  const std::uint64_t before = oracle.queries();

  int lo = 1;
  int hi = n;
  while (lo < hi) {
    const int h = (lo + hi) / 2;
    bool mixed = false;
    const int first = oracle.query(rng.next_bits(h));
    for (int s = 1; s < samples; ++s) {
      if (oracle.query(rng.next_bits(h)) != first) mixed = true;
    }
    if (mixed) {
      hi = h;  // prefix already contains a full block
    } else {
      lo = h + 1;  // all sampled bits agree: decide h < h*
    }
  }

  RunReport r;
  r.answer = lo;
  r.queries = oracle.queries() - before;
  r.seed = seed;
  return r;
}

RunReport classical_tree_eval(Oracle& leaf_oracle, int c, std::uint64_t seed) {
  const int depth = leaf_oracle.n();
  RunReport r;
  r.seed = seed;
  if (depth == 0) {
    r.answer = leaf_oracle.query(0);
    r.queries = 1;
    return r;
  }
  if (depth == 1) {
    // the single fault must sit at the root; no queries needed
    r.answer = root_via_parity(1, 1);
    return r;
  }
  const std::uint64_t before = leaf_oracle.queries();
  const RunReport search = binary_search_h(leaf_oracle, c, seed);
  r.answer = root_via_parity(depth, static_cast<int>(search.answer));
  r.queries = leaf_oracle.queries() - before;
  return r;
}

std::uint64_t majority_sample_count(double epsilon, double delta) {
  if (!(epsilon > 0) || epsilon >= 1 || !(delta > 0) || delta >= 1) {
    throw std::invalid_argument("need 0 < epsilon < 1 and 0 < delta < 1");
  }
  return static_cast<std::uint64_t>(
      std::ceil(2.0 / (epsilon * epsilon) * std::log(2.0 / delta)));
}

RunReport majority_eval(Oracle& leaf_oracle, double epsilon, double delta,
                        std::uint64_t seed) {
  const int depth = leaf_oracle.n();
  const std::uint64_t m = majority_sample_count(epsilon, delta);
  Rng rng(seed);
  const std::uint64_t before = leaf_oracle.queries();
  std::uint64_t ones = 0;
  for (std::uint64_t s = 0; s < m; ++s) {
    ones += static_cast<std::uint64_t>(leaf_oracle.query(rng.next_bits(depth)));
  }
  const int majority = 2 * ones > m ? 1 : 0;
  RunReport r;
  r.answer = depth % 2 == 0 ? majority : 1 - majority;
  r.queries = leaf_oracle.queries() - before;
  r.seed = seed;
  return r;
}

namespace {

// Promise oracles for tiny n, as flat bit masks.
struct TinyOracle {
  int h_star;
  unsigned bits;  // bit i of the mask is x_i
};

std::vector<TinyOracle> tiny_promise_family(int n) {
  std::vector<TinyOracle> out;
  const int len = 1 << n;
  for (int h = 1; h <= n; ++h) {
    const int block = 1 << h;
    const int half = block / 2;
    const int n_blocks = len / block;
    for (int bmask = 0; bmask < (1 << n_blocks); ++bmask) {
      unsigned bits = 0;
      for (int l = 0; l < n_blocks; ++l) {
        const int bl = (bmask >> l) & 1;
        for (int j = 0; j < block; ++j) {
          const int v = j < half ? bl : 1 - bl;
          if (v) bits |= 1u << (l * block + j);
        }
      }
      out.push_back(TinyOracle{h, bits});
    }
  }
  return out;
}

struct MinimaxSearch {
  int len;
  std::vector<TinyOracle> family;
  std::vector<int> memo;  // keyed by queried-mask * 2^len + answers-mask

  int value(unsigned qmask, unsigned amask) {
    const std::size_t key = (static_cast<std::size_t>(qmask) << len) | amask;
    if (memo[key] >= 0) return memo[key];

    int first_h = -1;
    bool decided = true;
    for (const TinyOracle& o : family) {
      if ((o.bits & qmask) != (amask & qmask)) continue;
      if (first_h == -1) {
        first_h = o.h_star;
      } else if (o.h_star != first_h) {
        decided = false;
        break;
      }
    }
    if (decided) return memo[key] = 0;

    int best = len + 1;
    for (int q = 0; q < len; ++q) {
      if ((qmask >> q) & 1) continue;
      int worst = 0;
      for (unsigned bit = 0; bit <= 1; ++bit) {
        bool consistent = false;
        for (const TinyOracle& o : family) {
          if ((o.bits & qmask) == (amask & qmask) && ((o.bits >> q) & 1) == bit) {
            consistent = true;
            break;
          }
        }
        if (!consistent) continue;
        worst = std::max(worst,
                         1 + value(qmask | (1u << q), amask | (bit << q)));
      }
      best = std::min(best, worst);
    }
    return memo[key] = best;
  }
};

}  // namespace

int exact_det_query_complexity(int n) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("exhaustive strategy search supports n in 1..3 only");
  }
  MinimaxSearch search;
  search.len = 1 << n;
  search.family = tiny_promise_family(n);
  search.memo.assign(std::size_t{1} << (2 * search.len), -1);
  return search.value(0, 0);
}

}  // namespace haarq
