#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "haarq/errors.hpp"

namespace haarq {

// Largest n for which bits are materialized eagerly (2^26 bytes = 64 MiB).
inline constexpr int kMaxEagerN = 26;
// Lazy oracles compute bits on demand and support the full 64-bit index range.
inline constexpr int kMaxLazyN = 64;

// Block-promise parameters of a Haar Problem oracle on [0, 2^n): block size
// 2^h_star, and b[l-1] holds the first-half bit of block l (blocks counted
// from 1).
struct HaarInstance {
  int n = 0;
  int h_star = 0;
  std::vector<std::uint8_t> b;
};

// Validates 1 <= h_star <= n and |b| = 2^(n-h_star) with 0/1 entries.
HaarInstance make_instance(int n, int h_star, std::vector<std::uint8_t> b);

// h* uniform on {1..n}, b bits i.i.d. fair; deterministic per seed.
HaarInstance random_instance(int n, std::uint64_t seed);

// Hidden-string instance: x_i = popcount(i AND k) mod 2.
struct ParityInstance {
  int n = 0;
  std::uint64_t k = 0;
};

ParityInstance make_parity_instance(int n, std::uint64_t k);

// A queryable bit function on [0, 2^n) with exact query accounting.
// Backing is either an explicit bit vector or a lazy (h_star, seed) rule.
class Oracle {
 public:
  static Oracle eager(int n, std::vector<std::uint8_t> bits);
  static Oracle lazy(int n, int h_star, std::uint64_t seed);

  int n() const { return n_; }
  bool is_lazy() const { return lazy_; }
  std::uint64_t queries() const { return queries_; }
  void reset_queries() { queries_ = 0; }

  // One classical query; the counter moves by exactly 1, repeats included.
  int query(std::uint64_t i);

  // Raw bit access with no accounting (promise scans, serialization).
  int bit(std::uint64_t i) const;

  // Phase-flip application: amps[i] *= (-1)^{x_i}. Counts as one query.
  void phase_query(std::span<double> amps);

  // Explicit bits; eager scale only (lazy oracles with n <= kMaxEagerN
  // are expanded on the fly).
  std::vector<std::uint8_t> bits_copy() const;

 private:
  Oracle() = default;

  int n_ = 0;
  bool lazy_ = false;
  int lazy_h_ = 0;
  std::uint64_t lazy_seed_ = 0;
  std::vector<std::uint8_t> bits_;
  std::uint64_t queries_ = 0;
};

// Eager expansion of the block promise: within block l the first half is
// b_l and the second half is NOT b_l.
Oracle expand(const HaarInstance& inst);

// On-demand oracle for 1 <= h_star <= n <= 64; the block bit is
// mix64(seed XOR mix64(l)) & 1, never cached.
Oracle lazy_oracle(int n, int h_star, std::uint64_t seed);

Oracle parity_oracle(const ParityInstance& inst);

struct DetectedPromise {
  int h_star = 0;
  std::vector<std::uint8_t> b;
};

// Scans h = 1..n ascending and returns the first (h*, b) satisfying the
// block promise; throws promise_violation when none fits. The match is
// unique (asserted exhaustively in tests).
DetectedPromise detect_h_star(std::span<const std::uint8_t> bits);

// All h passing the promise scan, for uniqueness checks.
std::vector<int> detect_h_star_candidates(std::span<const std::uint8_t> bits);

}  // namespace haarq
