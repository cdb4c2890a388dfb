#include "haarq/oracle.hpp"

#include <stdexcept>
#include <string>

#include "haarq/rng.hpp"

namespace haarq {

namespace {

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

void check_n_eager(int n) {
  if (n < 1 || n > kMaxEagerN) {
    throw std::invalid_argument("n must be in 1.." + std::to_string(kMaxEagerN) +
                                ", got " + std::to_string(n));
  }
}

int lazy_bit(int h_star, std::uint64_t seed, std::uint64_t i) {
  const std::uint64_t l = (h_star == 64 ? 0 : (i >> h_star)) + 1;
  const int b_l = static_cast<int>(mix64(seed ^ mix64(l)) & 1);
  const int second_half = static_cast<int>((i >> (h_star - 1)) & 1);
  return b_l ^ second_half;
}

}  // namespace

HaarInstance make_instance(int n, int h_star, std::vector<std::uint8_t> b) {
  check_n_eager(n);
  if (h_star < 1 || h_star > n) {
    throw std::invalid_argument("h_star must be in 1..n, got " + std::to_string(h_star));
  }
  const std::uint64_t want = pow2(n - h_star);
  if (b.size() != want) {
    throw std::invalid_argument("b must have length 2^(n-h_star) = " + std::to_string(want) +
                                ", got " + std::to_string(b.size()));
  }
  for (std::uint8_t v : b) {
    if (v > 1) throw std::invalid_argument("b entries must be 0 or 1");
  }
  return HaarInstance{n, h_star, std::move(b)};
}

HaarInstance random_instance(int n, std::uint64_t seed) {
  check_n_eager(n);
  Rng rng(seed);
  const int h_star = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  std::vector<std::uint8_t> b(pow2(n - h_star));
  for (auto& v : b) v = static_cast<std::uint8_t>(rng.next_bit());
  return HaarInstance{n, h_star, std::move(b)};
}

ParityInstance make_parity_instance(int n, std::uint64_t k) {
  check_n_eager(n);
  if (n < 64 && (k >> n) != 0) {
    throw std::invalid_argument("k must fit in n bits");
  }
  return ParityInstance{n, k};
}

Oracle Oracle::eager(int n, std::vector<std::uint8_t> bits) {
  check_n_eager(n);
  if (bits.size() != pow2(n)) {
    throw std::invalid_argument("bit vector must have length 2^n");
  }
  for (std::uint8_t v : bits) {
    if (v > 1) throw std::invalid_argument("bits must be 0 or 1");
  }
  Oracle o;
  o.n_ = n;
  o.bits_ = std::move(bits);
  return o;
}

Oracle Oracle::lazy(int n, int h_star, std::uint64_t seed) {
  if (n < 1 || n > kMaxLazyN) {
    throw std::invalid_argument("lazy oracle requires 1 <= n <= 64");
  }
  if (h_star < 1 || h_star > n) {
    throw std::invalid_argument("h_star must be in 1..n");
  }
  Oracle o;
  o.n_ = n;
  o.lazy_ = true;
  o.lazy_h_ = h_star;
  o.lazy_seed_ = seed;
  return o;
}

int Oracle::bit(std::uint64_t i) const {
  if (n_ < 64 && i >= pow2(n_)) {
    throw std::invalid_argument("oracle index out of range");
  }
  if (lazy_) return lazy_bit(lazy_h_, lazy_seed_, i);
  return bits_[i];
}

int Oracle::query(std::uint64_t i) {
  const int v = bit(i);  // bounds-checked before counting
  ++queries_;
  return v;
}

void Oracle::phase_query(std::span<double> amps) {
  if (n_ > kMaxEagerN || amps.size() != pow2(n_)) {
    throw std::invalid_argument("amplitude vector does not match oracle dimension");
  }
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (bit(i)) amps[i] = -amps[i];
  }
  ++queries_;
}

std::vector<std::uint8_t> Oracle::bits_copy() const {
  if (!lazy_) return bits_;
  if (n_ > kMaxEagerN) {
    throw std::invalid_argument("cannot materialize a lazy oracle with n > " +
                                std::to_string(kMaxEagerN));
  }
  std::vector<std::uint8_t> out(pow2(n_));
  for (std::uint64_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(lazy_bit(lazy_h_, lazy_seed_, i));
  }
  return out;
}

Oracle expand(const HaarInstance& inst) {
  std::vector<std::uint8_t> bits(pow2(inst.n));
  const std::uint64_t block = pow2(inst.h_star);
  const std::uint64_t half = block / 2;
  for (std::uint64_t l = 0; l < inst.b.size(); ++l) {
    const std::uint8_t v = inst.b[l];
    for (std::uint64_t j = 0; j < block; ++j) {
      bits[l * block + j] = (j < half) ? v : static_cast<std::uint8_t>(1 - v);
    }
  }
  return Oracle::eager(inst.n, std::move(bits));
}

Oracle lazy_oracle(int n, int h_star, std::uint64_t seed) {
  return Oracle::lazy(n, h_star, seed);
}

Oracle parity_oracle(const ParityInstance& inst) {
  std::vector<std::uint8_t> bits(pow2(inst.n));
  for (std::uint64_t i = 0; i < bits.size(); ++i) {
    bits[i] = static_cast<std::uint8_t>(__builtin_popcountll(i & inst.k) & 1);
  }
  return Oracle::eager(inst.n, std::move(bits));
}

namespace {

bool promise_holds(std::span<const std::uint8_t> bits, int h) {
  const std::uint64_t block = pow2(h);
  const std::uint64_t half = block / 2;
  for (std::uint64_t base = 0; base < bits.size(); base += block) {
    const std::uint8_t v = bits[base];
    for (std::uint64_t j = 0; j < block; ++j) {
      const std::uint8_t want = (j < half) ? v : static_cast<std::uint8_t>(1 - v);
      if (bits[base + j] != want) return false;
    }
  }
  return true;
}

int depth_of(std::span<const std::uint8_t> bits) {
  const std::size_t len = bits.size();
  if (len == 0 || (len & (len - 1)) != 0) {
    throw std::invalid_argument("bit vector length must be a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < len) ++n;
  return n;
}

}  // namespace

DetectedPromise detect_h_star(std::span<const std::uint8_t> bits) {
  const int n = depth_of(bits);
  if (n < 1) throw std::invalid_argument("need at least 2 bits");
  for (int h = 1; h <= n; ++h) {
    if (!promise_holds(bits, h)) continue;
    const std::uint64_t block = pow2(h);
    std::vector<std::uint8_t> b(bits.size() / block);
    for (std::uint64_t l = 0; l < b.size(); ++l) b[l] = bits[l * block];
    return DetectedPromise{h, std::move(b)};
  }
  throw promise_violation("no h in 1..n satisfies the block promise");
}

std::vector<int> detect_h_star_candidates(std::span<const std::uint8_t> bits) {
  const int n = depth_of(bits);
  std::vector<int> out;
  for (int h = 1; h <= n; ++h) {
    if (promise_holds(bits, h)) out.push_back(h);
  }
  return out;
}

}  // namespace haarq
