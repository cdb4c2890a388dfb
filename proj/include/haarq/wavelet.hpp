#pragma once

#include <cstddef>
#include <span>

namespace haarq {

// Coefficient label for the orthonormal Haar basis on length-2^n vectors:
// h == 0 names the constant function's coefficient, otherwise h in 1..n and
// l in 1..2^(n-h).
struct HaarIndex {
  int h = 0;
  int l = 0;

  static constexpr HaarIndex zero() { return HaarIndex{0, 0}; }
  constexpr bool is_zero() const { return h == 0; }
  constexpr bool operator==(const HaarIndex&) const = default;
};

// Coarse-to-fine coefficient layout: the constant coefficient at 0 and
// (h, l) at 2^(n-h) + (l-1). Bijective onto [0, 2^n).
std::size_t layout(int n, HaarIndex idx);
HaarIndex unlayout(int n, std::size_t pos);

// Fast orthonormal Haar transform; coefficient at layout(h, l) equals the
// inner product with the 2^(-h/2)-scaled step function on block l.
void haar_forward(std::span<double> v);
void haar_inverse(std::span<double> v);

// Fast orthonormal Walsh-Hadamard transform; self-inverse.
void walsh_hadamard(std::span<double> v);

// Depth n of a length-2^n vector; rejects non-powers of two.
int transform_depth(std::size_t len);

}  // namespace haarq
