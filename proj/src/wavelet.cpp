#include "haarq/wavelet.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace haarq {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

int transform_depth(std::size_t len) {
  if (len == 0 || (len & (len - 1)) != 0) {
    throw std::invalid_argument("vector length must be a power of two");
  }
  return std::bit_width(len) - 1;
}

std::size_t layout(int n, HaarIndex idx) {
  if (idx.is_zero()) {
    if (idx.l != 0) throw std::invalid_argument("the zero index has l = 0");
    return 0;
  }
  if (idx.h < 1 || idx.h > n) throw std::invalid_argument("h out of range");
  const std::size_t bands = std::size_t{1} << (n - idx.h);
  if (idx.l < 1 || static_cast<std::size_t>(idx.l) > bands) {
    throw std::invalid_argument("l out of range");
  }
  return bands + static_cast<std::size_t>(idx.l - 1);
}

HaarIndex unlayout(int n, std::size_t pos) {
  if (pos >= (std::size_t{1} << n)) throw std::invalid_argument("position out of range");
  if (pos == 0) return HaarIndex::zero();
  const int h = n - (std::bit_width(pos) - 1);
  const std::size_t band_start = std::size_t{1} << (n - h);
  return HaarIndex{h, static_cast<int>(pos - band_start) + 1};
}

void haar_forward(std::span<double> v) {
  transform_depth(v.size());
  std::vector<double> detail(v.size() / 2);
  for (std::size_t m = v.size(); m >= 2; m /= 2) {
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i) {
      const double a = v[2 * i];
      const double b = v[2 * i + 1];
      v[i] = (a + b) * kInvSqrt2;  // write index trails the reads
      detail[i] = (a - b) * kInvSqrt2;
    }
    for (std::size_t i = 0; i < half; ++i) v[half + i] = detail[i];
  }
}

void haar_inverse(std::span<double> v) {
  transform_depth(v.size());
  std::vector<double> coarse(v.size() / 2);
  for (std::size_t m = 2; m <= v.size(); m *= 2) {
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i) coarse[i] = v[i];
    for (std::size_t i = 0; i < half; ++i) {
      const double a = coarse[i];
      const double b = v[half + i];  // still intact: writes stay below half + i
      v[2 * i] = (a + b) * kInvSqrt2;
      v[2 * i + 1] = (a - b) * kInvSqrt2;
    }
  }
}

void walsh_hadamard(std::span<double> v) {
  transform_depth(v.size());
  for (std::size_t len = 1; len < v.size(); len *= 2) {
    for (std::size_t base = 0; base < v.size(); base += 2 * len) {
      for (std::size_t i = base; i < base + len; ++i) {
        const double a = v[i];
        const double b = v[i + len];
        v[i] = (a + b) * kInvSqrt2;
        v[i + len] = (a - b) * kInvSqrt2;
      }
    }
  }
}

}  // namespace haarq
