#pragma once

#include <cstdint>
#include <vector>

#include "haarq/oracle.hpp"
#include "haarq/wavelet.hpp"

namespace haarq {

// Default cap on simulated qubits (2^26 doubles = 512 MiB); callers may
// raise it explicitly, the CLI reads HAARQ_MAX_SIM_N.
inline constexpr int kDefaultMaxSimN = 26;

// Unit-norm real amplitude vector of length 2^n.
struct SimState {
  int n = 0;
  std::vector<double> amps;
};

SimState uniform_state(int n, int max_n = kDefaultMaxSimN);

// amps[i] *= (-1)^{x_i}; bumps the oracle counter by exactly one.
void apply_phase_oracle(SimState& state, Oracle& oracle);

enum class Basis { haar, standard };

// Exact outcome probabilities. For Basis::haar, index p[pos] belongs to the
// coefficient at layout position pos (see unlayout); for Basis::standard it
// is the computational-basis index.
struct MeasurementDistribution {
  int n = 0;
  Basis basis = Basis::standard;
  std::vector<double> p;

  double total() const;
  // Total mass of the scale-h band (haar basis; h = 0 is the constant term).
  double band_mass(int h) const;
};

// Inverse-CDF draw of an outcome position; deterministic per seed.
std::size_t sample_outcome(const MeasurementDistribution& dist, std::uint64_t seed);

struct HaarRun {
  MeasurementDistribution distribution;
  int h_out = 0;          // scale with the largest band mass
  double h_out_mass = 0;  // that band's mass; 1 on promise inputs
  std::uint64_t queries = 0;
};

// Uniform superposition, one phase query, Haar-basis measurement.
HaarRun haar_algorithm(Oracle& oracle, int max_n = kDefaultMaxSimN);

struct BvRun {
  MeasurementDistribution distribution;
  std::uint64_t outcome = 0;  // most probable standard-basis outcome
  double outcome_p = 0;
  int h_from_k = 0;  // 1-based position of the lowest set bit; 0 when outcome is 0
  std::uint64_t queries = 0;
};

// Uniform superposition, one phase query, Hadamard-basis measurement.
// On a parity oracle the outcome is the hidden string with certainty.
BvRun bv_algorithm(Oracle& oracle, int max_n = kDefaultMaxSimN);

}  // namespace haarq
