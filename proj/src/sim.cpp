#include "haarq/sim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "haarq/rng.hpp"

namespace haarq {

SimState uniform_state(int n, int max_n) {
  if (n < 1 || n > max_n) {
    throw std::invalid_argument("simulation requires 1 <= n <= " + std::to_string(max_n));
  }
  SimState s;
  s.n = n;
  s.amps.assign(std::size_t{1} << n, std::pow(2.0, -0.5 * n));
  return s;
}

void apply_phase_oracle(SimState& state, Oracle& oracle) {
  if (oracle.n() != state.n) {
    throw std::invalid_argument("oracle and state dimensions differ");
  }
  oracle.phase_query(state.amps);
}

double MeasurementDistribution::total() const {
  double s = 0;
  for (double x : p) s += x;
  return s;
}

double MeasurementDistribution::band_mass(int h) const {
  if (basis != Basis::haar) throw std::invalid_argument("band_mass needs a Haar distribution");
  if (h == 0) return p[0];
  if (h < 1 || h > n) throw std::invalid_argument("h out of range");
  const std::size_t start = std::size_t{1} << (n - h);
  double s = 0;
  for (std::size_t pos = start; pos < 2 * start; ++pos) s += p[pos];
  return s;
}

std::size_t sample_outcome(const MeasurementDistribution& dist, std::uint64_t seed) {
  Rng rng(seed);
  const double r = rng.next_double() * dist.total();
  double acc = 0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    acc += dist.p[i];
    if (r < acc) return i;
  }
  return dist.p.size() - 1;
}

namespace {

MeasurementDistribution squared(const SimState& state, Basis basis) {
  MeasurementDistribution d;
  d.n = state.n;
  d.basis = basis;
  d.p.resize(state.amps.size());
  for (std::size_t i = 0; i < d.p.size(); ++i) d.p[i] = state.amps[i] * state.amps[i];
  return d;
}

}  // namespace

HaarRun haar_algorithm(Oracle& oracle, int max_n) {
  const std::uint64_t before = oracle.queries();
  SimState s = uniform_state(oracle.n(), max_n);
  apply_phase_oracle(s, oracle);
  haar_forward(s.amps);

  HaarRun run;
  run.distribution = squared(s, Basis::haar);
  run.h_out = 0;
  run.h_out_mass = run.distribution.p[0];
  for (int h = 1; h <= s.n; ++h) {
    const double m = run.distribution.band_mass(h);
    if (m > run.h_out_mass) {
      run.h_out_mass = m;
      run.h_out = h;
    }
  }
  run.queries = oracle.queries() - before;
  return run;
}

BvRun bv_algorithm(Oracle& oracle, int max_n) {
  const std::uint64_t before = oracle.queries();
  SimState s = uniform_state(oracle.n(), max_n);
  apply_phase_oracle(s, oracle);
  walsh_hadamard(s.amps);

  BvRun run;
  run.distribution = squared(s, Basis::standard);
  for (std::size_t i = 0; i < run.distribution.p.size(); ++i) {
    if (run.distribution.p[i] > run.outcome_p) {
      run.outcome_p = run.distribution.p[i];
      run.outcome = i;
    }
  }
  run.h_from_k = run.outcome == 0 ? 0 : std::countr_zero(run.outcome) + 1;
  run.queries = oracle.queries() - before;
  return run;
}

}  // namespace haarq
