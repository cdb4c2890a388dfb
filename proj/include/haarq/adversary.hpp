#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "haarq/matrix.hpp"

namespace haarq {

// Boolean function on a subset of {0,1}^m. Inputs are integers; bit j of an
// input x (j = 1..m, counted from the least significant bit) is (x>>(j-1))&1.
struct PartialBoolFn {
  int m = 0;
  std::vector<std::uint64_t> domain;  // distinct, indexable
  std::vector<std::uint8_t> outputs;  // one bit per domain entry

  int value_at(std::uint64_t x) const;  // -1 when x is outside the domain
  int index_of(std::uint64_t x) const;  // -1 when absent
  bool is_total() const { return domain.size() == (std::uint64_t{1} << m); }

  static PartialBoolFn identity1();
  static PartialBoolFn nand2();
  // Same outputs on a restricted domain (entries must exist).
  PartialBoolFn restricted(const std::vector<std::uint64_t>& sub) const;
};

int input_bit(std::uint64_t x, int pos);  // pos = 1..64, LSB first

// The dual program's fixed matrices: G (output agreement), one filtering
// matrix per input bit (1 where that bit differs), and the all-ones J.
struct DualConstraints {
  SymMatrix G;
  std::vector<SymMatrix> deltas;
  SymMatrix J;
};

DualConstraints build_constraints(const PartialBoolFn& f);

// Candidate (W, Omega) for the dual program. Omega is diagonal, stored as a
// vector; `value` is the sum of W's entries.
struct DualPoint {
  SymMatrix W;
  std::vector<double> omega;

  double value() const { return W.sum(); }
};

struct FeasibilityReport {
  double zero_pattern = 0;    // max |(W o G)_{xy}|
  double trace_error = 0;     // |Tr(Omega) - 1|
  double min_eigenvalue = 0;  // min over the 2m matrices Omega +- W o Delta_i
  double value = 0;

  bool feasible(double tol) const {
    return zero_pattern <= tol && trace_error <= tol && min_eigenvalue >= -tol;
  }
};

FeasibilityReport check_feasible(const PartialBoolFn& f, const DualPoint& point);

struct BalanceReport {
  double min_eigenvalue = 0;  // min over d*Omega + W and d*Omega - W
  double trace_zero = 0;      // sum of Omega over inputs with output 0
  double trace_one = 0;

  bool balanced(double tol) const {
    return min_eigenvalue >= -tol && std::abs(trace_zero - 0.5) <= tol &&
           std::abs(trace_one - 0.5) <= tol;
  }
};

BalanceReport check_balanced(const PartialBoolFn& f, const DualPoint& point, double d);

struct SolveOptions {
  int starts = 8;
  int max_iterations = 5000;   // inner ascent iterations per start
  double feas_tol = 1e-8;      // certification tolerance
  double stall_tol = 1e-6;     // objective stall for convergence
  std::uint64_t seed = 0;
  bool balanced = false;       // split Tr(Omega) evenly across output classes
};

struct SolveReport {
  double value = 0;     // best certified-feasible objective
  double residual = 0;  // most negative constraint eigenvalue of the point
  int iterations = 0;   // total inner iterations across starts
  int starts = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

struct SolveResult {
  DualPoint point;
  SolveReport report;
};

// Multi-start ascent on the dual objective with eigenvalue penalties; the
// zero pattern is enforced by construction and the returned point is always
// re-certified by check_feasible. The value is a lower-bound certificate.
SolveResult solve_adv(const PartialBoolFn& f, const SolveOptions& options = {});

// Zero-pads a matrix indexed by `domain` (subset of {0,1}^bits) to the full
// hypercube index set 0..2^bits-1.
SymMatrix extend_primed(const SymMatrix& a, const std::vector<std::uint64_t>& domain,
                        int bits);

// Block-expands a matrix over {0,1}^p to one over (domain of g)^p:
// entry at tuples (x, y) is the source entry at (g(x^1)..g(x^p), g(y^1)..g(y^p)).
// Tuples are flattened with x^1 as the most significant digit.
SymMatrix tilde_expand(const SymMatrix& a_full, const PartialBoolFn& g, int p);

// f on p bits composed with total g: domain is every tuple (x^1..x^p) in C^p
// whose image under g lands in f's domain; input bit (i-1)*m+j of the packed
// integer is bit j of x^i. Domain order follows the x^1-major tuple order.
PartialBoolFn compose_function(const PartialBoolFn& f, const PartialBoolFn& g);

struct ComposeResult {
  PartialBoolFn composed;
  DualPoint point;
  double c = 0;               // scale 2^p * d_g^{-(p-1)}
  double expected_value = 0;  // d_f * d_g
};

// Builds the composed dual point from a point (V, Lambda) for the outer f and
// a balanced point (W, Omega) for the inner g. Inputs failing feasibility or
// balance at input_tol are refused.
ComposeResult compose_dual(const DualPoint& f_point, const DualPoint& g_point,
                           const PartialBoolFn& f, const PartialBoolFn& g,
                           double input_tol = 1e-8);

}  // namespace haarq
