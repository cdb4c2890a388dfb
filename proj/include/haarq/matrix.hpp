#pragma once

#include <vector>

namespace haarq {

// Small dense symmetric matrix, row-major. Mutators keep both triangles in
// step; the eigensolver rejects asymmetric input.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n, double fill = 0.0) : n_(n), a_(std::size_t(n) * n, fill) {}

  static SymMatrix identity(int n);
  static SymMatrix ones(int n);
  static SymMatrix diagonal(const std::vector<double>& d);

  int size() const { return n_; }
  double at(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
  void set(int i, int j, double v) {
    a_[std::size_t(i) * n_ + j] = v;
    a_[std::size_t(j) * n_ + i] = v;
  }
  void add(int i, int j, double v) { set(i, j, at(i, j) + v); }

  bool is_symmetric(double tol = 0.0) const;
  double sum() const;             // sum of all entries
  double trace() const;
  double max_abs() const;
  std::vector<double> diagonal_vector() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator*=(double s);
  // Entrywise (Hadamard) product.
  SymMatrix hadamard(const SymMatrix& other) const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  // column k of `vectors` (entries vectors[i][k]) is the eigenvector of values[k]
  std::vector<std::vector<double>> vectors;
};

// Cyclic Jacobi rotations; sweeps until the off-diagonal Frobenius norm is
// below 1e-12 (or a generous sweep cap, never reached for these sizes).
EigenDecomposition jacobi_eigen(const SymMatrix& m);

double min_eigenvalue(const SymMatrix& m);

// Positive part: V max(diag, 0) V^T. Used by the solver's penalty terms.
SymMatrix psd_part(const SymMatrix& m);

}  // namespace haarq
