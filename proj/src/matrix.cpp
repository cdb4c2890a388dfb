#include "haarq/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace haarq {

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::ones(int n) { return SymMatrix(n, 1.0); }

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.size(); ++i) m.set(i, i, d[i]);
  return m;
}

bool SymMatrix::is_symmetric(double tol) const {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > tol) return false;
    }
  }
  return true;
}

double SymMatrix::sum() const {
  double s = 0;
  for (double v : a_) s += v;
  return s;
}

double SymMatrix::trace() const {
  double s = 0;
  for (int i = 0; i < n_; ++i) s += at(i, i);
  return s;
}

double SymMatrix::max_abs() const {
  double s = 0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

std::vector<double> SymMatrix::diagonal_vector() const {
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

SymMatrix SymMatrix::hadamard(const SymMatrix& other) const {
  if (other.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  SymMatrix out(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * other.a_[i];
  return out;
}

namespace {

double off_diagonal_norm(const SymMatrix& a) {
  double s = 0;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = i + 1; j < a.size(); ++j) s += 2.0 * a.at(i, j) * a.at(i, j);
  }
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(const SymMatrix& m) {
  if (!m.is_symmetric(1e-12)) {
    throw std::invalid_argument("jacobi_eigen requires a symmetric matrix");
  }
  const int n = m.size();
  SymMatrix a = m;
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  const double target = 1e-12;
  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a.at(p, p);
        const double aqq = a.at(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.set(k, p, c * akp - s * akq);
          a.set(k, q, s * akp + c * akq);
        }
        // the (p,p),(p,q),(q,q) entries were clobbered row-then-column; redo exactly
        a.set(p, p, c * c * app - 2.0 * s * c * apq + s * s * aqq);
        a.set(q, q, s * s * app + 2.0 * s * c * apq + c * c * aqq);
        a.set(p, q, 0.0);
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  EigenDecomposition out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = a.at(i, i);
  // sort ascending, carrying the eigenvector columns along
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (out.values[order[j]] < out.values[order[i]]) std::swap(order[i], order[j]);
    }
  }
  EigenDecomposition sorted;
  sorted.values.resize(n);
  sorted.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    sorted.values[k] = out.values[order[k]];
    for (int i = 0; i < n; ++i) sorted.vectors[i][k] = v[i][order[k]];
  }
  return sorted;
}

double min_eigenvalue(const SymMatrix& m) { return jacobi_eigen(m).values.front(); }

SymMatrix psd_part(const SymMatrix& m) {
  const EigenDecomposition e = jacobi_eigen(m);
  const int n = m.size();
  SymMatrix out(n);
  for (int k = 0; k < n; ++k) {
    if (e.values[k] <= 0) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        out.set(i, j, out.at(i, j) + e.values[k] * e.vectors[i][k] * e.vectors[j][k]);
      }
    }
  }
  return out;
}

}  // namespace haarq
