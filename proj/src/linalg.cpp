#include "conicstab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace conicstab {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("DenseMatrix: entry count does not match shape");
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("DenseMatrix: ragged rows");
    for (double v : r) entries_.emplace_back(v, 0.0);
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const std::vector<double>& d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

bool DenseMatrix::is_real(double tol) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [tol](const Complex& e) { return std::abs(e.imag()) <= tol; });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in addition");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in subtraction");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(Complex s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double hermitian_defect(const DenseMatrix& m) {
  if (!m.square()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

void require_hermitian(const DenseMatrix& m, const ToleranceProfile& tol) {
  if (!m.square()) throw std::invalid_argument("expected a square matrix");
  const double bound = tol.hermitian_tol * std::max(1.0, m.frobenius_norm());
  if (hermitian_defect(m) > bound) throw std::invalid_argument("expected a Hermitian matrix");
}

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigen(const DenseMatrix& m, const ToleranceProfile& tol) {
  require_hermitian(m, tol);
  const std::size_t n = m.rows();
  DenseMatrix a = m;
  // Symmetrize exactly so the rotations act on a true Hermitian matrix.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  DenseMatrix v = DenseMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  const double target = 1e-3 * tol.eig_tol * scale;

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= std::numeric_limits<double>::min()) continue;
        // Phase change on index q makes a(p,q) real and positive.
        const Complex phase = std::conj(a(p, q)) / mag;
        for (std::size_t k = 0; k < n; ++k) {
          a(k, q) *= phase;
          v(k, q) *= phase;
        }
        for (std::size_t k = 0; k < n; ++k) a(q, k) *= std::conj(phase);
        a(p, q) = mag;
        a(q, p) = mag;

        // Real Jacobi rotation annihilating the (p,q) entry.
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const DenseMatrix& m, const ToleranceProfile& tol) {
  return hermitian_eigen(m, tol).values;
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::positive_semidefinite: return "positive_semidefinite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "?";
}

Definiteness psd_classify(const DenseMatrix& m, double tol) {
  ToleranceProfile profile;
  const auto values = hermitian_eigenvalues(m, profile);
  if (values.empty()) return Definiteness::positive_semidefinite;
  const double band = tol * m.frobenius_norm();
  if (values.front() > band) return Definiteness::positive_definite;
  if (values.front() < -band) return Definiteness::indefinite;
  return Definiteness::positive_semidefinite;
}

DenseMatrix sqrt_pd(const DenseMatrix& m, const ToleranceProfile& tol) {
  const auto eig = hermitian_eigen(m, tol);
  if (eig.values.empty() || eig.values.front() <= tol.psd_tol * m.frobenius_norm()) {
    throw std::domain_error("sqrt_pd: matrix is not positive definite");
  }
  const std::size_t n = m.rows();
  DenseMatrix scaled = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= r;
  }
  DenseMatrix s = scaled * eig.vectors.adjoint();
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = s(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) s(j, i) = std::conj(s(i, j));
  }
  return s;
}

Complex determinant(const DenseMatrix& m, const ToleranceProfile& tol) {
  if (!m.square()) throw std::invalid_argument("determinant: expected a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  DenseMatrix lu = m;
  const double floor = tol.pivot_tol * m.frobenius_norm();
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (std::abs(lu(piv, k)) <= floor) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

}  // namespace conicstab
