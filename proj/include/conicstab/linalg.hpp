#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "conicstab/tolerance.hpp"

namespace conicstab {

using Complex = std::complex<double>;

// Dense row-major complex matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  // Real entries, one initializer list per row.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static DenseMatrix diagonal(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  const std::vector<Complex>& entries() const { return entries_; }

  DenseMatrix adjoint() const;
  DenseMatrix transpose() const;
  double frobenius_norm() const;
  bool is_real(double tol = 0.0) const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(Complex s);

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(Complex s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

// max_{ij} |m_ij - conj(m_ji)|
double hermitian_defect(const DenseMatrix& m);

// Throws std::invalid_argument unless m is square and Hermitian within
// tol.hermitian_tol * max(1, ||m||_F).
void require_hermitian(const DenseMatrix& m, const ToleranceProfile& tol = {});

struct HermitianEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // unitary, column k belongs to values[k]
};

// Cyclic complex Jacobi. Unconditionally convergent on Hermitian input.
HermitianEigen hermitian_eigen(const DenseMatrix& m, const ToleranceProfile& tol = {});
std::vector<double> hermitian_eigenvalues(const DenseMatrix& m,
                                          const ToleranceProfile& tol = {});

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

const char* to_string(Definiteness d);

// positive_definite iff lambda_min > tol * ||m||_F, indefinite iff
// lambda_min < -tol * ||m||_F, positive_semidefinite in the band between.
Definiteness psd_classify(const DenseMatrix& m, double tol);
inline Definiteness psd_classify(const DenseMatrix& m, const ToleranceProfile& tol = {}) {
  return psd_classify(m, tol.psd_tol);
}

// Principal square root of a Hermitian positive definite matrix.
// Throws std::domain_error when m is not positive definite.
DenseMatrix sqrt_pd(const DenseMatrix& m, const ToleranceProfile& tol = {});

// LU with partial pivoting. Returns exactly 0 when a pivot falls below
// tol.pivot_tol * ||m||_F.
Complex determinant(const DenseMatrix& m, const ToleranceProfile& tol = {});

}  // namespace conicstab
