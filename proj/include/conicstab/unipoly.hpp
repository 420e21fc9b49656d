#pragma once

#include <complex>
#include <vector>

#include "conicstab/tolerance.hpp"

namespace conicstab {

using Complex = std::complex<double>;

// Dense univariate polynomial, coefficients in ascending degree.
// Leading coefficients that are negligible relative to the largest
// coefficient are trimmed, so degree() is the effective degree.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs, double zero_tol = ToleranceProfile{}.coeff_zero_tol);
  UniPoly(std::initializer_list<double> coeffs);

  static UniPoly from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  Complex operator()(Complex t) const;
  UniPoly derivative() const;
  bool is_real(double tol = 0.0) const;
  double norm1() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(Complex s, const UniPoly& a);

 private:
  void trim(double zero_tol);
  std::vector<Complex> coeffs_;
};

}  // namespace conicstab
