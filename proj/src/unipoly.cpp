#include "conicstab/unipoly.hpp"

#include <algorithm>
#include <cmath>

namespace conicstab {

UniPoly::UniPoly(std::vector<Complex> coeffs, double zero_tol) : coeffs_(std::move(coeffs)) {
  trim(zero_tol);
}

UniPoly::UniPoly(std::initializer_list<double> coeffs) {
  for (double c : coeffs) coeffs_.emplace_back(c, 0.0);
  trim(ToleranceProfile{}.coeff_zero_tol);
}

void UniPoly::trim(double zero_tol) {
  double largest = 0.0;
  for (const auto& c : coeffs_) largest = std::max(largest, std::abs(c));
  const double cut = zero_tol * std::max(1.0, largest);
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

UniPoly UniPoly::from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return UniPoly(std::move(c), 0.0);
}

Complex UniPoly::operator()(Complex t) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return UniPoly(std::move(d), 0.0);
}

bool UniPoly::is_real(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [tol](const Complex& c) { return std::abs(c.imag()) <= tol; });
}

double UniPoly::norm1() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Complex(-1.0) * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(c));
}

UniPoly operator*(Complex s, const UniPoly& a) {
  std::vector<Complex> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return UniPoly(std::move(c));
}

}  // namespace conicstab
