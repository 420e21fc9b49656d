#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conicstab/tolerance.hpp"
#include "conicstab/unipoly.hpp"

namespace conicstab {

using Exponent = std::vector<std::uint32_t>;

// Sparse multivariate polynomial with complex coefficients over a fixed,
// named variable list. Coefficients with modulus <= zero_tol are dropped
// after every operation, so the zero polynomial has no terms.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Complex>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> var_names,
                     double zero_tol = ToleranceProfile{}.coeff_zero_tol);
  MultiPoly(std::vector<std::string> var_names, TermMap terms,
            double zero_tol = ToleranceProfile{}.coeff_zero_tol);

  static MultiPoly constant(std::vector<std::string> var_names, Complex c);
  static MultiPoly variable(std::vector<std::string> var_names, std::size_t index);

  std::size_t nvars() const { return var_names_.size(); }
  const std::vector<std::string>& var_names() const { return var_names_; }
  const TermMap& terms() const { return terms_; }
  double zero_tol() const { return zero_tol_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  Complex coefficient(const Exponent& e) const;
  double norm1() const;

  void add_term(const Exponent& e, Complex c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(Complex s);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(Complex s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.var_names_ == b.var_names_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_vars(const MultiPoly& other) const;
  void prune();

  std::vector<std::string> var_names_;
  TermMap terms_;
  double zero_tol_ = ToleranceProfile{}.coeff_zero_tol;
};

MultiPoly pow(const MultiPoly& f, unsigned exponent);

// Symmetric matrix variables z_ij, i <= j, flattened row-major over the
// upper triangle.
class MatrixVarIndex {
 public:
  explicit MatrixVarIndex(std::size_t n) : n_(n) {}
  std::size_t side() const { return n_; }
  std::size_t size() const { return n_ * (n_ + 1) / 2; }
  // (j,i) resolves to (i,j).
  std::size_t flat(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> entry(std::size_t flat) const;
  // "z11", "z12", ... (1-based); "z1_10" style once n > 9.
  std::vector<std::string> names(std::string_view prefix = "z") const;

 private:
  std::size_t n_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar: sums/differences of products of powers of signed integer,
// decimal or imaginary ("2.5i", "i") literals, variables and parenthesised
// subexpressions. Exponents are non-negative integers.
MultiPoly parse(std::string_view text, const std::vector<std::string>& var_names,
                const ToleranceProfile& tol = {});

// Variables collected from the expression, in natural order (z2 before z10).
std::vector<std::string> collect_variables(std::string_view text);

std::string to_string(const MultiPoly& f);

// h = g + i*f with g, f real.
std::pair<MultiPoly, MultiPoly> real_imag_parts(const MultiPoly& h);

bool is_real(const MultiPoly& f, double tol = 0.0);
bool is_homogeneous(const MultiPoly& f);
Complex eval(const MultiPoly& f, std::span<const Complex> point);
Complex eval(const MultiPoly& f, std::span<const double> point);

// t -> f(x + t*y)
UniPoly restrict_line(const MultiPoly& f, std::span<const double> x, std::span<const double> y);
// t -> f(x + t*y) with a complex base point.
UniPoly restrict_line(const MultiPoly& f, std::span<const Complex> x, std::span<const double> y);

// Substitutes the given variable indices; the result lives on the remaining
// variables, in their original order.
MultiPoly substitute_partial(const MultiPoly& f, const std::map<std::size_t, Complex>& assignments);

// sum_k v_k df/dz_k
MultiPoly directional_derivative(const MultiPoly& f, std::span<const double> v);

// d_v f * g - f * d_v g, for real f and g.
MultiPoly wronskian_v(const MultiPoly& f, const MultiPoly& g, std::span<const double> v);

// z_k -> z_kk on n(n+1)/2 symmetric matrix variables.
MultiPoly diag_substitution(const MultiPoly& f);

// Same polynomial on another variable list of equal length.
MultiPoly rename_variables(const MultiPoly& f, std::vector<std::string> var_names);

// Appends one variable (with exponent 0 in every existing term).
MultiPoly append_variable(const MultiPoly& f, const std::string& name);

}  // namespace conicstab
