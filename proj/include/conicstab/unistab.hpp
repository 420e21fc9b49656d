#pragma once

#include <string>
#include <vector>

#include "conicstab/tolerance.hpp"
#include "conicstab/unipoly.hpp"

namespace conicstab {

// All deg(p) roots with multiplicity (Aberth-Ehrlich). Approximations whose
// inclusion discs overlap form a numerical multiple root; a cluster of k is
// replaced by the nearby simple root of p^(k-1), which is far more accurate
// than the individual iterates. Throws std::invalid_argument for the zero
// polynomial.
std::vector<Complex> roots(const UniPoly& p, const ToleranceProfile& tol = {});

// No root in the open upper half-plane: Im(r) <= tol * max(1, |r|).
// The zero polynomial is not stable.
bool is_stable_univariate(const UniPoly& p, const ToleranceProfile& tol = {});

// |Im(r)| <= tol.real_root_tol * max(1, |r|) for every root; nonzero
// constants are real-rooted, the zero polynomial is not.
bool is_real_rooted(const UniPoly& p, const ToleranceProfile& tol = {});

// Sorted real parts of the roots of a real-rooted polynomial.
std::vector<double> real_roots_sorted(const UniPoly& p, const ToleranceProfile& tol = {});

enum class InterlaceKind { strict, non_strict, proper, proper_reversed, none, identical_roots };

const char* to_string(InterlaceKind k);

struct InterlaceReport {
  InterlaceKind kind = InterlaceKind::none;
  std::vector<double> roots_f;
  std::vector<double> roots_g;
  bool interlace = false;
  bool strict = false;
  bool f_properly_interlaces_g = false;
  bool g_properly_interlaces_f = false;
};

// Alternation of the roots of two real polynomials. Polynomials that are not
// real-rooted (including zero) give kind none.
//
// kind is the most specific classification, in order: identical_roots,
// proper (f interlaces g properly), proper_reversed (g interlaces f
// properly), strict, non_strict, none. The boolean fields report every
// relation independently.
InterlaceReport interlacing(const UniPoly& f, const UniPoly& g, const ToleranceProfile& tol = {});

// W(f,g) = f'g - g'f
UniPoly wronskian(const UniPoly& f, const UniPoly& g);

struct SignCheck {
  bool leq_zero = false;
  double max_value = 0.0;   // largest sampled value of W
  double argmax = 0.0;
  bool positive_at_infinity = false;
};

// Decides W(f,g) <= 0 on R: checks the behaviour at infinity from the
// leading term and evaluates W at the real critical points plus a
// Chebyshev grid over [-R, R], R = 1 + Cauchy bound of W.
SignCheck wronskian_sign_leq0(const UniPoly& f, const UniPoly& g, std::size_t grid_points = 257,
                              const ToleranceProfile& tol = {});

}  // namespace conicstab
