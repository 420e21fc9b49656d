#pragma once

// Seeded instance generators shared by the property tests and the
// acceptance binary.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "conicstab/cones.hpp"
#include "conicstab/poly.hpp"
#include "conicstab/sampling.hpp"
#include "conicstab/unipoly.hpp"
#include "conicstab/unistab.hpp"

namespace gen {

using conicstab::Complex;
using conicstab::Cone;
using conicstab::MultiPoly;
using conicstab::UniPoly;

// Increasing reals with gaps in [0.3, 1.5].
inline std::vector<double> spaced_reals(std::mt19937_64& rng, std::size_t count, double start) {
  std::uniform_real_distribution<double> gap(0.3, 1.5);
  std::vector<double> out;
  double x = start;
  for (std::size_t i = 0; i < count; ++i) out.push_back(x += gap(rng));
  return out;
}

inline UniPoly real_from_roots(const std::vector<double>& r, double lead) {
  return UniPoly::from_roots(std::vector<Complex>(r.begin(), r.end()), lead);
}

enum class PairKind { lower_degree_positive, lower_degree_negative, same_degree, separated };

struct UniPair {
  UniPoly f, g;
  PairKind kind;
  bool g_plus_if_stable;  // known by construction
  bool interlacing;       // real roots alternate (either order)
};

// Case `idx` of the univariate Hermite-Biehler/HKO family, degree 1..8.
inline UniPair uni_pair(std::uint64_t seed, std::uint64_t idx) {
  auto rng = conicstab::draw_stream(seed, idx);
  const std::size_t d = 1 + idx / 4 % 8;
  std::uniform_real_distribution<double> lead(0.5, 3.0);
  const double lg = lead(rng), lf = lead(rng);
  const auto kind = static_cast<PairKind>(idx % 4);
  switch (kind) {
    case PairKind::lower_degree_positive:
    case PairKind::lower_degree_negative: {
      // a_1 < b_1 < a_2 < ... < b_{d-1} < a_d
      const auto r = spaced_reals(rng, 2 * d - 1, -static_cast<double>(d));
      std::vector<double> a, b;
      for (std::size_t i = 0; i < r.size(); ++i) (i % 2 == 0 ? a : b).push_back(r[i]);
      const bool pos = kind == PairKind::lower_degree_positive;
      return {real_from_roots(b, pos ? lf : -lf), real_from_roots(a, lg), kind, pos, true};
    }
    case PairKind::same_degree: {
      // b_1 < a_1 < b_2 < ... < b_d < a_d with positive leading terms
      const auto r = spaced_reals(rng, 2 * d, -static_cast<double>(d));
      std::vector<double> a, b;
      for (std::size_t i = 0; i < r.size(); ++i) (i % 2 == 0 ? b : a).push_back(r[i]);
      return {real_from_roots(b, lf), real_from_roots(a, lg), kind, true, true};
    }
    case PairKind::separated:
    default: {
      // Every root of f lies left of every root of g, and f has at least two.
      const auto fr = spaced_reals(rng, std::max<std::size_t>(d, 2), -2.0 * static_cast<double>(d) - 4);
      const auto gr = spaced_reals(rng, d, fr.back() + 0.5);
      return {real_from_roots(fr, lf), real_from_roots(gr, lg), kind, false, false};
    }
  }
}

// Hermite-Biehler on one constructed pair: stability of g + i f, proper
// interlacing of g by f and the construction all agree.
inline bool hb_consistent(const UniPair& p) {
  const UniPoly h = p.g + Complex(0, 1) * p.f;
  const bool stable = conicstab::is_stable_univariate(h);
  const auto rep = conicstab::interlacing(p.f, p.g);
  return stable == p.g_plus_if_stable && rep.f_properly_interlaces_g == p.g_plus_if_stable &&
         rep.interlace == p.interlacing;
}

// Univariate HKO on the integer grid {-3..3}^2: interlacing pairs give
// real-rooted (or zero) combinations throughout, separated pairs give at
// least one combination with a non-real root.
inline bool hko_consistent(const UniPair& p) {
  bool all_real = true;
  for (int l = -3; l <= 3; ++l)
    for (int m = -3; m <= 3; ++m) {
      const UniPoly c = Complex(l) * p.f + Complex(m) * p.g;
      if (!c.is_zero() && !conicstab::is_real_rooted(c)) all_real = false;
    }
  return all_real == p.interlacing;
}

// Monic polynomial of degree 1..8 with every root in the open lower half plane.
inline UniPoly random_stable_uni(std::uint64_t seed, std::uint64_t idx) {
  auto rng = conicstab::draw_stream(seed, idx);
  const std::size_t d = 1 + idx % 8;
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> im(0.2, 2.0);
  std::vector<Complex> r(d);
  for (auto& z : r) z = Complex(2 * g(rng), -im(rng));
  return UniPoly::from_roots(r);
}

inline std::vector<std::string> vars_for(const Cone& k) {
  if (const auto* p = std::get_if<conicstab::PsdCone>(&k.variant())) return conicstab::MatrixVarIndex(p->n).names();
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= k.dim(); ++i) v.push_back("z" + std::to_string(i));
  return v;
}

// Pointed polyhedral cone in R^n with m spanning generators.
inline Cone random_polyhedral(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::normal_distribution<double> g;
  for (;;) {
    std::vector<std::vector<double>> gens(m, std::vector<double>(n));
    for (auto& v : gens)
      for (auto& x : v) x = 1.0 + 0.9 * g(rng);
    try {
      return Cone::polyhedral(gens);
    } catch (const std::invalid_argument&) {
    }
  }
}

// a drawn from int K* by rejection, flipping the sign of each draw once.
inline std::vector<double> dual_interior_vector(std::mt19937_64& rng, const Cone& k) {
  std::normal_distribution<double> g;
  std::vector<double> a(k.dim());
  for (;;) {
    for (auto& x : a) x = g(rng);
    if (conicstab::dual_contains_interior(k, a)) return a;
    for (auto& x : a) x = -x;
    if (conicstab::dual_contains_interior(k, a)) return a;
  }
}

inline MultiPoly linear_form(const std::vector<std::string>& vars, const std::vector<double>& a, Complex c) {
  MultiPoly f = MultiPoly::constant(vars, c);
  for (std::size_t i = 0; i < a.size(); ++i) f = f + Complex(a[i]) * MultiPoly::variable(vars, i);
  return f;
}

struct LinearCase {
  Cone cone;
  MultiPoly f;
};

// Case `idx`: orthant (n <= 4), polyhedral (n <= 4, <= 5 generators) or
// PSD(2); every other case draws a from +-int K* so both outcomes appear.
inline LinearCase linear_case(std::uint64_t seed, std::uint64_t idx) {
  auto rng = conicstab::draw_stream(seed, idx);
  std::uniform_int_distribution<std::size_t> pick_n(1, 4);
  Cone k = Cone::orthant(1);
  switch (idx % 3) {
    case 0:
      k = Cone::orthant(pick_n(rng));
      break;
    case 1: {
      const std::size_t n = 1 + pick_n(rng) % 3 + 1;  // 2..4
      std::uniform_int_distribution<std::size_t> pick_m(n, 5);
      k = random_polyhedral(rng, n, pick_m(rng));
      break;
    }
    default:
      k = Cone::psd(2);
  }
  std::normal_distribution<double> g;
  std::vector<double> a(k.dim());
  if (idx / 3 % 2 == 0)
    a = dual_interior_vector(rng, k);
  else
    for (auto& x : a) x = g(rng);
  auto f = linear_form(vars_for(k), a, g(rng));
  return {std::move(k), std::move(f)};
}

// Product of `factors` forms <a_k, z> + c_k with a_k in int K* and
// Im c_k >= 0, hence K-stable.
inline MultiPoly stable_product(std::mt19937_64& rng, const Cone& k, std::size_t factors) {
  const auto vars = vars_for(k);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> im(0.0, 1.5);
  MultiPoly h = MultiPoly::constant(vars, 1.0);
  for (std::size_t i = 0; i < factors; ++i) {
    const auto a = dual_interior_vector(rng, k);
    h = h * linear_form(vars, a, Complex(g(rng), im(rng)));
  }
  return h;
}

struct StablePair {
  Cone cone;
  MultiPoly f, g;  // g + i f is K-stable
};

inline Cone small_cone(std::uint64_t idx) {
  switch (idx % 3) {
    case 0:
      return Cone::orthant(2);
    case 1:
      return Cone::orthant(3);
    default:
      return Cone::psd(2);
  }
}

inline StablePair stable_pair(std::uint64_t seed, std::uint64_t idx) {
  auto rng = conicstab::draw_stream(seed, idx);
  Cone k = small_cone(idx);
  const auto h = stable_product(rng, k, 1 + idx / 3 % 2);
  auto [g, f] = conicstab::real_imag_parts(h);
  return {std::move(k), std::move(f), std::move(g)};
}

// Real pair with integer coefficients in [-3, 3] and degree <= 2.
inline StablePair random_pair(std::uint64_t seed, std::uint64_t idx) {
  auto rng = conicstab::draw_stream(seed, idx);
  Cone k = small_cone(idx);
  const auto vars = vars_for(k);
  std::uniform_int_distribution<int> c(-3, 3);
  auto draw = [&] {
    MultiPoly p(vars);
    conicstab::Exponent zero(vars.size());
    p.add_term(zero, c(rng));
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto e = zero;
      e[i] = 1;
      p.add_term(e, c(rng));
      for (std::size_t j = i; j < vars.size(); ++j) {
        auto q = e;
        ++q[j];
        if (idx % 2 == 0) p.add_term(q, c(rng));
      }
    }
    return p;
  };
  auto f = draw();
  auto g = draw();
  return {std::move(k), std::move(f), std::move(g)};
}

}  // namespace gen
