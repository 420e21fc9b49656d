#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conicstab/cones.hpp"
#include "conicstab/poly.hpp"
#include "conicstab/tolerance.hpp"

namespace conicstab {

// Sampling can only falsify or fail to falsify; certificates are exact.
enum class VerdictStatus {
  certified_stable,
  certified_unstable,
  falsified,
  not_falsified,
  not_certified,     // sufficient criterion did not apply
  identically_zero,  // determinantal polynomial vanished identically
};

const char* to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::not_falsified;
  // A zero z of f with Im(z) in int K.
  std::optional<std::vector<Complex>> witness;
  std::optional<std::string> certificate;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> draw;  // index of the draw that produced the witness
  double residual = 0.0;              // |f(witness)|

  // Found to be unstable (by witness or certificate).
  bool unstable() const {
    return status == VerdictStatus::falsified || status == VerdictStatus::certified_unstable;
  }
  bool clean() const { return !unstable(); }
};

struct SamplingOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 20190305;
  double sigma = 2.0;  // spread of the real parts x ~ N(0, sigma)
  int threads = 0;     // 1 = serial reference kernel, <= 0 = OpenMP default
};

// Zero with Im(z) in int K, within tol.residual_tol * ||f||_1 * max(1,||z||)^deg.
bool validate_witness(const MultiPoly& f, const Cone& k, const std::vector<Complex>& witness,
                      const ToleranceProfile& tol = {});

struct LinearOptions {
  // Accept a non-real constant term. The criterion then becomes
  // "-Im(b) is not attained by <a, y> on int K".
  bool allow_complex_constant = false;
};

// Exact decision for deg f <= 1 with real linear part a.
// Throws std::invalid_argument for nonlinear input or non-real a.
Verdict linear_k_stability(const MultiPoly& f, const Cone& k, const LinearOptions& opts = {},
                           const ToleranceProfile& tol = {});

// Per draw: the line x + t y with y in int K (a root with Im t > 0 is a
// witness; for homogeneous f either sign works), then one-variable slices
// through x + i y along a coordinate and along a secant of two interior
// points. Slices reach unstable sets of measure zero that lines miss.
// Every witness is checked by validate_witness before it is reported.
Verdict falsify_k_stability(const MultiPoly& f, const Cone& k, const SamplingOptions& opts = {},
                            const ToleranceProfile& tol = {});

// Exact linear certificate when applicable, the falsifier otherwise.
Verdict k_stability(const MultiPoly& f, const Cone& k, const SamplingOptions& opts = {},
                    const ToleranceProfile& tol = {});

// For homogeneous f: f(e) != 0 and t -> f(x + t e) real-rooted at sampled
// e in int K and x in R^n. Throws std::invalid_argument for
// non-homogeneous input.
Verdict hyperbolicity_check(const MultiPoly& f, const Cone& k, const SamplingOptions& opts = {},
                            const ToleranceProfile& tol = {});

struct LiftReport {
  Verdict complex_side;  // g + i f over K
  Verdict lifted_side;   // g + w f over K x R>=0
  bool consistent = true;
};

LiftReport hb_lift_check(const MultiPoly& f, const MultiPoly& g, const Cone& k,
                         const SamplingOptions& opts = {}, const ToleranceProfile& tol = {});

struct PencilMember {
  double lambda = 0.0;
  double mu = 0.0;
  bool zero = false;
  Verdict verdict;
};

struct PencilReport {
  std::vector<PencilMember> members;  // lambda f + mu g
  bool pencil_clean = true;
  Verdict g_plus_if;
  Verdict f_plus_ig;
  // pencil clean <=> (g + i f clean or f + i g clean)
  bool consistent = true;
};

// 32 directions on the upper unit half-circle plus (1,0) and (0,1).
std::vector<std::pair<double, double>> default_pencil_grid();

PencilReport pencil_hko_check(const MultiPoly& f, const MultiPoly& g, const Cone& k,
                              const std::vector<std::pair<double, double>>& grid = default_pencil_grid(),
                              const SamplingOptions& opts = {}, const ToleranceProfile& tol = {});

struct WronskianDirection {
  std::vector<double> v;
  // Largest sampled value of W_v(f,g); the value at the first disproof
  // point when sampling stopped early.
  double max_value = 0.0;
  std::optional<std::vector<double>> disproof;  // a point with W_v(f,g) > 0
};

struct WronskianReport {
  bool from_generators = false;  // directions are the cone's generators
  std::vector<WronskianDirection> directions;
  bool passed = true;            // no sampled W_v(f,g) > 0
};

// W_v(f,g) <= 0 tested at n_points Gaussian points for every generator v
// (orthant and polyhedral cones) or for sampled v in int K.
WronskianReport wronskian_certificate(const MultiPoly& f, const MultiPoly& g, const Cone& k,
                                      std::size_t n_points, const SamplingOptions& opts = {},
                                      std::size_t sampled_directions = 16, const ToleranceProfile& tol = {});

struct DecomposeReport {
  Verdict whole;                 // h
  std::optional<Verdict> real_part;  // g, absent when g == 0
  std::optional<Verdict> imag_part;  // f, absent when f == 0
  // h clean implies both parts clean
  bool consistent = true;
};

DecomposeReport decompose_check(const MultiPoly& h, const Cone& k, const SamplingOptions& opts = {},
                                const ToleranceProfile& tol = {});

// Points of the imaginary projection: all but one variable fixed to random
// complex values with real and imaginary parts drawn from the box, the
// remaining one solved for. box holds one interval per variable.
std::vector<std::vector<double>> imaginary_projection_sample(
    const MultiPoly& f, std::size_t n_points, const std::vector<std::pair<double, double>>& box,
    std::uint64_t seed, const ToleranceProfile& tol = {});

// Substitutes z_fixed = a + i b with b in int k_fixed and runs the
// falsifier over k_rest on the remaining variables.
Verdict specialize_stability_check(const MultiPoly& f, const std::vector<std::size_t>& fixed,
                                   const std::vector<double>& a, const std::vector<double>& b,
                                   const Cone& k_fixed, const Cone& k_rest,
                                   const SamplingOptions& opts = {}, const ToleranceProfile& tol = {});

}  // namespace conicstab
