#include "conicstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "conicstab/sampling.hpp"
#include "conicstab/unistab.hpp"

namespace conicstab {

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::certified_stable: return "certified_stable";
    case VerdictStatus::certified_unstable: return "certified_unstable";
    case VerdictStatus::falsified: return "falsified";
    case VerdictStatus::not_falsified: return "not_falsified";
    case VerdictStatus::not_certified: return "not_certified";
    case VerdictStatus::identically_zero: return "identically_zero";
  }
  return "unknown";
}

namespace {

constexpr Complex kI{0.0, 1.0};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double euclid(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<double> imag_parts(std::span<const Complex> z) {
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].imag();
  return out;
}

std::vector<Complex> combine(std::span<const double> x, std::span<const double> y, Complex t) {
  std::vector<Complex> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + t * y[i];
  return z;
}

void require_dims(const MultiPoly& f, const Cone& k, const char* who) {
  if (f.nvars() != k.dim())
    throw std::invalid_argument(std::string(who) + ": polynomial has " + std::to_string(f.nvars()) +
                                " variables but the cone has dimension " + std::to_string(k.dim()));
}

Verdict zero_polynomial_verdict(const Cone& k, std::uint64_t seed) {
  Verdict v;
  v.status = VerdictStatus::certified_unstable;
  v.certificate = "zero polynomial (vanishes everywhere)";
  auto c = interior_center(k);
  v.witness = combine(std::vector<double>(c.size(), 0.0), c, kI);
  v.seed = seed;
  return v;
}

// One random draw: a real offset x, an interior direction y and a second
// interior point y2 for the secant slice.
struct Draw {
  std::vector<double> x, y, y2;
};

Draw make_draw(std::size_t n, const Cone& k, const SamplingOptions& opts, std::uint64_t idx,
               const ToleranceProfile& tol) {
  auto rng = draw_stream(opts.seed, idx);
  std::normal_distribution<double> normal(0.0, opts.sigma);
  Draw d;
  d.x.resize(n);
  for (auto& v : d.x) v = normal(rng);
  d.y = sample_interior(k, rng, tol.interior_delta);
  d.y2 = sample_interior(k, rng, tol.interior_delta);
  return d;
}

// One damped Newton step on the univariate restriction. The step is kept
// only if it reduces |p| and stays in the same half-plane.
Complex polish(const UniPoly& p, Complex t) {
  const UniPoly dp = p.derivative();
  const Complex d = dp(t);
  if (std::abs(d) == 0.0) return t;
  const Complex step = p(t) / d;
  const double before = std::abs(p(t));
  for (double h = 1.0; h >= 0.125; h *= 0.5) {
    const Complex cand = t - h * step;
    if (std::abs(p(cand)) < before && std::signbit(cand.imag()) == std::signbit(t.imag())) return cand;
  }
  return t;
}

class WitnessSearch {
 public:
  WitnessSearch(const MultiPoly& f, const Cone& k, const SamplingOptions& opts, const ToleranceProfile& tol)
      : f_(f), k_(k), opts_(opts), tol_(tol), homogeneous_(is_homogeneous(f)), n_(f.nvars()) {}

  bool homogeneous() const { return homogeneous_; }

  std::optional<std::vector<Complex>> operator()(std::uint64_t idx) const {
    const Draw d = make_draw(n_, k_, opts_, idx, tol_);
    if (auto w = degenerate_direction(d)) return w;
    if (auto w = line(d)) return w;
    std::vector<double> axis(n_, 0.0);
    axis[idx % n_] = 1.0;
    if (auto w = slice(d, axis)) return w;
    std::vector<double> secant(n_);
    for (std::size_t i = 0; i < n_; ++i) secant[i] = d.y2[i] - d.y[i];
    return slice(d, secant);
  }

 private:
  // For homogeneous f, f(y) = 0 gives f(i y) = 0.
  std::optional<std::vector<Complex>> degenerate_direction(const Draw& d) const {
    if (!homogeneous_) return std::nullopt;
    const double scale = f_.norm1() * std::pow(std::max(1.0, euclid_real(d.y)), f_.degree());
    if (std::abs(eval(f_, std::span<const double>(d.y))) > tol_.coeff_zero_tol * scale) return std::nullopt;
    return accept(combine(std::vector<double>(n_, 0.0), d.y, kI));
  }

  // Search along x + t y. A root with Im t > 0 is a witness;
  // for homogeneous f so is a root with Im t < 0, after negation.
  std::optional<std::vector<Complex>> line(const Draw& d) const {
    const UniPoly p = restrict_line(f_, std::span<const double>(d.x), std::span<const double>(d.y));
    if (p.is_zero()) return accept(combine(d.x, d.y, kI));
    if (p.degree() < 1) return std::nullopt;
    for (const Complex& r : roots(p, tol_)) {
      const double gate = tol_.stability_tol * std::max(1.0, std::abs(r));
      if (r.imag() > gate) {
        if (auto w = accept(combine(d.x, d.y, polish(p, r)))) return w;
      } else if (homogeneous_ && r.imag() < -gate) {
        auto z = combine(d.x, d.y, polish(p, r));
        for (auto& c : z) c = -c;
        if (auto w = accept(std::move(z))) return w;
      }
    }
    return std::nullopt;
  }

  // Zeros of s -> f(x + i y + s v). A zero is a witness when its imaginary
  // part happens to land in int K.
  std::optional<std::vector<Complex>> slice(const Draw& d, const std::vector<double>& v) const {
    std::vector<Complex> base(n_);
    for (std::size_t i = 0; i < n_; ++i) base[i] = Complex(d.x[i], d.y[i]);
    const UniPoly p = restrict_line(f_, std::span<const Complex>(base), std::span<const double>(v));
    if (p.degree() < 1) return std::nullopt;
    for (const Complex& r : roots(p, tol_)) {
      std::vector<Complex> z(n_);
      for (std::size_t i = 0; i < n_; ++i) z[i] = base[i] + r * v[i];
      if (auto w = accept(z)) return w;
      if (homogeneous_) {
        for (auto& c : z) c = -c;
        if (auto w = accept(std::move(z))) return w;
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<Complex>> accept(std::vector<Complex> z) const {
    if (validate_witness(f_, k_, z, tol_)) return z;
    return std::nullopt;
  }

  static double euclid_real(std::span<const double> v) { return std::sqrt(dot(v, v)); }

  const MultiPoly& f_;
  const Cone& k_;
  const SamplingOptions& opts_;
  const ToleranceProfile& tol_;
  bool homogeneous_;
  std::size_t n_;
};

Verdict run_search(const MultiPoly& f, const Cone& k, const SamplingOptions& opts, const ToleranceProfile& tol,
                   const char* clean_note) {
  if (f.is_zero()) return zero_polynomial_verdict(k, opts.seed);
  Verdict v;
  v.seed = opts.seed;
  if (f.degree() == 0) {
    v.status = VerdictStatus::not_falsified;
    v.samples = opts.samples;
    v.certificate = "nonzero constant";
    return v;
  }
  const WitnessSearch search(f, k, opts, tol);
  const auto first = first_failing_draw(
      opts.samples, [&](std::uint64_t idx) { return search(idx).has_value(); }, opts.threads);
  if (!first) {
    v.status = VerdictStatus::not_falsified;
    v.samples = opts.samples;
    v.certificate = clean_note;
    return v;
  }
  v.status = VerdictStatus::falsified;
  v.draw = *first;
  v.samples = *first + 1;
  v.witness = search(*first);
  v.residual = std::abs(eval(f, std::span<const Complex>(*v.witness)));
  return v;
}

// An interior point y with <a, y> < 0, if one can be found from the
// extreme directions minimising <a, .>.
std::optional<std::vector<double>> negative_interior_point(const Cone& k, std::span<const double> a) {
  const auto d = min_direction(k, a);
  std::vector<std::vector<double>> candidates{d};
  if (const auto* prod = std::get_if<ProductCone>(&k.variant())) {
    std::size_t off = 0;
    for (const auto& factor : prod->factors) {
      std::vector<double> masked(d.size(), 0.0);
      std::copy(d.begin() + off, d.begin() + off + factor.dim(), masked.begin() + off);
      candidates.push_back(std::move(masked));
      off += factor.dim();
    }
  }
  const auto c = interior_center(k);
  const double ac = dot(a, c);
  for (const auto& cand : candidates) {
    const double v = dot(a, cand);
    if (!(v < 0.0)) continue;
    const double eta = ac > 0.0 ? std::min(1.0, -v / (2.0 * ac)) : 1.0;
    std::vector<double> y(cand.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = cand[i] + eta * c[i];
    if (dot(a, y) < 0.0 && contains_interior(k, y)) return y;
  }
  return std::nullopt;
}

std::string format_vector(std::span<const double> v) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

bool validate_witness(const MultiPoly& f, const Cone& k, const std::vector<Complex>& witness,
                      const ToleranceProfile& tol) {
  if (witness.size() != f.nvars() || witness.size() != k.dim()) return false;
  for (const auto& c : witness)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  const double deg = std::max(0, f.degree());
  const double bound = tol.residual_tol * f.norm1() * std::pow(std::max(1.0, euclid(witness)), deg);
  if (std::abs(eval(f, std::span<const Complex>(witness))) > bound) return false;
  const auto im = imag_parts(witness);
  // The floor keeps numerically real roots (Im ~ 1e-17) from passing.
  double re = 1.0;
  for (const auto& c : witness) re = std::max(re, std::abs(c.real()));
  return contains_interior(k, im, tol.witness_margin * std::max(re, inf_norm(im)));
}

Verdict linear_k_stability(const MultiPoly& f, const Cone& k, const LinearOptions& opts,
                           const ToleranceProfile& tol) {
  require_dims(f, k, "linear_k_stability");
  if (f.degree() > 1) throw std::invalid_argument("linear_k_stability: polynomial has degree > 1");
  const std::size_t n = f.nvars();
  std::vector<double> a(n, 0.0);
  Complex b = f.coefficient(Exponent(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    const Complex c = f.coefficient(e);
    if (std::abs(c.imag()) > tol.coeff_zero_tol)
      throw std::invalid_argument("linear_k_stability: linear part must be real");
    a[i] = c.real();
  }
  if (std::abs(b.imag()) > tol.coeff_zero_tol && !opts.allow_complex_constant)
    throw std::invalid_argument("linear_k_stability: complex constant term requires allow_complex_constant");
  if (std::abs(b.imag()) <= tol.coeff_zero_tol) b = b.real();

  Verdict v;
  if (f.is_zero()) return zero_polynomial_verdict(k, 0);
  if (std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; })) {
    v.status = VerdictStatus::certified_stable;
    v.certificate = "nonzero constant";
    return v;
  }

  std::vector<double> neg_a(n);
  for (std::size_t i = 0; i < n; ++i) neg_a[i] = -a[i];
  const double imb = b.imag();
  const bool pos_closed = dual_contains(k, a);
  const bool neg_closed = dual_contains(k, neg_a);
  if (pos_closed && imb >= 0.0) {
    v.status = VerdictStatus::certified_stable;
    v.certificate = dual_contains_interior(k, a) ? "a in int K*"
                                                 : "a in K* \\ {0} (boundary): <a, y> > 0 on int K";
    if (imb > 0.0) v.certificate = *v.certificate + ", Im(b) >= 0";
    return v;
  }
  if (neg_closed && imb <= 0.0) {
    v.status = VerdictStatus::certified_stable;
    v.certificate = dual_contains_interior(k, neg_a) ? "-a in int K*"
                                                     : "-a in K* \\ {0} (boundary): <a, y> < 0 on int K";
    if (imb < 0.0) v.certificate = *v.certificate + ", Im(b) <= 0";
    return v;
  }

  // Unstable: find y in int K with <a, y> = -Im(b), then x with <a, x> = -Re(b).
  v.status = VerdictStatus::certified_unstable;
  const double target = -imb;
  std::optional<std::vector<double>> y;
  const auto y_neg = negative_interior_point(k, a);
  const auto y_pos = negative_interior_point(k, neg_a);
  if (target > 0.0 && y_pos) {
    y = *y_pos;
    const double s = target / dot(a, *y);
    for (auto& c : *y) c *= s;
  } else if (target < 0.0 && y_neg) {
    y = *y_neg;
    const double s = target / dot(a, *y);
    for (auto& c : *y) c *= s;
  } else if (target == 0.0 && y_neg && y_pos) {
    const double an = dot(a, *y_neg);
    const double ap = dot(a, *y_pos);
    const double s = an / (an - ap);
    y = std::vector<double>(n);
    for (std::size_t i = 0; i < n; ++i) (*y)[i] = (1.0 - s) * (*y_neg)[i] + s * (*y_pos)[i];
  }
  std::ostringstream cert;
  cert << "a = " << format_vector(a) << " lies in neither K* nor -K*";
  if (imb != 0.0) cert << " compatibly with Im(b) = " << imb;
  v.certificate = cert.str();
  if (y) {
    const double aa = dot(a, a);
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = Complex(-b.real() * a[i] / aa, (*y)[i]);
    v.residual = std::abs(eval(f, std::span<const Complex>(z)));
    v.witness = std::move(z);
  }
  return v;
}

Verdict falsify_k_stability(const MultiPoly& f, const Cone& k, const SamplingOptions& opts,
                            const ToleranceProfile& tol) {
  require_dims(f, k, "falsify_k_stability");
  return run_search(f, k, opts, tol, "no witness found");
}

Verdict k_stability(const MultiPoly& f, const Cone& k, const SamplingOptions& opts, const ToleranceProfile& tol) {
  require_dims(f, k, "k_stability");
  if (f.is_zero()) return zero_polynomial_verdict(k, opts.seed);
  if (f.degree() <= 1) {
    // Rotate by the phase of the largest linear coefficient; if the linear
    // part becomes real the exact criterion applies.
    const std::size_t n = f.nvars();
    Complex lead{};
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e(n, 0);
      e[i] = 1;
      const Complex c = f.coefficient(e);
      if (std::abs(c) > std::abs(lead)) lead = c;
    }
    if (lead == Complex{}) {
      Verdict v;
      v.status = VerdictStatus::certified_stable;
      v.certificate = "nonzero constant";
      v.seed = opts.seed;
      return v;
    }
    const MultiPoly rotated = (std::conj(lead) / std::abs(lead)) * f;
    bool real_linear = true;
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e(n, 0);
      e[i] = 1;
      if (std::abs(rotated.coefficient(e).imag()) > tol.coeff_zero_tol * std::max(1.0, std::abs(lead)))
        real_linear = false;
    }
    if (real_linear) {
      // Snap the rounding noise left by the rotation.
      MultiPoly::TermMap terms;
      for (const auto& [e, c] : rotated.terms()) {
        const bool constant = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
        terms[e] = constant ? c : Complex(c.real(), 0.0);
      }
      Verdict v = linear_k_stability(MultiPoly(f.var_names(), std::move(terms), f.zero_tol()), k,
                                     LinearOptions{.allow_complex_constant = true}, tol);
      v.seed = opts.seed;
      if (v.witness) v.residual = std::abs(eval(f, std::span<const Complex>(*v.witness)));
      return v;
    }
  }
  return run_search(f, k, opts, tol, "no witness found");
}

Verdict hyperbolicity_check(const MultiPoly& f, const Cone& k, const SamplingOptions& opts,
                            const ToleranceProfile& tol) {
  require_dims(f, k, "hyperbolicity_check");
  if (!is_homogeneous(f)) throw std::invalid_argument("hyperbolicity_check: polynomial is not homogeneous");
  // For homogeneous f the witness search tests exactly f(e) != 0 and
  // real-rootedness of t -> f(x + t e): a non-real root of either sign
  // yields a zero with imaginary part in int K.
  return run_search(f, k, opts, tol, "f(e) != 0 and real-rooted along every sampled direction");
}

LiftReport hb_lift_check(const MultiPoly& f, const MultiPoly& g, const Cone& k, const SamplingOptions& opts,
                         const ToleranceProfile& tol) {
  if (!is_real(f) || !is_real(g)) throw std::invalid_argument("hb_lift_check: f and g must be real");
  LiftReport r;
  r.complex_side = k_stability(g + kI * f, k, opts, tol);
  const MultiPoly fw = append_variable(f, "w");
  const MultiPoly gw = append_variable(g, "w");
  const MultiPoly w = MultiPoly::variable(fw.var_names(), fw.nvars() - 1);
  r.lifted_side = k_stability(gw + w * fw, product(k, Cone::orthant(1)), opts, tol);
  r.consistent = r.complex_side.unstable() == r.lifted_side.unstable();
  return r;
}

std::vector<std::pair<double, double>> default_pencil_grid() {
  std::vector<std::pair<double, double>> grid;
  for (int i = 0; i < 32; ++i) {
    const double theta = std::numbers::pi * (i + 0.5) / 32.0;
    grid.emplace_back(std::cos(theta), std::sin(theta));
  }
  grid.emplace_back(1.0, 0.0);
  grid.emplace_back(0.0, 1.0);
  return grid;
}

PencilReport pencil_hko_check(const MultiPoly& f, const MultiPoly& g, const Cone& k,
                              const std::vector<std::pair<double, double>>& grid, const SamplingOptions& opts,
                              const ToleranceProfile& tol) {
  if (!is_real(f) || !is_real(g)) throw std::invalid_argument("pencil_hko_check: f and g must be real");
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("pencil_hko_check: f and g are both zero");
  PencilReport r;
  for (const auto& [lambda, mu] : grid) {
    PencilMember m;
    m.lambda = lambda;
    m.mu = mu;
    const MultiPoly h = Complex(lambda) * f + Complex(mu) * g;
    if (h.is_zero()) {
      m.zero = true;
    } else {
      m.verdict = k_stability(h, k, opts, tol);
      if (m.verdict.unstable()) r.pencil_clean = false;
    }
    r.members.push_back(std::move(m));
  }
  r.g_plus_if = k_stability(g + kI * f, k, opts, tol);
  r.f_plus_ig = k_stability(f + kI * g, k, opts, tol);
  r.consistent = r.pencil_clean == (r.g_plus_if.clean() || r.f_plus_ig.clean());
  return r;
}

WronskianReport wronskian_certificate(const MultiPoly& f, const MultiPoly& g, const Cone& k, std::size_t n_points,
                                      const SamplingOptions& opts, std::size_t sampled_directions,
                                      const ToleranceProfile& tol) {
  if (!is_real(f) || !is_real(g)) throw std::invalid_argument("wronskian_certificate: f and g must be real");
  require_dims(f, k, "wronskian_certificate");
  WronskianReport r;
  auto dirs = polyhedral_generators(k);
  r.from_generators = !dirs.empty();
  if (!r.from_generators) {
    // Directions and points use separate stream families.
    for (std::size_t j = 0; j < sampled_directions; ++j) {
      auto rng = draw_stream(opts.seed ^ 0x5bd1e995ULL, j);
      dirs.push_back(sample_interior(k, rng, tol.interior_delta));
    }
  }
  const std::size_t n = f.nvars();
  auto point = [&](std::uint64_t idx) {
    auto rng = draw_stream(opts.seed, idx);
    std::normal_distribution<double> normal(0.0, opts.sigma);
    std::vector<double> x(n);
    for (auto& c : x) c = normal(rng);
    return x;
  };
  for (auto& v : dirs) {
    WronskianDirection wd;
    wd.v = v;
    const MultiPoly w = wronskian_v(f, g, v);
    if (!w.is_zero()) {
      const double wn = w.norm1();
      const int deg = w.degree();
      auto value = [&](const std::vector<double>& x) { return eval(w, std::span<const double>(x)).real(); };
      auto limit = [&](const std::vector<double>& x) {
        return tol.sign_tol * wn * std::pow(std::max(1.0, inf_norm(x)), deg);
      };
      const auto first = first_failing_draw(
          n_points,
          [&](std::uint64_t idx) {
            const auto x = point(idx);
            return value(x) > limit(x);
          },
          opts.threads);
      if (first) {
        auto x = point(*first);
        wd.max_value = value(x);
        wd.disproof = std::move(x);
        r.passed = false;
      } else {
        double best = -std::numeric_limits<double>::infinity();
        for (std::uint64_t idx = 0; idx < n_points; ++idx) best = std::max(best, value(point(idx)));
        wd.max_value = n_points ? best : 0.0;
      }
    }
    r.directions.push_back(std::move(wd));
  }
  return r;
}

DecomposeReport decompose_check(const MultiPoly& h, const Cone& k, const SamplingOptions& opts,
                                const ToleranceProfile& tol) {
  DecomposeReport r;
  r.whole = k_stability(h, k, opts, tol);
  if (h.is_zero()) return r;
  const auto [g, f] = real_imag_parts(h);
  if (!g.is_zero()) r.real_part = k_stability(g, k, opts, tol);
  if (!f.is_zero()) r.imag_part = k_stability(f, k, opts, tol);
  const bool part_unstable = (r.real_part && r.real_part->unstable()) || (r.imag_part && r.imag_part->unstable());
  r.consistent = !(r.whole.clean() && part_unstable);
  return r;
}

std::vector<std::vector<double>> imaginary_projection_sample(const MultiPoly& f, std::size_t n_points,
                                                             const std::vector<std::pair<double, double>>& box,
                                                             std::uint64_t seed, const ToleranceProfile& tol) {
  if (f.degree() < 1) throw std::invalid_argument("imaginary_projection_sample: constant polynomial");
  const std::size_t n = f.nvars();
  if (box.size() != n) throw std::invalid_argument("imaginary_projection_sample: box needs one interval per variable");
  std::vector<std::vector<double>> cloud;
  const std::uint64_t max_draws = 20 * static_cast<std::uint64_t>(n_points) + 100;
  for (std::uint64_t idx = 0; idx < max_draws && cloud.size() < n_points; ++idx) {
    auto rng = draw_stream(seed, idx);
    const std::size_t free = idx % n;
    std::vector<Complex> base(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::uniform_real_distribution<double> u(box[j].first, box[j].second);
      const double re = u(rng);
      const double im = u(rng);
      base[j] = j == free ? Complex{} : Complex(re, im);
    }
    std::vector<double> axis(n, 0.0);
    axis[free] = 1.0;
    const UniPoly p = restrict_line(f, std::span<const Complex>(base), std::span<const double>(axis));
    if (p.degree() < 1) continue;
    for (const Complex& r : roots(p, tol)) {
      if (cloud.size() >= n_points) break;
      std::vector<double> y(n);
      for (std::size_t j = 0; j < n; ++j) y[j] = base[j].imag();
      y[free] = r.imag();
      cloud.push_back(std::move(y));
    }
  }
  return cloud;
}

Verdict specialize_stability_check(const MultiPoly& f, const std::vector<std::size_t>& fixed,
                                   const std::vector<double>& a, const std::vector<double>& b, const Cone& k_fixed,
                                   const Cone& k_rest, const SamplingOptions& opts, const ToleranceProfile& tol) {
  if (a.size() != fixed.size() || b.size() != fixed.size() || k_fixed.dim() != fixed.size())
    throw std::invalid_argument("specialize_stability_check: a, b and K1 must match the fixed variables");
  if (!contains_interior(k_fixed, b)) throw std::invalid_argument("specialize_stability_check: b is not in int K1");
  std::map<std::size_t, Complex> assign;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i] >= f.nvars() || assign.count(fixed[i]))
      throw std::invalid_argument("specialize_stability_check: invalid fixed variable index");
    assign[fixed[i]] = Complex(a[i], b[i]);
  }
  const MultiPoly rest = substitute_partial(f, assign);
  return k_stability(rest, k_rest, opts, tol);
}

}  // namespace conicstab
