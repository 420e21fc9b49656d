#include "conicstab/unistab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace conicstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Initial Aberth approximations on circles whose radii come from the upper
// convex hull of (k, log|a_k|).
std::vector<Complex> newton_polygon_start(const std::vector<Complex>& monic, double angle_offset) {
  const int m = static_cast<int>(monic.size()) - 1;
  std::vector<int> ks;
  std::vector<double> logs;
  for (int k = 0; k <= m; ++k)
    if (monic[k] != Complex{}) {
      ks.push_back(k);
      logs.push_back(std::log(std::abs(monic[k])));
    }
  std::vector<int> hull;  // indices into ks
  for (int i = 0; i < static_cast<int>(ks.size()); ++i) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      const double cross = (ks[b] - ks[a]) * (logs[i] - logs[a]) - (logs[b] - logs[a]) * (ks[i] - ks[a]);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<Complex> z;
  z.reserve(m);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int k0 = ks[hull[h]], k1 = ks[hull[h + 1]];
    const int count = k1 - k0;
    const double radius = std::exp((logs[hull[h]] - logs[hull[h + 1]]) / count);
    for (int j = 0; j < count; ++j) {
      const double theta = two_pi * j / count + two_pi * h / m + angle_offset;
      z.push_back(std::polar(radius, theta));
    }
  }
  return z;
}

struct AberthResult {
  std::vector<Complex> z;
  bool converged = false;
  double worst_residual = 0.0;
};

AberthResult aberth(const std::vector<Complex>& c, std::vector<Complex> z) {
  const std::size_t m = z.size();
  std::vector<bool> done(m, false);
  AberthResult out;
  for (int iter = 0; iter < 800; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      const Complex zi = z[i];
      const double az = std::abs(zi);
      Complex p = c[m], dp{};
      double bound = std::abs(c[m]);
      for (std::size_t k = m; k-- > 0;) {
        dp = dp * zi + p;
        p = p * zi + c[k];
        bound = bound * az + std::abs(c[k]);
      }
      if (std::abs(p) <= 8.0 * kEps * bound) {
        done[i] = true;
        continue;
      }
      all_done = false;
      if (dp == Complex{}) {
        z[i] = zi * Complex(1.0 + 1e-7, 1e-7) + Complex(1e-7, 0.0);
        continue;
      }
      const Complex ratio = p / dp;
      Complex sum{};
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) {
          const Complex diff = zi - z[j];
          if (diff != Complex{}) sum += 1.0 / diff;
        }
      const Complex step = ratio / (1.0 - ratio * sum);
      z[i] = zi - step;
      if (std::abs(step) <= kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) {
      out.converged = true;
      break;
    }
  }
  out.converged = out.converged || std::all_of(done.begin(), done.end(), [](bool b) { return b; });
  for (const auto& zi : z) {
    Complex p = c[m];
    double bound = std::abs(c[m]);
    for (std::size_t k = m; k-- > 0;) {
      p = p * zi + c[k];
      bound = bound * std::abs(zi) + std::abs(c[k]);
    }
    out.worst_residual = std::max(out.worst_residual, std::abs(p) / bound);
  }
  out.z = std::move(z);
  return out;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex p{};
  for (std::size_t k = c.size(); k-- > 0;) p = p * z + c[k];
  return p;
}

std::vector<Complex> derivative_coeffs(const std::vector<Complex>& c) {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

// Groups approximations whose inclusion discs overlap. The disc around z_i
// has radius m |p(z_i)| / prod_{j != i} |z_i - z_j| (monic p) and holds a
// true root, so a multiple root shows up as a union of overlapping discs.
// Each group of size k is replaced by the simple root of p^(k-1) nearest to
// its centroid, repeated k times.
void merge_clusters(const std::vector<Complex>& monic, std::vector<Complex>& z, double cluster_tol) {
  const std::size_t m = z.size();
  std::vector<double> radius(m);
  for (std::size_t i = 0; i < m; ++i) {
    double denom = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) denom *= std::abs(z[i] - z[j]);
    const double r = static_cast<double>(m) * std::abs(horner(monic, z[i]));
    radius[i] = std::max(denom > 0.0 ? r / denom : std::numeric_limits<double>::infinity(),
                         4.0 * kEps * std::max(1.0, std::abs(z[i])));
  }
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double gap = std::abs(z[i] - z[j]);
      const double scale = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
      if (gap <= radius[i] + radius[j] && gap <= cluster_tol * scale) parent[find(i)] = find(j);
    }
  std::vector<Complex> sum(m);
  std::vector<std::size_t> count(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    sum[find(i)] += z[i];
    ++count[find(i)];
  }
  std::vector<Complex> refined(m);
  std::vector<bool> have(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (count[r] < 2) continue;
    if (!have[r]) {
      const Complex centroid = sum[r] / static_cast<double>(count[r]);
      double spread = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        if (find(j) == r) spread = std::max(spread, std::abs(z[j] - centroid));
      auto d = monic;
      for (std::size_t k = 1; k < count[r]; ++k) d = derivative_coeffs(d);
      const auto dd = derivative_coeffs(d);
      Complex x = centroid;
      for (int it = 0; it < 50; ++it) {
        const Complex slope = horner(dd, x);
        if (slope == Complex{}) break;
        const Complex step = horner(d, x) / slope;
        x -= step;
        if (std::abs(step) <= 2.0 * kEps * std::max(1.0, std::abs(x))) break;
      }
      const bool ok = std::isfinite(x.real()) && std::isfinite(x.imag()) &&
                      std::abs(x - centroid) <= 2.0 * spread + 4.0 * kEps * std::max(1.0, std::abs(centroid));
      refined[r] = ok ? x : centroid;
      have[r] = true;
    }
    z[i] = refined[r];
  }
}

}  // namespace

std::vector<Complex> roots(const UniPoly& p, const ToleranceProfile& tol) {
  if (p.is_zero()) throw std::invalid_argument("roots: zero polynomial");
  const auto& coeffs = p.coeffs();
  std::size_t zeros = 0;
  while (coeffs[zeros] == Complex{}) ++zeros;
  std::vector<Complex> out(zeros, Complex{});

  const Complex lead = coeffs.back();
  std::vector<Complex> monic(coeffs.begin() + static_cast<std::ptrdiff_t>(zeros), coeffs.end());
  for (auto& c : monic) c /= lead;
  const std::size_t m = monic.size() - 1;
  if (m == 0) return out;
  if (m == 1) {
    out.push_back(-monic[0]);
    return out;
  }

  AberthResult best;
  best.worst_residual = std::numeric_limits<double>::infinity();
  // The second and third starts rotate and rescale the circles.
  const double offsets[] = {0.7, 2.1, 1.3};
  const double stretch[] = {1.0, 1.0, 1.7};
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto start = newton_polygon_start(monic, offsets[attempt]);
    for (auto& s : start) s *= stretch[attempt];
    auto result = aberth(monic, std::move(start));
    if (result.worst_residual < best.worst_residual) best = std::move(result);
    if (best.converged) break;
  }
  merge_clusters(monic, best.z, tol.root_cluster_tol);
  out.insert(out.end(), best.z.begin(), best.z.end());
  return out;
}

bool is_stable_univariate(const UniPoly& p, const ToleranceProfile& tol) {
  if (p.is_zero()) return false;
  for (const auto& r : roots(p, tol))
    if (r.imag() > tol.stability_tol * std::max(1.0, std::abs(r))) return false;
  return true;
}

bool is_real_rooted(const UniPoly& p, const ToleranceProfile& tol) {
  if (p.is_zero()) return false;
  for (const auto& r : roots(p, tol))
    if (std::abs(r.imag()) > tol.real_root_tol * std::max(1.0, std::abs(r))) return false;
  return true;
}

std::vector<double> real_roots_sorted(const UniPoly& p, const ToleranceProfile& tol) {
  std::vector<double> out;
  for (const auto& r : roots(p, tol)) out.push_back(r.real());
  std::sort(out.begin(), out.end());
  return out;
}

const char* to_string(InterlaceKind k) {
  switch (k) {
    case InterlaceKind::strict: return "strict";
    case InterlaceKind::non_strict: return "non_strict";
    case InterlaceKind::proper: return "proper";
    case InterlaceKind::proper_reversed: return "proper_reversed";
    case InterlaceKind::none: return "none";
    case InterlaceKind::identical_roots: return "identical_roots";
  }
  return "?";
}

namespace {

// first[0] <= second[0] <= first[1] <= second[1] <= ... with first at most
// one longer than second. Returns {holds, holds strictly}.
std::pair<bool, bool> alternates(const std::vector<double>& first, const std::vector<double>& second,
                                 double slack) {
  if (first.size() != second.size() && first.size() != second.size() + 1) return {false, false};
  std::vector<double> chain;
  for (std::size_t k = 0; k < first.size(); ++k) {
    chain.push_back(first[k]);
    if (k < second.size()) chain.push_back(second[k]);
  }
  bool strict = true;
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const double gap = chain[k] - chain[k - 1];
    if (gap < -slack) return {false, false};
    if (gap <= slack) strict = false;
  }
  return {true, strict};
}

std::vector<double> reversed_negated(const std::vector<double>& v) {
  std::vector<double> out(v.rbegin(), v.rend());
  for (auto& x : out) x = -x;
  return out;
}

// f interlaces g properly: descending chains that start at the top root of
// g when the leading coefficients agree in sign, of f otherwise.
bool properly_interlaces(const std::vector<double>& rf, const std::vector<double>& rg,
                         double lead_f, double lead_g, double slack) {
  const auto df = reversed_negated(rf), dg = reversed_negated(rg);
  if ((lead_f > 0) == (lead_g > 0)) return alternates(dg, df, slack).first;
  return alternates(df, dg, slack).first;
}

}  // namespace

InterlaceReport interlacing(const UniPoly& f, const UniPoly& g, const ToleranceProfile& tol) {
  InterlaceReport report;
  if (f.is_zero() || g.is_zero()) return report;
  if (!is_real_rooted(f, tol) || !is_real_rooted(g, tol)) return report;
  report.roots_f = real_roots_sorted(f, tol);
  report.roots_g = real_roots_sorted(g, tol);
  const auto& a = report.roots_f;
  const auto& b = report.roots_g;
  const double slack = tol.root_merge_tol;

  if (std::abs(static_cast<long>(a.size()) - static_cast<long>(b.size())) <= 1) {
    const auto af = alternates(a, b, slack);
    const auto bf = alternates(b, a, slack);
    report.interlace = af.first || bf.first;
    report.strict = af.second || bf.second;
    const double lf = f.leading().real(), lg = g.leading().real();
    report.f_properly_interlaces_g = properly_interlaces(a, b, lf, lg, slack);
    report.g_properly_interlaces_f = properly_interlaces(b, a, lg, lf, slack);
  }

  bool identical = a.size() == b.size();
  for (std::size_t k = 0; identical && k < a.size(); ++k) identical = std::abs(a[k] - b[k]) <= slack;

  if (identical) report.kind = InterlaceKind::identical_roots;
  else if (report.f_properly_interlaces_g) report.kind = InterlaceKind::proper;
  else if (report.g_properly_interlaces_f) report.kind = InterlaceKind::proper_reversed;
  else if (report.strict) report.kind = InterlaceKind::strict;
  else if (report.interlace) report.kind = InterlaceKind::non_strict;
  return report;
}

UniPoly wronskian(const UniPoly& f, const UniPoly& g) { return f.derivative() * g - g.derivative() * f; }

SignCheck wronskian_sign_leq0(const UniPoly& f, const UniPoly& g, std::size_t grid_points,
                              const ToleranceProfile& tol) {
  SignCheck out;
  const UniPoly w = wronskian(f, g);
  if (w.is_zero()) {
    out.leq_zero = true;
    return out;
  }
  const int d = w.degree();
  const double lead = w.leading().real();
  out.positive_at_infinity = d >= 1 && (d % 2 == 1 || lead > 0);

  const double scale = w.norm1();
  double worst_excess = -std::numeric_limits<double>::infinity();
  out.max_value = -std::numeric_limits<double>::infinity();
  auto probe = [&](double t) {
    const double v = w(t).real();
    const double allowed = tol.sign_tol * scale * std::pow(std::max(1.0, std::abs(t)), d);
    worst_excess = std::max(worst_excess, v - allowed);
    if (v > out.max_value) {
      out.max_value = v;
      out.argmax = t;
    }
  };

  double cauchy = 0.0;
  for (const auto& c : w.coeffs()) cauchy = std::max(cauchy, std::abs(c) / std::abs(w.leading()));
  const double radius = 1.0 + cauchy;
  for (std::size_t k = 0; k < grid_points; ++k)
    probe(radius * std::cos(std::numbers::pi * (k + 0.5) / static_cast<double>(grid_points)));
  const UniPoly dw = w.derivative();
  if (!dw.is_zero())
    for (const auto& r : roots(dw, tol))
      if (std::abs(r.imag()) <= tol.real_root_tol * std::max(1.0, std::abs(r))) probe(r.real());

  out.leq_zero = !out.positive_at_infinity && worst_excess <= 0.0;
  return out;
}

}  // namespace conicstab
