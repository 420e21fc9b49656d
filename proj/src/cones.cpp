#include "conicstab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace conicstab {

namespace detail {

bool cone_feasible(const std::vector<std::vector<double>>& columns, std::span<const double> b,
                   double tol) {
  const std::size_t n = b.size(), k = columns.size();
  const std::size_t width = k + n + 1;
  std::vector<std::vector<double>> t(n + 1, std::vector<double>(width, 0.0));
  std::vector<std::size_t> basis(n);
  double bnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < k; ++j) t[i][j] = sign * columns[j][i];
    t[i][k + i] = 1.0;
    t[i][width - 1] = sign * b[i];
    basis[i] = k + i;
    bnorm += std::abs(b[i]);
  }
  // Phase-1 objective row: minimise the sum of artificials.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < k || j == width - 1) t[n][j] -= t[i][j];

  constexpr double eps = 1e-12;
  for (int iter = 0; iter < 2000; ++iter) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (t[n][j] < -eps) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = n;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i][enter] <= eps) continue;
      const double ratio = t[i][width - 1] / t[i][enter];
      if (leave == n || ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == n) break;
    const double piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return -t[n][width - 1] <= tol * std::max(1.0, bnorm);
}

}  // namespace detail

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Facet normals of cone(generators) by cofactor null vectors of every
// (n-1)-subset of generators.
std::vector<std::vector<double>> enumerate_dual_rays(const std::vector<std::vector<double>>& gens,
                                                     std::size_t n) {
  std::vector<std::vector<double>> rays;
  const std::size_t k = gens.size();
  std::vector<bool> pick(k, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(k, n - 1)), true);
  if (n - 1 > k) return rays;
  do {
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < k; ++j)
      if (pick[j]) rows.push_back(j);
    std::vector<double> u(n);
    for (std::size_t c = 0; c < n; ++c) {
      DenseMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t cc = 0;
        for (std::size_t col = 0; col < n; ++col)
          if (col != c) minor(r, cc++) = gens[rows[r]][col];
      }
      ToleranceProfile exact;
      exact.pivot_tol = 0.0;
      u[c] = ((c % 2) ? -1.0 : 1.0) * determinant(minor, exact).real();
    }
    const double un = norm(u);
    if (un <= 1e-12) continue;
    for (auto& x : u) x /= un;
    bool all_pos = true, all_neg = true;
    for (const auto& g : gens) {
      const double s = dot(u, g);
      const double slack = 1e-10 * norm(g);
      if (s < -slack) all_pos = false;
      if (s > slack) all_neg = false;
    }
    if (!all_pos && !all_neg) continue;
    if (!all_pos)
      for (auto& x : u) x = -x;
    const bool seen = std::any_of(rays.begin(), rays.end(), [&](const auto& r) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(r[i] - u[i]));
      return d < 1e-9;
    });
    if (!seen) rays.push_back(std::move(u));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return rays;
}

}  // namespace

Cone Cone::orthant(std::size_t n) {
  if (n == 0) throw std::invalid_argument("orthant: dimension must be positive");
  return Cone(OrthantCone{n});
}

Cone Cone::psd(std::size_t n) {
  if (n == 0) throw std::invalid_argument("psd: side must be positive");
  return Cone(PsdCone{n});
}

Cone Cone::polyhedral(std::vector<std::vector<double>> generators) {
  if (generators.empty()) throw std::invalid_argument("polyhedral: no generators");
  const std::size_t n = generators.front().size();
  if (n == 0) throw std::invalid_argument("polyhedral: zero-dimensional generators");
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("polyhedral: generators differ in dimension");
    if (norm(g) == 0.0) throw std::invalid_argument("polyhedral: zero generator");
  }
  DenseMatrix gram(n, n);
  for (const auto& g : generators) {
    const double gn = norm(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram(i, j) += g[i] * g[j] / (gn * gn);
  }
  if (hermitian_eigenvalues(gram).front() <= 1e-10)
    throw std::invalid_argument("polyhedral: generators do not span R^n");
  for (const auto& g : generators) {
    std::vector<double> neg(g);
    for (auto& x : neg) x = -x;
    if (detail::cone_feasible(generators, neg))
      throw std::invalid_argument("polyhedral: cone is not pointed");
  }
  PolyhedralCone cone{std::move(generators), {}};
  if (n <= PolyhedralCone::kMaxEnumerationDim) cone.dual_rays = enumerate_dual_rays(cone.generators, n);
  return Cone(std::move(cone));
}

Cone Cone::product(std::vector<Cone> factors) {
  if (factors.empty()) throw std::invalid_argument("product: no factors");
  ProductCone flat;
  for (auto& f : factors) {
    if (const auto* p = std::get_if<ProductCone>(&f.v_))
      flat.factors.insert(flat.factors.end(), p->factors.begin(), p->factors.end());
    else
      flat.factors.push_back(std::move(f));
  }
  return Cone(std::move(flat));
}

Cone product(const Cone& k1, const Cone& k2) { return Cone::product({k1, k2}); }

std::size_t Cone::dim() const {
  return std::visit(
      [](const auto& c) -> std::size_t {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) return c.n;
        else if constexpr (std::is_same_v<T, PolyhedralCone>) return c.generators.front().size();
        else if constexpr (std::is_same_v<T, PsdCone>) return c.n * (c.n + 1) / 2;
        else {
          std::size_t d = 0;
          for (const auto& f : c.factors) d += f.dim();
          return d;
        }
      },
      v_);
}

std::string Cone::describe() const {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) return "orthant:" + std::to_string(c.n);
        else if constexpr (std::is_same_v<T, PolyhedralCone>)
          return "polyhedral(" + std::to_string(c.generators.size()) + " generators in R^" +
                 std::to_string(c.generators.front().size()) + ")";
        else if constexpr (std::is_same_v<T, PsdCone>) return "psd:" + std::to_string(c.n);
        else {
          std::string s = "prod(";
          for (std::size_t i = 0; i < c.factors.size(); ++i) s += (i ? "," : "") + c.factors[i].describe();
          return s + ")";
        }
      },
      v_);
}

DenseMatrix svec_to_matrix(std::span<const double> flat, std::size_t n) {
  if (flat.size() != n * (n + 1) / 2) throw std::invalid_argument("svec_to_matrix: length mismatch");
  DenseMatrix m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) {
      m(i, j) = flat[k];
      m(j, i) = flat[k];
    }
  return m;
}

std::vector<double> matrix_to_svec(const DenseMatrix& m) {
  std::vector<double> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) out.push_back(m(i, j).real());
  return out;
}

DenseMatrix dual_matrix(std::span<const double> a, std::size_t n) {
  DenseMatrix m = svec_to_matrix(a, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m(i, j) *= 0.5;
  return m;
}

namespace {

void require_dim(const Cone& k, std::size_t d) {
  if (k.dim() != d) throw std::invalid_argument("cone: point dimension does not match cone dimension");
}

// Visits factors with the matching slice of a flat vector.
template <class Fn>
bool all_factors(const ProductCone& p, std::span<const double> v, Fn&& fn) {
  std::size_t off = 0;
  for (const auto& f : p.factors) {
    const std::size_t d = f.dim();
    if (!fn(f, v.subspan(off, d))) return false;
    off += d;
  }
  return true;
}

}  // namespace

bool contains_interior(const Cone& k, std::span<const double> p, double tol) {
  require_dim(k, p.size());
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          return std::all_of(p.begin(), p.end(), [tol](double x) { return x > tol; });
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          if (!c.dual_rays.empty())
            return std::all_of(c.dual_rays.begin(), c.dual_rays.end(),
                               [&](const auto& u) { return dot(p, u) > tol; });
          // p in int K iff p - eps * sum(v_j) is still in K. eps sits well
          // above the LP feasibility tolerance, so margins below about
          // 1e-7 |p| count as boundary.
          std::vector<double> shifted(p.begin(), p.end());
          const double eps = std::max(tol, 1e-7 * norm(p));
          for (const auto& g : c.generators)
            for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= eps * g[i];
          return detail::cone_feasible(c.generators, shifted);
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          return hermitian_eigenvalues(svec_to_matrix(p, c.n)).front() > tol;
        } else {
          return all_factors(c, p, [tol](const Cone& f, std::span<const double> s) {
            return contains_interior(f, s, tol);
          });
        }
      },
      k.variant());
}

bool dual_contains_interior(const Cone& k, std::span<const double> a, double tol) {
  require_dim(k, a.size());
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          return std::all_of(a.begin(), a.end(), [tol](double x) { return x > tol; });
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          const double an = norm(a);
          return std::all_of(c.generators.begin(), c.generators.end(),
                             [&](const auto& g) { return dot(a, g) > tol * an * norm(g); });
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          const DenseMatrix m = dual_matrix(a, c.n);
          return hermitian_eigenvalues(m).front() > tol * m.frobenius_norm();
        } else {
          return all_factors(c, a, [tol](const Cone& f, std::span<const double> s) {
            return dual_contains_interior(f, s, tol);
          });
        }
      },
      k.variant());
}

bool dual_contains(const Cone& k, std::span<const double> a, double tol) {
  require_dim(k, a.size());
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          const double an = norm(a);
          return std::all_of(a.begin(), a.end(), [&](double x) { return x >= -tol * an; });
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          const double an = norm(a);
          return std::all_of(c.generators.begin(), c.generators.end(),
                             [&](const auto& g) { return dot(a, g) >= -tol * an * norm(g); });
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          const DenseMatrix m = dual_matrix(a, c.n);
          return hermitian_eigenvalues(m).front() >= -tol * m.frobenius_norm();
        } else {
          return all_factors(c, a, [tol](const Cone& f, std::span<const double> s) {
            return dual_contains(f, s, tol);
          });
        }
      },
      k.variant());
}

ConePoint sample_interior(const Cone& k, std::mt19937_64& rng, double delta) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return std::visit(
      [&](const auto& c) -> ConePoint {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          ConePoint p(c.n);
          for (auto& x : p) x = std::abs(gauss(rng)) + delta;
          return p;
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          ConePoint p(c.generators.front().size(), 0.0);
          for (const auto& g : c.generators) {
            const double w = std::abs(gauss(rng)) + delta;
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += w * g[i];
          }
          return p;
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          std::vector<double> g(c.n * c.n);
          for (auto& x : g) x = gauss(rng);
          ConePoint p;
          p.reserve(c.n * (c.n + 1) / 2);
          for (std::size_t i = 0; i < c.n; ++i)
            for (std::size_t j = i; j < c.n; ++j) {
              double s = (i == j) ? delta : 0.0;
              for (std::size_t r = 0; r < c.n; ++r) s += g[i * c.n + r] * g[j * c.n + r];
              p.push_back(s);
            }
          return p;
        } else {
          ConePoint p;
          for (const auto& f : c.factors) {
            auto part = sample_interior(f, rng, delta);
            p.insert(p.end(), part.begin(), part.end());
          }
          return p;
        }
      },
      k.variant());
}

ConePoint interior_center(const Cone& k) {
  return std::visit(
      [&](const auto& c) -> ConePoint {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          return ConePoint(c.n, 1.0);
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          ConePoint p(c.generators.front().size(), 0.0);
          for (const auto& g : c.generators) {
            const double gn = norm(g);
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += g[i] / gn;
          }
          return p;
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          return matrix_to_svec(DenseMatrix::identity(c.n));
        } else {
          ConePoint p;
          for (const auto& f : c.factors) {
            auto part = interior_center(f);
            p.insert(p.end(), part.begin(), part.end());
          }
          return p;
        }
      },
      k.variant());
}

ConePoint min_direction(const Cone& k, std::span<const double> a) {
  require_dim(k, a.size());
  return std::visit(
      [&](const auto& c) -> ConePoint {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          ConePoint p(c.n, 0.0);
          p[static_cast<std::size_t>(std::min_element(a.begin(), a.end()) - a.begin())] = 1.0;
          return p;
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          std::size_t best = 0;
          double best_val = 0.0;
          for (std::size_t j = 0; j < c.generators.size(); ++j) {
            const double v = dot(a, c.generators[j]) / norm(c.generators[j]);
            if (j == 0 || v < best_val) {
              best = j;
              best_val = v;
            }
          }
          ConePoint p = c.generators[best];
          const double gn = norm(p);
          for (auto& x : p) x /= gn;
          return p;
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          const auto eig = hermitian_eigen(dual_matrix(a, c.n));
          DenseMatrix y(c.n, c.n);
          for (std::size_t i = 0; i < c.n; ++i)
            for (std::size_t j = 0; j < c.n; ++j)
              y(i, j) = (eig.vectors(i, 0) * std::conj(eig.vectors(j, 0))).real();
          return matrix_to_svec(y);
        } else {
          ConePoint p;
          std::size_t off = 0;
          for (const auto& f : c.factors) {
            auto part = min_direction(f, a.subspan(off, f.dim()));
            off += f.dim();
            p.insert(p.end(), part.begin(), part.end());
          }
          return p;
        }
      },
      k.variant());
}

std::vector<std::vector<double>> polyhedral_generators(const Cone& k) {
  return std::visit(
      [&](const auto& c) -> std::vector<std::vector<double>> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          std::vector<std::vector<double>> gens(c.n, std::vector<double>(c.n, 0.0));
          for (std::size_t i = 0; i < c.n; ++i) gens[i][i] = 1.0;
          return gens;
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          return c.generators;
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          return {};
        } else {
          const std::size_t total = k.dim();
          std::vector<std::vector<double>> gens;
          std::size_t off = 0;
          for (const auto& f : c.factors) {
            auto part = polyhedral_generators(f);
            if (part.empty()) return {};
            for (const auto& g : part) {
              std::vector<double> e(total, 0.0);
              std::copy(g.begin(), g.end(), e.begin() + static_cast<std::ptrdiff_t>(off));
              gens.push_back(std::move(e));
            }
            off += f.dim();
          }
          return gens;
        }
      },
      k.variant());
}

}  // namespace conicstab
