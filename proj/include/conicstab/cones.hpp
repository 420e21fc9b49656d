#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "conicstab/linalg.hpp"

namespace conicstab {

class Cone;

using ConePoint = std::vector<double>;

struct OrthantCone {
  std::size_t n = 0;
};

// cone(v_1, ..., v_k). The generators must span R^n and the cone must be
// pointed; both are checked on construction.
struct PolyhedralCone {
  std::vector<std::vector<double>> generators;
  // Unit extreme rays of the dual cone (facet normals), enumerated when the
  // dimension is at most kMaxEnumerationDim; empty otherwise.
  std::vector<std::vector<double>> dual_rays;
  static constexpr std::size_t kMaxEnumerationDim = 6;
};

// Positive semidefinite n x n matrices acting on the n(n+1)/2 flat
// coordinates of MatrixVarIndex. Points store the unscaled upper triangle.
struct PsdCone {
  std::size_t n = 0;
};

struct ProductCone {
  std::vector<Cone> factors;
};

class Cone {
 public:
  using Variant = std::variant<OrthantCone, PolyhedralCone, PsdCone, ProductCone>;

  static Cone orthant(std::size_t n);
  static Cone polyhedral(std::vector<std::vector<double>> generators);
  static Cone psd(std::size_t n);
  // Nested products are flattened into one factor list.
  static Cone product(std::vector<Cone> factors);

  std::size_t dim() const;
  const Variant& variant() const { return v_; }
  std::string describe() const;

 private:
  explicit Cone(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

Cone product(const Cone& k1, const Cone& k2);

// Symmetric matrix from the unscaled upper-triangle vector.
DenseMatrix svec_to_matrix(std::span<const double> flat, std::size_t n);
std::vector<double> matrix_to_svec(const DenseMatrix& m);
// The matrix A with tr(A Z) = <a, svec(Z)>: off-diagonal entries are a_ij / 2.
DenseMatrix dual_matrix(std::span<const double> a, std::size_t n);

bool contains_interior(const Cone& k, std::span<const double> p, double tol = 0.0);

// a in int K* (Euclidean pairing on the flat coordinates).
bool dual_contains_interior(const Cone& k, std::span<const double> a, double tol = 1e-12);
// a in K* (closed dual), relative slack tol.
bool dual_contains(const Cone& k, std::span<const double> a, double tol = 1e-12);

// Interior sample: |N(0,1)| + delta weights for orthant and polyhedral
// cones, G G^T + delta I for PSD, factorwise for products.
ConePoint sample_interior(const Cone& k, std::mt19937_64& rng, double delta = 1e-3);

// A fixed interior point (ones, sum of unit generators, identity).
ConePoint interior_center(const Cone& k);

// A point of K, of unit scale per factor, minimising <a, .> over the cone's
// extreme directions.
ConePoint min_direction(const Cone& k, std::span<const double> a);

// Generators of K when K is built from orthants and polyhedral factors;
// empty when a PSD factor is present.
std::vector<std::vector<double>> polyhedral_generators(const Cone& k);

namespace detail {
// Feasibility of V lambda = b, lambda >= 0 (V given as columns).
bool cone_feasible(const std::vector<std::vector<double>>& columns, std::span<const double> b,
                   double tol = 1e-9);
}  // namespace detail

}  // namespace conicstab
