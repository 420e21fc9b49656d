#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conicstab/linalg.hpp"
#include "conicstab/poly.hpp"
#include "conicstab/stability.hpp"
#include "conicstab/tolerance.hpp"

namespace conicstab {

// n1 x n2 grid of p x q blocks, stored row-major over the grid.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(std::size_t n1, std::size_t n2, std::size_t p, std::size_t q);
  // Cuts a dense matrix into an n1 x n2 grid of equal blocks.
  static BlockMatrix from_dense(const DenseMatrix& m, std::size_t n1, std::size_t n2);
  // n x n grid of 1 x 1 blocks holding the entries of y.
  static BlockMatrix scalar_blocks(const DenseMatrix& y);

  std::size_t grid_rows() const { return n1_; }
  std::size_t grid_cols() const { return n2_; }
  std::size_t block_rows() const { return p_; }
  std::size_t block_cols() const { return q_; }

  DenseMatrix& block(std::size_t i, std::size_t j) { return blocks_[i * n2_ + j]; }
  const DenseMatrix& block(std::size_t i, std::size_t j) const { return blocks_[i * n2_ + j]; }
  // Sets block (i,j) after checking its shape.
  void set_block(std::size_t i, std::size_t j, DenseMatrix b);

  DenseMatrix flatten() const;

  // Square grid, square blocks and A_ij = A_ji^H within tol.
  bool is_hermitian(double tol = ToleranceProfile{}.hermitian_tol) const;

 private:
  std::size_t n1_ = 0, n2_ = 0, p_ = 0, q_ = 0;
  std::vector<DenseMatrix> blocks_;
};

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

// (A_ij kron B_ij) over a common grid. Throws on grid mismatch.
BlockMatrix khatri_rao(const BlockMatrix& a, const BlockMatrix& b);

struct LiuReport {
  Definiteness a_class = Definiteness::indefinite;
  Definiteness b_class = Definiteness::indefinite;
  Definiteness product_class = Definiteness::indefinite;
  bool a_diagonal_blocks_pd = false;
  double product_lambda_min = 0.0;
  // A, B psd => A*B psd
  bool psd_premise = false;
  bool psd_conclusion_holds = true;
  // A psd with pd diagonal blocks, B pd => A*B pd
  bool pd_premise = false;
  bool pd_conclusion_holds = true;
  bool violated() const { return !psd_conclusion_holds || !pd_conclusion_holds; }
};

LiuReport liu_psd_check(const BlockMatrix& a, const BlockMatrix& b, const ToleranceProfile& tol = {});

// sum_{i,j} y_ij A_ij, computed directly.
DenseMatrix assemble_coefficient(const DenseMatrix& y, const BlockMatrix& a);
// The same matrix as (1_{1 x n} kron I_d) (Y * A) (1_{n x 1} kron I_d).
DenseMatrix assemble_coefficient_khatri_rao(const DenseMatrix& y, const BlockMatrix& a);

struct ExpansionCap {
  std::size_t max_n = 4;
  std::size_t max_d = 4;
};

// det(sum_{i<=j} C_ij z_ij + B) with C_ii = A_ii and C_ij = A_ij + A_ji for
// i < j, on the variables of MatrixVarIndex(n). Throws std::length_error
// beyond the cap.
MultiPoly expand_det_polynomial(const BlockMatrix& a, const DenseMatrix& b, const ExpansionCap& cap = {},
                                const ToleranceProfile& tol = {});

struct DetCertificate {
  Verdict verdict;  // certified_stable, not_certified or identically_zero
  std::vector<double> eigenvalues;  // of flatten(A), ascending
  double lambda_min = 0.0;
  double b_hermitian_residual = 0.0;
  std::optional<MultiPoly> polynomial;  // whenever within the expansion cap
};

// Sufficient criterion: A psd (blocks Hermitian) and B Hermitian make
// det(sum A_ij z_ij + B) psd-stable or identically zero. Never claims
// instability. Throws std::invalid_argument on shape or Hermitian
// violations.
DetCertificate thm54_certify(const BlockMatrix& a, const DenseMatrix& b, const ToleranceProfile& tol = {},
                             const ExpansionCap& cap = {}, std::uint64_t seed = 1);

struct PerturbationStep {
  double eps = 0.0;
  bool psd = false;
  bool diagonal_blocks_pd = false;
  VerdictStatus status = VerdictStatus::not_certified;
  double coeff_distance = 0.0;  // max coefficient gap to the unperturbed expansion
};

struct PerturbationReport {
  std::vector<PerturbationStep> steps;
  bool all_certified = true;
  bool converges = true;
  double linear_rate = 0.0;  // coeff_distance / eps at the last step
};

// A^(k) = A + eps_k (I on the diagonal blocks), eps_k = 2^-k, k = 1..steps.
// Throws std::domain_error for indefinite A.
PerturbationReport perturbed_certify(const BlockMatrix& a, const DenseMatrix& b, std::size_t steps = 20,
                                     const ToleranceProfile& tol = {}, const ExpansionCap& cap = {});

struct ScalarConditions {
  double a11 = 0.0, a22 = 0.0, det = 0.0;
  bool holds = false;  // a11, a22 >= 0 and a11 a22 - |a12|^2 >= 0
};

struct Prop56Report {
  std::vector<std::size_t> permutation;  // row i*d + k of A goes to row k*n + i
  std::vector<DenseMatrix> blocks;       // A_k = (a_k^(ij))_{i,j}
  std::vector<Definiteness> block_classes;
  Definiteness combined = Definiteness::indefinite;
  Definiteness whole = Definiteness::indefinite;
  bool agrees = false;
  std::vector<ScalarConditions> scalar;  // n = 2 only
};

// Permutation matrix P with P^T A P = diag(A_1, ..., A_d) for diagonal blocks.
DenseMatrix prop56_permutation(std::size_t n, std::size_t d);

// Throws std::invalid_argument unless every block is diagonal.
Prop56Report prop56_diagonal_criterion(const BlockMatrix& a, const ToleranceProfile& tol = {});

}  // namespace conicstab
