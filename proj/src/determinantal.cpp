#include "conicstab/determinantal.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "conicstab/sampling.hpp"

namespace conicstab {

BlockMatrix::BlockMatrix(std::size_t n1, std::size_t n2, std::size_t p, std::size_t q)
    : n1_(n1), n2_(n2), p_(p), q_(q), blocks_(n1 * n2, DenseMatrix(p, q)) {}

BlockMatrix BlockMatrix::from_dense(const DenseMatrix& m, std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 == 0 || m.rows() % n1 != 0 || m.cols() % n2 != 0)
    throw std::invalid_argument("BlockMatrix::from_dense: grid does not divide the matrix");
  const std::size_t p = m.rows() / n1, q = m.cols() / n2;
  BlockMatrix out(n1, n2, p, q);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < q; ++c) out.block(i, j)(r, c) = m(i * p + r, j * q + c);
  return out;
}

BlockMatrix BlockMatrix::scalar_blocks(const DenseMatrix& y) {
  return from_dense(y, y.rows(), y.cols());
}

void BlockMatrix::set_block(std::size_t i, std::size_t j, DenseMatrix b) {
  if (i >= n1_ || j >= n2_) throw std::out_of_range("BlockMatrix::set_block: index out of range");
  if (b.rows() != p_ || b.cols() != q_) throw std::invalid_argument("BlockMatrix::set_block: wrong block shape");
  block(i, j) = std::move(b);
}

DenseMatrix BlockMatrix::flatten() const {
  DenseMatrix m(n1_ * p_, n2_ * q_);
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j)
      for (std::size_t r = 0; r < p_; ++r)
        for (std::size_t c = 0; c < q_; ++c) m(i * p_ + r, j * q_ + c) = block(i, j)(r, c);
  return m;
}

bool BlockMatrix::is_hermitian(double tol) const {
  if (n1_ != n2_ || p_ != q_) return false;
  const double scale = std::max(1.0, flatten().frobenius_norm());
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j)
      for (std::size_t r = 0; r < p_; ++r)
        for (std::size_t c = 0; c < p_; ++c)
          if (std::abs(block(i, j)(r, c) - std::conj(block(j, i)(c, r))) > tol * scale) return false;
  return true;
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
  return out;
}

BlockMatrix khatri_rao(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.grid_rows() != b.grid_rows() || a.grid_cols() != b.grid_cols())
    throw std::invalid_argument("khatri_rao: block grids differ");
  BlockMatrix out(a.grid_rows(), a.grid_cols(), a.block_rows() * b.block_rows(), a.block_cols() * b.block_cols());
  for (std::size_t i = 0; i < a.grid_rows(); ++i)
    for (std::size_t j = 0; j < a.grid_cols(); ++j) out.block(i, j) = kronecker(a.block(i, j), b.block(i, j));
  return out;
}

LiuReport liu_psd_check(const BlockMatrix& a, const BlockMatrix& b, const ToleranceProfile& tol) {
  if (a.grid_rows() != b.grid_rows() || a.grid_cols() != b.grid_cols())
    throw std::invalid_argument("liu_psd_check: block grids differ");
  if (!a.is_hermitian(tol.hermitian_tol) || !b.is_hermitian(tol.hermitian_tol))
    throw std::invalid_argument("liu_psd_check: operands must be Hermitian block matrices");
  LiuReport r;
  r.a_class = psd_classify(a.flatten(), tol);
  r.b_class = psd_classify(b.flatten(), tol);
  const DenseMatrix prod = khatri_rao(a, b).flatten();
  r.product_class = psd_classify(prod, tol);
  r.product_lambda_min = hermitian_eigenvalues(prod, tol).front();
  r.a_diagonal_blocks_pd = true;
  for (std::size_t i = 0; i < a.grid_rows(); ++i)
    if (psd_classify(a.block(i, i), tol) != Definiteness::positive_definite) r.a_diagonal_blocks_pd = false;

  r.psd_premise = r.a_class != Definiteness::indefinite && r.b_class != Definiteness::indefinite;
  if (r.psd_premise) r.psd_conclusion_holds = r.product_class != Definiteness::indefinite;
  r.pd_premise = r.a_class != Definiteness::indefinite && r.a_diagonal_blocks_pd &&
                 r.b_class == Definiteness::positive_definite;
  if (r.pd_premise) r.pd_conclusion_holds = r.product_class == Definiteness::positive_definite;
  return r;
}

namespace {

void require_coefficient_shapes(const DenseMatrix& y, const BlockMatrix& a) {
  if (!y.square() || y.rows() != a.grid_rows() || a.grid_rows() != a.grid_cols() ||
      a.block_rows() != a.block_cols())
    throw std::invalid_argument("assemble_coefficient: Y must be n x n and A an n x n grid of d x d blocks");
}

}  // namespace

DenseMatrix assemble_coefficient(const DenseMatrix& y, const BlockMatrix& a) {
  require_coefficient_shapes(y, a);
  const std::size_t n = y.rows(), d = a.block_rows();
  DenseMatrix q(d, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q += y(i, j) * a.block(i, j);
#ifndef NDEBUG
  const DenseMatrix alt = assemble_coefficient_khatri_rao(y, a);
  assert((alt - q).frobenius_norm() <= 1e-10 * std::max(1.0, q.frobenius_norm()));
#endif
  return q;
}

DenseMatrix assemble_coefficient_khatri_rao(const DenseMatrix& y, const BlockMatrix& a) {
  require_coefficient_shapes(y, a);
  const std::size_t n = y.rows(), d = a.block_rows();
  DenseMatrix ones_row(1, n);
  for (std::size_t j = 0; j < n; ++j) ones_row(0, j) = 1.0;
  const DenseMatrix left = kronecker(ones_row, DenseMatrix::identity(d));
  const DenseMatrix right = kronecker(ones_row.transpose(), DenseMatrix::identity(d));
  return left * khatri_rao(BlockMatrix::scalar_blocks(y), a).flatten() * right;
}

namespace {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

MultiPoly det_cofactor(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (row == m.size()) return MultiPoly::constant(m[0][0].var_names(), 1.0);
  MultiPoly acc(m[0][0].var_names(), m[0][0].zero_tol());
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    if (!m[row][c].is_zero()) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      const MultiPoly minor = det_cofactor(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      const MultiPoly term = m[row][c] * minor;
      if (sign > 0) acc += term;
      else acc -= term;
    }
    sign = -sign;
  }
  return acc;
}

// Coefficient matrix of z_ij in the symmetric-variable convention.
DenseMatrix symmetric_coefficient(const BlockMatrix& a, std::size_t i, std::size_t j) {
  return i == j ? a.block(i, i) : a.block(i, j) + a.block(j, i);
}

void require_det_shapes(const BlockMatrix& a, const DenseMatrix& b, const char* who) {
  if (a.grid_rows() != a.grid_cols() || a.block_rows() != a.block_cols() || a.grid_rows() == 0)
    throw std::invalid_argument(std::string(who) + ": A must be an n x n grid of d x d blocks");
  if (b.rows() != a.block_rows() || b.cols() != a.block_rows())
    throw std::invalid_argument(std::string(who) + ": B must be d x d");
}

}  // namespace

MultiPoly expand_det_polynomial(const BlockMatrix& a, const DenseMatrix& b, const ExpansionCap& cap,
                                const ToleranceProfile& tol) {
  require_det_shapes(a, b, "expand_det_polynomial");
  const std::size_t n = a.grid_rows(), d = a.block_rows();
  if (n > cap.max_n || d > cap.max_d)
    throw std::length_error("expand_det_polynomial: n = " + std::to_string(n) + ", d = " + std::to_string(d) +
                            " exceeds the expansion cap");
  const MatrixVarIndex idx(n);
  const auto names = idx.names();
  PolyMatrix m(d, std::vector<MultiPoly>(d, MultiPoly(names, tol.coeff_zero_tol)));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      MultiPoly& e = m[r][c];
      e.add_term(Exponent(names.size(), 0), b(r, c));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          Exponent ex(names.size(), 0);
          ex[idx.flat(i, j)] = 1;
          e.add_term(ex, symmetric_coefficient(a, i, j)(r, c));
        }
    }
  std::vector<std::size_t> cols(d);
  for (std::size_t c = 0; c < d; ++c) cols[c] = c;
  return det_cofactor(m, cols, 0);
}

namespace {

// Random complex symmetric evaluations of det(sum C_ij z_ij + B); used to
// detect an identically vanishing determinant above the expansion cap.
bool vanishes_at_random_points(const BlockMatrix& a, const DenseMatrix& b, std::uint64_t seed,
                               const ToleranceProfile& tol) {
  const std::size_t n = a.grid_rows();
  for (std::uint64_t trial = 0; trial < 8; ++trial) {
    auto rng = draw_stream(seed, trial);
    std::normal_distribution<double> normal;
    DenseMatrix m = b;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m += Complex(normal(rng), normal(rng)) * symmetric_coefficient(a, i, j);
    if (determinant(m, tol) != Complex{}) return false;
  }
  return true;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

DetCertificate thm54_certify(const BlockMatrix& a, const DenseMatrix& b, const ToleranceProfile& tol,
                             const ExpansionCap& cap, std::uint64_t seed) {
  require_det_shapes(a, b, "thm54_certify");
  if (!a.is_hermitian(tol.hermitian_tol))
    throw std::invalid_argument("thm54_certify: blocks must satisfy A_ij = A_ji^H");
  require_hermitian(b, tol);

  DetCertificate out;
  const DenseMatrix flat = a.flatten();
  out.eigenvalues = hermitian_eigenvalues(flat, tol);
  out.lambda_min = out.eigenvalues.front();
  out.b_hermitian_residual = hermitian_defect(b);
  out.verdict.seed = seed;

  const bool within_cap = a.grid_rows() <= cap.max_n && a.block_rows() <= cap.max_d;
  if (within_cap) out.polynomial = expand_det_polynomial(a, b, cap, tol);
  if (psd_classify(flat, tol) == Definiteness::indefinite) {
    out.verdict.status = VerdictStatus::not_certified;
    out.verdict.certificate = "A is indefinite (lambda_min = " + fmt(out.lambda_min) +
                              "); the sufficient criterion does not apply";
    return out;
  }
  const bool zero = within_cap ? out.polynomial->is_zero() : vanishes_at_random_points(a, b, seed, tol);
  if (zero) {
    out.verdict.status = VerdictStatus::identically_zero;
    out.verdict.certificate = "A psd but det(sum A_ij z_ij + B) vanishes identically";
    return out;
  }
  out.verdict.status = VerdictStatus::certified_stable;
  out.verdict.certificate = "A psd with lambda_min = " + fmt(out.lambda_min) +
                            "; B Hermitian with residual " + fmt(out.b_hermitian_residual);
  return out;
}

namespace {

double coefficient_distance(const MultiPoly& p, const MultiPoly& q) {
  double d = 0.0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, std::abs(c - q.coefficient(e)));
  for (const auto& [e, c] : q.terms()) d = std::max(d, std::abs(c - p.coefficient(e)));
  return d;
}

}  // namespace

PerturbationReport perturbed_certify(const BlockMatrix& a, const DenseMatrix& b, std::size_t steps,
                                     const ToleranceProfile& tol, const ExpansionCap& cap) {
  require_det_shapes(a, b, "perturbed_certify");
  const Definiteness cls = psd_classify(a.flatten(), tol);
  if (cls == Definiteness::indefinite) throw std::domain_error("perturbed_certify: A is indefinite");

  const std::size_t n = a.grid_rows(), d = a.block_rows();
  const bool expand = n <= cap.max_n && d <= cap.max_d;
  std::optional<MultiPoly> limit;
  if (expand) limit = expand_det_polynomial(a, b, cap, tol);

  std::vector<double> schedule;
  if (cls == Definiteness::positive_definite) schedule.push_back(0.0);
  else
    for (std::size_t k = 1; k <= steps; ++k) schedule.push_back(std::ldexp(1.0, -static_cast<int>(k)));

  PerturbationReport r;
  for (double eps : schedule) {
    BlockMatrix ak = a;
    for (std::size_t i = 0; i < n; ++i) ak.block(i, i) += eps * DenseMatrix::identity(d);
    PerturbationStep s;
    s.eps = eps;
    s.psd = psd_classify(ak.flatten(), tol) != Definiteness::indefinite;
    s.diagonal_blocks_pd = true;
    for (std::size_t i = 0; i < n; ++i)
      if (psd_classify(ak.block(i, i), tol) != Definiteness::positive_definite) s.diagonal_blocks_pd = false;
    const DetCertificate cert = thm54_certify(ak, b, tol, cap);
    s.status = cert.verdict.status;
    if (s.status != VerdictStatus::certified_stable) r.all_certified = false;
    if (limit && cert.polynomial) s.coeff_distance = coefficient_distance(*cert.polynomial, *limit);
    r.steps.push_back(s);
  }
  if (expand) {
    for (std::size_t k = 1; k < r.steps.size(); ++k)
      if (r.steps[k].coeff_distance > r.steps[k - 1].coeff_distance * (1.0 + 1e-12) + 1e-15) r.converges = false;
    const auto& last = r.steps.back();
    if (last.eps > 0.0) r.linear_rate = last.coeff_distance / last.eps;
    if (last.coeff_distance > 1e-4 * std::max(1.0, limit->norm1())) r.converges = false;
  }
  return r;
}

DenseMatrix prop56_permutation(std::size_t n, std::size_t d) {
  DenseMatrix p(n * d, n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) p(i * d + k, k * n + i) = 1.0;
  return p;
}

Prop56Report prop56_diagonal_criterion(const BlockMatrix& a, const ToleranceProfile& tol) {
  if (a.grid_rows() != a.grid_cols() || a.block_rows() != a.block_cols())
    throw std::invalid_argument("prop56_diagonal_criterion: A must be an n x n grid of d x d blocks");
  const std::size_t n = a.grid_rows(), d = a.block_rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          if (r != c && std::abs(a.block(i, j)(r, c)) > tol.coeff_zero_tol)
            throw std::invalid_argument("prop56_diagonal_criterion: block (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ") is not diagonal");
  Prop56Report rep;
  rep.permutation.resize(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) rep.permutation[i * d + k] = k * n + i;

  bool any_indefinite = false, all_pd = true;
  for (std::size_t k = 0; k < d; ++k) {
    DenseMatrix ak(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ak(i, j) = a.block(i, j)(k, k);
    const Definiteness c = psd_classify(ak, tol);
    any_indefinite = any_indefinite || c == Definiteness::indefinite;
    all_pd = all_pd && c == Definiteness::positive_definite;
    if (n == 2) {
      ScalarConditions s;
      s.a11 = ak(0, 0).real();
      s.a22 = ak(1, 1).real();
      s.det = s.a11 * s.a22 - std::norm(ak(0, 1));
      const double band = tol.psd_tol * std::max(1.0, ak.frobenius_norm());
      s.holds = s.a11 >= -band && s.a22 >= -band && s.det >= -band * std::max(1.0, ak.frobenius_norm());
      rep.scalar.push_back(s);
    }
    rep.blocks.push_back(std::move(ak));
    rep.block_classes.push_back(c);
  }
  rep.combined = any_indefinite ? Definiteness::indefinite
                 : all_pd       ? Definiteness::positive_definite
                                : Definiteness::positive_semidefinite;
  rep.whole = psd_classify(a.flatten(), tol);
  rep.agrees = rep.combined == rep.whole;
  return rep;
}

}  // namespace conicstab
