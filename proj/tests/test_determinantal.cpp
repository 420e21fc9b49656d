#include <doctest.h>

#include <algorithm>
#include <random>

#include "conicstab/determinantal.hpp"
#include "conicstab/stability.hpp"
#include "oracles.hpp"

using namespace conicstab;

namespace {

const std::vector<std::string> kM2 = MatrixVarIndex(2).names();

DenseMatrix offdiag(double v) { return DenseMatrix{{0, v}, {v, 0}}; }

BlockMatrix blocks2(const DenseMatrix& a11, const DenseMatrix& a12, const DenseMatrix& a21, const DenseMatrix& a22) {
  BlockMatrix a(2, 2, a11.rows(), a11.cols());
  a.set_block(0, 0, a11);
  a.set_block(0, 1, a12);
  a.set_block(1, 0, a21);
  a.set_block(1, 1, a22);
  return a;
}

BlockMatrix psd_example() {
  const auto i2 = DenseMatrix::identity(2);
  return blocks2(i2, offdiag(0.5), offdiag(0.5), i2);
}

BlockMatrix indefinite_example() {
  return blocks2(DenseMatrix::diagonal({1, 5}), offdiag(2), offdiag(2), DenseMatrix::diagonal({5, 1}));
}

BlockMatrix random_psd_blocks(std::mt19937_64& rng, std::size_t n, std::size_t d, std::size_t rank, bool real) {
  const auto g = oracle::random_matrix(rng, n * d, rank, real);
  return BlockMatrix::from_dense(oracle::gram(g), n, n);
}

double max_entry_gap(const DenseMatrix& a, const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace

TEST_CASE("kronecker") {
  CHECK(kronecker(DenseMatrix::identity(2), DenseMatrix::identity(2)) == DenseMatrix::identity(4));
  const DenseMatrix b{{1, 2}, {3, 4}};
  CHECK(kronecker(DenseMatrix{{3}}, b) == DenseMatrix{{3, 6}, {9, 12}});
  CHECK(kronecker(offdiag(1), DenseMatrix{{2}}) == offdiag(2));
  CHECK(kronecker(DenseMatrix(2, 3), DenseMatrix(4, 5)).rows() == 8);
}

TEST_CASE("Kronecker spectrum is the product of spectra") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const auto a = oracle::random_hermitian(rng, 1 + t % 4);
    const auto b = oracle::random_hermitian(rng, 1 + (t / 4) % 4);
    const auto ea = hermitian_eigenvalues(a), eb = hermitian_eigenvalues(b);
    std::vector<double> want;
    for (double x : ea)
      for (double y : eb) want.push_back(x * y);
    std::sort(want.begin(), want.end());
    const auto got = hermitian_eigenvalues(kronecker(a, b));
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9).scale(10));
  }
}

TEST_CASE("BlockMatrix basics") {
  const auto a = psd_example();
  CHECK(a.is_hermitian());
  const auto flat = a.flatten();
  CHECK(flat == DenseMatrix{{1, 0, 0, 0.5}, {0, 1, 0.5, 0}, {0, 0.5, 1, 0}, {0.5, 0, 0, 1}});
  CHECK(BlockMatrix::from_dense(flat, 2, 2).flatten() == flat);
  CHECK_THROWS_AS(BlockMatrix::from_dense(DenseMatrix(3, 3), 2, 2), std::invalid_argument);
  BlockMatrix b(2, 2, 2, 2);
  CHECK_THROWS_AS(b.set_block(0, 0, DenseMatrix(3, 3)), std::invalid_argument);
  const auto nh = blocks2(DenseMatrix::identity(2), offdiag(1), offdiag(2), DenseMatrix::identity(2));
  CHECK_FALSE(nh.is_hermitian());
}

TEST_CASE("khatri_rao") {
  std::mt19937_64 rng(42);
  const DenseMatrix y{{2, -1}, {-1, 3}};
  const auto a = random_psd_blocks(rng, 2, 3, 6, false);
  const auto kr = khatri_rao(BlockMatrix::scalar_blocks(y), a);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      DenseMatrix want = a.block(i, j);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) want(r, c) *= y(i, j);
      CHECK(kr.block(i, j) == want);
    }
  // Single-block operands give the usual Kronecker product.
  const DenseMatrix p{{1, 2}, {3, 4}}, q{{0, 1}, {1, 1}};
  CHECK(khatri_rao(BlockMatrix::from_dense(p, 1, 1), BlockMatrix::from_dense(q, 1, 1)).flatten() == kronecker(p, q));
  const auto zero = khatri_rao(a, BlockMatrix(2, 2, 1, 1));
  CHECK(zero.flatten().frobenius_norm() == 0.0);
  CHECK_THROWS_AS(khatri_rao(a, BlockMatrix(3, 3, 1, 1)), std::invalid_argument);
}

TEST_CASE("liu_psd_check") {
  const auto a = psd_example();
  const auto y = BlockMatrix::scalar_blocks(DenseMatrix{{2, 1}, {1, 2}});
  const auto r = liu_psd_check(a, y);
  CHECK(r.product_class == Definiteness::positive_definite);
  CHECK(r.pd_premise);
  CHECK_FALSE(r.violated());

  const auto id = BlockMatrix::from_dense(DenseMatrix::identity(4), 2, 2);
  CHECK(liu_psd_check(id, id).product_class == Definiteness::positive_definite);

  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    const auto p = random_psd_blocks(rng, 2, 2, 2, t % 2 == 0);
    const auto q = random_psd_blocks(rng, 2, 2, 1, t % 3 == 0);
    const auto rep = liu_psd_check(p, q);
    CHECK(rep.psd_premise);
    CHECK(rep.product_class != Definiteness::indefinite);
    CHECK_FALSE(rep.violated());
  }
  CHECK_THROWS_AS(liu_psd_check(a, BlockMatrix::scalar_blocks(DenseMatrix::identity(3))), std::invalid_argument);
}

TEST_CASE("assemble_coefficient") {
  const auto a = psd_example();
  CHECK(assemble_coefficient(DenseMatrix::identity(2), a) == Complex(2) * DenseMatrix::identity(2));
  CHECK(assemble_coefficient(offdiag(1), a) == offdiag(1));
  const auto q = assemble_coefficient(DenseMatrix{{2, 1}, {1, 2}}, a);
  CHECK(psd_classify(q) == Definiteness::positive_definite);
  std::mt19937_64 rng(44);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4, d = 1 + (t / 4) % 4;
    const auto blocks = BlockMatrix::from_dense(oracle::random_matrix(rng, n * d, n * d), n, n);
    const auto ym = oracle::random_hermitian(rng, n, true);
    CHECK(max_entry_gap(assemble_coefficient(ym, blocks), assemble_coefficient_khatri_rao(ym, blocks)) <= 1e-12);
  }
  CHECK_THROWS_AS(assemble_coefficient(DenseMatrix::identity(3), a), std::invalid_argument);
}

TEST_CASE("expand_det_polynomial") {
  CHECK(expand_det_polynomial(psd_example(), DenseMatrix(2, 2)) == parse("(z11+z22)^2 - z12^2", kM2));
  CHECK(expand_det_polynomial(indefinite_example(), DenseMatrix(2, 2)) ==
        parse("(z11+5*z22)*(5*z11+z22) - 16*z12^2", kM2));
  CHECK(expand_det_polynomial(BlockMatrix::scalar_blocks(DenseMatrix{{3}}), DenseMatrix(1, 1)) ==
        parse("3*z11", {"z11"}));
  CHECK(expand_det_polynomial(BlockMatrix(2, 2, 2, 2), DenseMatrix::identity(2)) == parse("1", kM2));
  CHECK_THROWS_AS(expand_det_polynomial(BlockMatrix(5, 5, 1, 1), DenseMatrix::identity(1)), std::length_error);
  // The expansion agrees with the numeric determinant at random symmetric points.
  std::mt19937_64 rng(45);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 3, d = 1 + (t / 3) % 3;
    const auto a = BlockMatrix::from_dense(oracle::random_matrix(rng, n * d, n * d), n, n);
    const auto b = oracle::random_hermitian(rng, d);
    const auto f = expand_det_polynomial(a, b);
    const MatrixVarIndex idx(n);
    DenseMatrix y(n, n);
    std::vector<Complex> z(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto [i, j] = idx.entry(k);
      z[k] = Complex(g(rng), g(rng));
      y(i, j) = y(j, i) = z[k];
    }
    DenseMatrix m = b;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m += y(i, j) * a.block(i, j);
    const Complex want = determinant(m);
    CHECK(std::abs(eval(f, std::span<const Complex>(z)) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("thm54_certify") {
  const auto c = thm54_certify(psd_example(), DenseMatrix(2, 2));
  CHECK(c.verdict.status == VerdictStatus::certified_stable);
  REQUIRE(c.eigenvalues.size() == 4);
  const std::vector<double> want{0.5, 0.5, 1.5, 1.5};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(c.eigenvalues[i] - want[i]) <= 1e-9);
  REQUIRE(c.polynomial.has_value());
  CHECK(*c.polynomial == parse("(z11+z22)^2 - z12^2", kM2));

  const auto e = thm54_certify(indefinite_example(), DenseMatrix(2, 2));
  CHECK(e.verdict.status == VerdictStatus::not_certified);
  CHECK(e.lambda_min <= -1 + 1e-9);

  const auto one = thm54_certify(BlockMatrix(2, 2, 2, 2), DenseMatrix::identity(2));
  CHECK(one.verdict.status == VerdictStatus::certified_stable);
  CHECK(*one.polynomial == parse("1", kM2));

  // PSD A that produces the zero polynomial: A_11 singular with B = 0, n = 1.
  const auto z = thm54_certify(BlockMatrix::scalar_blocks(DenseMatrix{{0}}), DenseMatrix(1, 1));
  CHECK(z.verdict.status == VerdictStatus::identically_zero);

  CHECK_THROWS_AS(thm54_certify(psd_example(), DenseMatrix{{0, 1}, {2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(thm54_certify(psd_example(), DenseMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("indefinite A can still give a psd-stable determinant") {
  const auto f = expand_det_polynomial(indefinite_example(), DenseMatrix(2, 2));
  SamplingOptions o;
  o.samples = 10000;
  o.seed = 11;
  CHECK(falsify_k_stability(f, Cone::psd(2), o).status == VerdictStatus::not_falsified);
}

TEST_CASE("block certificates survive the falsifier") {
  std::mt19937_64 rng(46);
  SamplingOptions o;
  o.samples = 1500;
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 1 + t % 3, d = 1 + (t / 2) % 3;
    const auto a = random_psd_blocks(rng, n, d, n * d, t % 2 == 0);
    const auto b = oracle::random_hermitian(rng, d, t % 2 == 0);
    const auto c = thm54_certify(a, b);
    REQUIRE(c.verdict.status == VerdictStatus::certified_stable);
    o.seed = 100 + t;
    CHECK(falsify_k_stability(*c.polynomial, Cone::psd(n), o).clean());
  }
}

TEST_CASE("perturbed_certify") {
  const auto ones = BlockMatrix::scalar_blocks(DenseMatrix{{1, 1}, {1, 1}});
  const auto r = perturbed_certify(ones, DenseMatrix(1, 1), 12);
  REQUIRE(r.steps.size() == 12);
  for (const auto& s : r.steps) {
    CHECK(s.psd);
    CHECK(s.diagonal_blocks_pd);
    CHECK(s.status == VerdictStatus::certified_stable);
  }
  CHECK(r.all_certified);
  CHECK(r.converges);
  CHECK(r.steps.back().coeff_distance <= 4 * r.steps.back().eps);
  CHECK(r.linear_rate == doctest::Approx(1.0).epsilon(0.05));

  const auto pd = perturbed_certify(psd_example(), DenseMatrix(2, 2));
  REQUIRE(pd.steps.size() == 1);
  CHECK(pd.steps[0].eps == 0.0);
  CHECK(pd.all_certified);

  CHECK_THROWS_AS(perturbed_certify(indefinite_example(), DenseMatrix(2, 2)), std::domain_error);
}

TEST_CASE("prop56") {
  const auto p = prop56_permutation(3, 2);
  CHECK(psd_classify(p * p.transpose()) == Definiteness::positive_definite);
  CHECK(p * p.transpose() == DenseMatrix::identity(6));

  const DenseMatrix ones{{1, 1}, {1, 1}};
  // d = 2, n = 2, both A_k = ones: A_ij = I.
  const auto a = blocks2(DenseMatrix::identity(2), DenseMatrix::identity(2), DenseMatrix::identity(2),
                         DenseMatrix::identity(2));
  const auto r = prop56_diagonal_criterion(a);
  CHECK(r.combined == Definiteness::positive_semidefinite);
  CHECK(r.whole == Definiteness::positive_semidefinite);
  CHECK(r.agrees);
  REQUIRE(r.blocks.size() == 2);
  CHECK(r.blocks[0] == ones);
  REQUIRE(r.scalar.size() == 2);
  CHECK(r.scalar[0].holds);

  // A_1 = [[1,2],[2,1]], A_2 = I.
  const auto b = blocks2(DenseMatrix::diagonal({1, 1}), DenseMatrix::diagonal({2, 0}), DenseMatrix::diagonal({2, 0}),
                         DenseMatrix::diagonal({1, 1}));
  const auto rb = prop56_diagonal_criterion(b);
  CHECK(rb.block_classes[0] == Definiteness::indefinite);
  CHECK(rb.block_classes[1] == Definiteness::positive_definite);
  CHECK(rb.whole == Definiteness::indefinite);
  CHECK(rb.agrees);
  CHECK_FALSE(rb.scalar[0].holds);

  CHECK_THROWS_AS(prop56_diagonal_criterion(indefinite_example()), std::invalid_argument);

  // P^T flatten(A) P is exactly block diagonal with the reported blocks.
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 3, d = 1 + (t / 3) % 3;
    std::vector<DenseMatrix> ak;
    for (std::size_t k = 0; k < d; ++k) ak.push_back(oracle::random_hermitian(rng, n, true));
    BlockMatrix m(n, n, d, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        DenseMatrix blk(d, d);
        for (std::size_t k = 0; k < d; ++k) blk(k, k) = ak[k](i, j);
        m.set_block(i, j, blk);
      }
    const auto rep = prop56_diagonal_criterion(m);
    const auto perm = prop56_permutation(n, d);
    const auto bd = perm.transpose() * m.flatten() * perm;
    for (std::size_t r0 = 0; r0 < n * d; ++r0)
      for (std::size_t c0 = 0; c0 < n * d; ++c0) {
        const std::size_t kr = r0 / n, kc = c0 / n;
        const Complex want = kr == kc ? ak[kr](r0 % n, c0 % n) : Complex{};
        CHECK(bd(r0, c0) == want);
      }
    for (std::size_t k = 0; k < d; ++k) CHECK(rep.blocks[k] == ak[k]);
    CHECK(rep.agrees);
  }
}
