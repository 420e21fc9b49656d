#include <doctest.h>

#include <cmath>

#include "conicstab/stability.hpp"

using namespace conicstab;

namespace {

const std::vector<std::string> kV2{"z1", "z2"};
const std::vector<std::string> kV3{"z1", "z2", "z3"};
const std::vector<std::string> kM2 = MatrixVarIndex(2).names();

SamplingOptions budget(std::uint64_t samples, std::uint64_t seed = 7) {
  SamplingOptions o;
  o.samples = samples;
  o.seed = seed;
  return o;
}

std::vector<double> imag_of(const std::vector<Complex>& z) {
  std::vector<double> y;
  for (const auto& c : z) y.push_back(c.imag());
  return y;
}

}  // namespace

TEST_CASE("linear_k_stability: documented examples") {
  const auto v1 = linear_k_stability(parse("z1+z2+1", kV2), Cone::orthant(2));
  CHECK(v1.status == VerdictStatus::certified_stable);
  CHECK(v1.certificate.has_value());

  const auto f2 = parse("z1-z2", kV2);
  const auto v2 = linear_k_stability(f2, Cone::orthant(2));
  CHECK(v2.status == VerdictStatus::certified_unstable);
  REQUIRE(v2.witness.has_value());
  CHECK(validate_witness(f2, Cone::orthant(2), *v2.witness));

  const auto f3 = parse("5*z11 + z22 + 3", kM2);
  CHECK(linear_k_stability(f3, Cone::psd(2)).status == VerdictStatus::certified_stable);
  // -A > 0 works as well.
  CHECK(linear_k_stability(parse("-5*z11 - z22", kM2), Cone::psd(2)).status == VerdictStatus::certified_stable);
  // Indefinite A: tr(diag(1,-1) Z) vanishes at Im Z = I.
  const auto f4 = parse("z11 - z22 + 2", kM2);
  const auto v4 = linear_k_stability(f4, Cone::psd(2));
  CHECK(v4.status == VerdictStatus::certified_unstable);
  REQUIRE(v4.witness.has_value());
  CHECK(validate_witness(f4, Cone::psd(2), *v4.witness));
}

TEST_CASE("linear_k_stability: boundary of the dual cone is stable") {
  // <a, y> > 0 for y in int K whenever a is a nonzero element of K*.
  const auto v = linear_k_stability(parse("z1", kV2), Cone::orthant(2));
  CHECK(v.status == VerdictStatus::certified_stable);
  const auto k = Cone::polyhedral({{1, 0}, {1, 1}});
  CHECK(linear_k_stability(parse("z2 - 4", kV2), k).status == VerdictStatus::certified_stable);
  CHECK(falsify_k_stability(parse("z2 - 4", kV2), k, budget(2000)).status == VerdictStatus::not_falsified);
}

TEST_CASE("linear_k_stability: constants, errors and complex constants") {
  CHECK(linear_k_stability(parse("3", kV2), Cone::orthant(2)).status == VerdictStatus::certified_stable);
  CHECK(linear_k_stability(parse("0", kV2), Cone::orthant(2)).status == VerdictStatus::certified_unstable);
  CHECK_THROWS_AS(linear_k_stability(parse("z1*z2", kV2), Cone::orthant(2)), std::invalid_argument);
  CHECK_THROWS_AS(linear_k_stability(parse("z1 + i*z2", kV2), Cone::orthant(2)), std::invalid_argument);
  CHECK_THROWS_AS(linear_k_stability(parse("z1 + i", kV2), Cone::orthant(2)), std::invalid_argument);
  const LinearOptions complex_b{.allow_complex_constant = true};
  // z1 + z2 + i: root needs <a, y> = -1, impossible on the orthant.
  CHECK(linear_k_stability(parse("z1+z2+i", kV2), Cone::orthant(2), complex_b).status ==
        VerdictStatus::certified_stable);
  // z1 + z2 - i: <a, y> = 1 is attained.
  const auto f = parse("z1+z2-i", kV2);
  const auto v = linear_k_stability(f, Cone::orthant(2), complex_b);
  CHECK(v.status == VerdictStatus::certified_unstable);
  REQUIRE(v.witness.has_value());
  CHECK(validate_witness(f, Cone::orthant(2), *v.witness));
}

TEST_CASE("falsify_k_stability: (z1+z3)^2 - z2^2 on the orthant") {
  const auto f = parse("(z1+z3)^2 - z2^2", kV3);
  const auto v = falsify_k_stability(f, Cone::orthant(3), budget(10000));
  REQUIRE(v.status == VerdictStatus::falsified);
  REQUIRE(v.witness.has_value());
  const auto y = imag_of(*v.witness);
  CHECK((std::abs(y[0] - y[1] + y[2]) <= 1e-6 || std::abs(y[0] + y[1] + y[2]) <= 1e-6));
  CHECK(y[0] > 0);
  CHECK(y[1] > 0);
  CHECK(y[2] > 0);
  CHECK(validate_witness(f, Cone::orthant(3), *v.witness));
  CHECK(v.residual <= 1e-6 * f.norm1() * std::pow(std::max(1.0, std::abs((*v.witness)[0])), 2) + 1e-6);
}

TEST_CASE("falsify_k_stability: (z11+z22)^2 - z12^2 on psd(2) is not falsified") {
  const auto f = parse("(z11+z22)^2 - z12^2", kM2);
  const auto v = falsify_k_stability(f, Cone::psd(2), budget(10000));
  CHECK(v.status == VerdictStatus::not_falsified);
  CHECK(v.samples == 10000);
}

TEST_CASE("falsify_k_stability: small cases") {
  CHECK(falsify_k_stability(parse("z1 + i", {"z1"}), Cone::orthant(1), budget(500)).status ==
        VerdictStatus::not_falsified);
  CHECK(falsify_k_stability(parse("z1 - i", {"z1"}), Cone::orthant(1), budget(500)).status ==
        VerdictStatus::falsified);
  CHECK(falsify_k_stability(parse("0", kV2), Cone::orthant(2)).status == VerdictStatus::certified_unstable);
  CHECK_THROWS_AS(falsify_k_stability(parse("z1", kV2), Cone::orthant(3)), std::invalid_argument);
}

TEST_CASE("k_stability dispatches to the exact linear test") {
  const auto v = k_stability(parse("i*z1 + 2i*z2 - 1", kV2), Cone::orthant(2));
  CHECK(v.status == VerdictStatus::certified_stable);
  const auto w = k_stability(parse("z1 + i*z2", kV2), Cone::orthant(2), budget(2000));
  CHECK(w.status == VerdictStatus::falsified);
  // z1 = 1 + i, z2 = -1 + i is a zero of z1 + i z2 with positive imaginary parts.
  CHECK(std::abs(eval(parse("z1 + i*z2", kV2), std::vector<Complex>{{1, 1}, {-1, 1}})) == 0.0);
}

TEST_CASE("hyperbolicity_check") {
  const auto det2 = parse("z11*z22 - z12^2", kM2);
  CHECK(hyperbolicity_check(det2, Cone::psd(2), budget(1000)).status == VerdictStatus::not_falsified);
  const auto sq = parse("z1^2 + z2^2", kV2);
  const auto v = hyperbolicity_check(sq, Cone::orthant(2), budget(1000));
  CHECK(v.status == VerdictStatus::falsified);
  REQUIRE(v.witness.has_value());
  CHECK(validate_witness(sq, Cone::orthant(2), *v.witness));
  CHECK(hyperbolicity_check(parse("z1*z2", kV2), Cone::orthant(2), budget(1000)).status ==
        VerdictStatus::not_falsified);
  CHECK_THROWS_AS(hyperbolicity_check(parse("z1+1", kV2), Cone::orthant(2)), std::invalid_argument);
}

TEST_CASE("hyperbolicity and falsification agree on homogeneous input") {
  const std::vector<std::string> polys{"z1^2 + z2^2", "z1*z2", "(z1+z2)^3 - z1^3", "z1^2 - z2^2", "z1*(z1+z2)"};
  for (const auto& s : polys) {
    const auto f = parse(s, kV2);
    const auto a = falsify_k_stability(f, Cone::orthant(2), budget(800, 3));
    const auto b = hyperbolicity_check(f, Cone::orthant(2), budget(800, 3));
    CHECK(a.status == b.status);
    CHECK(a.draw == b.draw);
  }
}

TEST_CASE("hb_lift_check") {
  const auto z1 = parse("z1", kV2), z2 = parse("z2", kV2);
  // z1 + i z2 vanishes at (1+i, -1+i), so both sides are unstable.
  const auto r1 = hb_lift_check(z2, z1, Cone::orthant(2), budget(3000));
  CHECK(r1.complex_side.unstable());
  CHECK(r1.lifted_side.unstable());
  CHECK(r1.consistent);
  const auto r2 = hb_lift_check(Complex(-1) * z2, z1, Cone::orthant(2), budget(3000));
  CHECK(r2.complex_side.unstable());
  CHECK(r2.lifted_side.unstable());
  CHECK(r2.consistent);
  const auto r3 = hb_lift_check(parse("0", kV2), z1, Cone::orthant(2), budget(3000));
  CHECK(r3.complex_side.clean());
  CHECK(r3.lifted_side.clean());
  CHECK(r3.consistent);
  // A genuinely stable pair: g + i f = (z1 + z2 + i)(2 z1 + z2 + 1).
  const auto h = parse("(z1 + z2 + i)*(2*z1 + z2 + 1)", kV2);
  const auto [g, f] = real_imag_parts(h);
  const auto r4 = hb_lift_check(f, g, Cone::orthant(2), budget(3000));
  CHECK(r4.complex_side.status == VerdictStatus::not_falsified);
  CHECK(r4.lifted_side.status == VerdictStatus::not_falsified);
  CHECK(r4.consistent);
}

TEST_CASE("pencil_hko_check") {
  const auto grid = default_pencil_grid();
  CHECK(grid.size() == 34);
  const auto z1 = parse("z1", kV2), z2 = parse("z2", kV2);
  const auto r = pencil_hko_check(z2, z1, Cone::orthant(2), grid, budget(2000));
  CHECK_FALSE(r.pencil_clean);
  CHECK(r.g_plus_if.unstable());
  CHECK(r.f_plus_ig.unstable());
  CHECK(r.consistent);

  const auto same = pencil_hko_check(z1, z1, Cone::orthant(2), grid, budget(2000));
  CHECK(same.pencil_clean);
  CHECK(same.g_plus_if.clean());
  CHECK(same.consistent);

  // f = z1, g = z1 + z2: members (l+m) z1 + m z2 with opposite signs are
  // unstable, and so are (1+i) z1 + z2 and (1+i) z1 + i z2.
  const auto lin = pencil_hko_check(z1, parse("z1+z2", kV2), Cone::orthant(2), grid, budget(2000));
  CHECK_FALSE(lin.pencil_clean);
  CHECK(lin.g_plus_if.unstable());
  CHECK(lin.f_plus_ig.unstable());
  CHECK(lin.consistent);

  CHECK_THROWS_AS(pencil_hko_check(parse("0", kV2), parse("0", kV2), Cone::orthant(2)), std::invalid_argument);
}

TEST_CASE("wronskian_certificate") {
  const auto z1 = parse("z1", kV2), z2 = parse("z2", kV2);
  const auto r = wronskian_certificate(z2, z1, Cone::orthant(2), 200, budget(0));
  CHECK(r.from_generators);
  REQUIRE(r.directions.size() == 2);
  CHECK_FALSE(r.passed);
  CHECK(r.directions[0].disproof.has_value());
  CHECK((*r.directions[0].disproof)[1] < 0);  // W_{e1} = -z2

  const auto one = wronskian_certificate(parse("1", {"z1"}), parse("z1", {"z1"}), Cone::orthant(1), 200);
  CHECK(one.passed);
  CHECK(one.directions[0].max_value == doctest::Approx(-1.0));

  CHECK(wronskian_certificate(z1, z1, Cone::orthant(2), 50).passed);

  const auto psd = wronskian_certificate(parse("1", kM2), parse("z11+z22", kM2), Cone::psd(2), 100, budget(0), 8);
  CHECK_FALSE(psd.from_generators);
  CHECK(psd.directions.size() == 8);
  CHECK(psd.passed);
}

TEST_CASE("decompose_check") {
  const auto r1 = decompose_check(parse("z1 + i*z2", kV2), Cone::orthant(2), budget(2000));
  CHECK(r1.whole.unstable());
  REQUIRE(r1.real_part.has_value());
  REQUIRE(r1.imag_part.has_value());
  CHECK(r1.real_part->status == VerdictStatus::certified_stable);
  CHECK(r1.imag_part->status == VerdictStatus::certified_stable);
  CHECK(r1.consistent);

  const auto r2 = decompose_check(parse("z11*z22 - z12^2", kM2), Cone::psd(2), budget(2000));
  CHECK(r2.real_part.has_value());
  CHECK_FALSE(r2.imag_part.has_value());
  CHECK(r2.consistent);

  // (z1 + i z2)^2 is unstable and so is its real part (z1 - z2)(z1 + z2).
  const auto r3 = decompose_check(parse("(z1 + i*z2)^2", kV2), Cone::orthant(2), budget(2000));
  CHECK(r3.whole.unstable());
  CHECK(r3.real_part->unstable());
  CHECK(r3.imag_part->status == VerdictStatus::not_falsified);
  CHECK(r3.consistent);
}

TEST_CASE("imaginary_projection_sample") {
  const std::vector<std::pair<double, double>> box2(2, {-2.0, 2.0});
  const auto lin = imaginary_projection_sample(parse("z1+z2+1", kV2), 300, box2, 1);
  CHECK(lin.size() == 300);
  for (const auto& y : lin) CHECK(std::abs(y[0] + y[1]) <= 1e-8);

  const auto sq = imaginary_projection_sample(parse("z1^2+1", {"z1"}), 50, {{-1.0, 1.0}}, 2);
  for (const auto& y : sq) CHECK(std::abs(std::abs(y[0]) - 1.0) <= 1e-10);

  const std::vector<std::pair<double, double>> box3(3, {-2.0, 2.0});
  const auto ex33 = imaginary_projection_sample(parse("(z1+z3)^2 - z2^2", kV3), 300, box3, 3);
  for (const auto& y : ex33)
    CHECK(std::min(std::abs(y[0] - y[1] + y[2]), std::abs(y[0] + y[1] + y[2])) <= 1e-8);

  CHECK_THROWS_AS(imaginary_projection_sample(parse("3", kV2), 5, box2, 1), std::invalid_argument);
}

TEST_CASE("specialize_stability_check") {
  const auto z1 = Cone::orthant(1);
  const auto v1 = specialize_stability_check(parse("z1*z2", kV2), {0}, {0.0}, {1.0}, z1, z1, budget(1000));
  CHECK(v1.clean());
  const auto v2 = specialize_stability_check(parse("z1+z2", kV2), {0}, {1.0}, {1.0}, z1, z1, budget(1000));
  CHECK(v2.status == VerdictStatus::certified_stable);
  CHECK_THROWS_AS(specialize_stability_check(parse("z1+z2", kV2), {0}, {1.0}, {-1.0}, z1, z1),
                  std::invalid_argument);
  // g + w f with w -> lambda + i gives (g + lambda f) + i f.
  const auto h = parse("(z1 + z2 + i)*(2*z1 + z2 + 1)", kV2);
  const auto [g, f] = real_imag_parts(h);
  const auto gw = append_variable(g, "w"), fw = append_variable(f, "w");
  const auto lifted = gw + MultiPoly::variable(gw.var_names(), 2) * fw;
  const auto v3 = specialize_stability_check(lifted, {2}, {0.4}, {1.0}, z1, Cone::orthant(2), budget(2000));
  CHECK(v3.clean());
}

TEST_CASE("seed determinism and serial/parallel agreement") {
  const auto f = parse("z1^2 + z1*z2 - 3*z2^2 + z1 - 2", kV2);
  SamplingOptions serial = budget(3000, 99);
  serial.threads = 1;
  SamplingOptions parallel = budget(3000, 99);
  parallel.threads = 4;
  const auto a = falsify_k_stability(f, Cone::orthant(2), serial);
  const auto b = falsify_k_stability(f, Cone::orthant(2), parallel);
  const auto c = falsify_k_stability(f, Cone::orthant(2), serial);
  CHECK(a.status == b.status);
  CHECK(a.draw == b.draw);
  CHECK(a.witness == b.witness);
  CHECK(a.witness == c.witness);
}
