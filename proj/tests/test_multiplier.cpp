#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "schroedsym/errors.hpp"
#include "schroedsym/multiplier.hpp"

using namespace schroedsym;
using Catch::Matchers::WithinAbs;

namespace {

GroupElement near_identity(std::mt19937_64& rng, bool translations = true) {
  std::uniform_real_distribution<double> u(-0.3, 0.3), pos(0.7, 1.4), tr(-1.0, 1.0);
  const double a = u(rng), d = u(rng), b = pos(rng);
  return make_element({(1.0 + a * d) / b, d, a, b}, translations ? tr(rng) : 0.0,
                      translations ? tr(rng) : 0.0);
}

GroupElement nonnegative(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a_(0.2, 0.5), b_(0.8, 1.4), e_(0.0, 0.5), tr(-1.0, 1.0);
  const double a = a_(rng), b = b_(rng), e = e_(rng);
  return make_element({(1.0 + e) / b, e / a, a, b}, tr(rng), tr(rng));
}

}  // namespace

TEST_CASE("multipliers are one at the identity", "[multiplier]") {
  const Point z(0.4, {0.3});
  for (const auto& spec : {FamilySpec::free(1.0), FamilySpec::linear(1.0, 0.3, 0.7),
                           FamilySpec::quadratic(1.0, 0.2, 0.8), FamilySpec::inverse_quadratic(1.0, 2.0)}) {
    CHECK(std::abs(multiplier(identity_element(), z, spec) - 1.0) < 1e-15);
  }
  CHECK(std::abs(K_inverse_quadratic({1.0, 0.7, 0.0, 1.0}, z, 1.0, 1) - 1.0) < 1e-15);
  const auto flat = FamilySpec::linear(1.0, 0.3, 0.0);
  CHECK(std::abs(K_linear(make_element(Mat2::identity(), 0.4, 0.0), z, flat) - 1.0) < 1e-15);
  CHECK_THROWS_AS(K_inverse_quadratic({1.0, 0.0, 1.0, 2.0}, Point(-2.0, {0.1}), 1.0, 1), SingularTime);
}

TEST_CASE("multiplier product identities", "[multiplier][cocycle]") {
  std::mt19937_64 rng(7);
  const auto lin = FamilySpec::linear(1.0, 0.3, 0.7);
  const auto quad = FamilySpec::quadratic(1.0, 0.2, 0.8);
  const auto iq = FamilySpec::inverse_quadratic(1.0, 2.0, 3);
  const auto nd = FamilySpec::ndim_linear(1.0, 0.3, 0.5, {{0.0, 2.0}, {2.0, 0.0}});
  for (int i = 0; i < 100; ++i) {
    const Point z(0.5, {0.2}), z3(0.5, {0.2, -0.3, 0.6}), z2(0.5, {0.2, -0.3});
    CHECK(cocycle_defect(near_identity(rng), near_identity(rng), z, lin) < 1e-10);
    CHECK(cocycle_defect(near_identity(rng, false), near_identity(rng, false), z3, iq) < 1e-10);
    CHECK(cocycle_defect(near_identity(rng), near_identity(rng), z2, nd) < 1e-10);
    CHECK(cocycle_defect(nonnegative(rng), nonnegative(rng), z, quad) < 1e-10);
  }
}

TEST_CASE("the product identity picks the nu d cocycle", "[multiplier][cocycle]") {
  std::mt19937_64 rng(8);
  const auto quad = FamilySpec::quadratic(1.0, 0.2, 0.8);
  std::vector<std::pair<GroupElement, GroupElement>> pairs;
  double printed = 0.0;
  for (int i = 0; i < 20; ++i) {
    pairs.emplace_back(nonnegative(rng), nonnegative(rng));
    printed = std::max(printed, cocycle_defect(pairs.back().first, pairs.back().second, Point(0.1, {0.2}), quad,
                                               QuadraticCocycleVariant::Printed));
  }
  CHECK(select_quadratic_cocycle_variant(quad, pairs, Point(0.1, {0.2})) == QuadraticCocycleVariant::Corrected);
  CHECK(printed > 1e-3);
}

TEST_CASE("two-dimensional modulus for imaginary k", "[multiplier][nls]") {
  const auto spec = FamilySpec::nls2d(cplx(0.0, 1.0), 1.0);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    auto l = near_identity(rng);
    const Point z(0.7, {0.3, -0.4});
    const cplx d = l.a() * z.t + l.b();
    CHECK_THAT(std::norm(multiplier(l, z, spec)) * std::norm(d), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("closed-form coefficients match the integrated system", "[multiplier][oracle]") {
  std::mt19937_64 rng(12);
  const std::vector<double> ts{0.5, 1.0, 1.5};
  auto compare = [&](const GroupElement& l, const FamilySpec& spec) {
    double worst = 0.0;
    for (const auto& p : ode_oracle_coefficients(l, spec, ts)) {
      auto c = multiplier_parts(l, p.t, spec);
      worst = std::max({worst, std::abs(p.A - c.A), std::abs(p.B - c.B), std::abs(p.C - c.C)});
    }
    return worst;
  };
  CHECK(compare(identity_element(), FamilySpec::linear(1.0, 0.3, 0.7)) < 1e-14);
  for (const auto& p : ode_oracle_coefficients(identity_element(), FamilySpec::linear(1.0, 0.3, 0.7), ts)) {
    CHECK(std::abs(p.A) + std::abs(p.B) + std::abs(p.C) < 1e-14);
  }
  CHECK(compare(near_identity(rng), FamilySpec::linear(1.0, 0.3, 0.7)) < 1e-7);
  CHECK(compare(nonnegative(rng), FamilySpec::quadratic(1.0, 0.2, 0.8)) < 1e-6);
}

TEST_CASE("B and C follow from xi and f", "[multiplier]") {
  // B = f'/(2k xi), C = xi'/(4k xi) by central differences.
  std::mt19937_64 rng(14);
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  auto l = near_identity(rng);
  const double t = 0.8, h = 1e-5;
  auto p = multiplier_parts(l, t, spec), pp = multiplier_parts(l, t + h, spec), pm = multiplier_parts(l, t - h, spec);
  const cplx fdot = (pp.f - pm.f) / (2 * h), xidot = (pp.xi - pm.xi) / (2 * h);
  CHECK(std::abs(p.B - fdot / (2.0 * spec.k * p.xi)) < 1e-7);
  CHECK(std::abs(p.C - xidot / (4.0 * spec.k * p.xi)) < 1e-7);
  CHECK(std::abs(p.phidot - p.xi * p.xi) < 1e-14);
}

TEST_CASE("K0 intertwiner at sigma = 1, tau = lam = 0", "[multiplier][k0]") {
  const auto spec = FamilySpec::quadratic(1.0, 0.2, 0.8);
  const double t = 0.3;
  const cplx u = std::exp(4.0 * spec.k * spec.omega * t);
  auto [zp, k0] = K0_intertwiner({1.0, 0.0, 0.0}, Point(t, {0.5}), spec);
  CHECK(std::abs(zp.t - (-1.0 / (4.0 * spec.k * spec.omega * u))) < 1e-15);
  CHECK(std::abs(zp.x[0] - 0.5 / std::sqrt(u)) < 1e-15);
  // log K0 = -k alpha t - (1/4) log u - (omega/2) x^2; the log u term is the
  // Jacobian weight of x' = x / sqrt(u).
  auto [zq, k1] = K0_intertwiner({1.0, 0.0, 0.0}, Point(t, {0.0}), spec);
  CHECK(std::abs(std::log(k1) - (-spec.k * spec.alpha * t - spec.k * spec.omega * t)) < 1e-14);
  CHECK(std::abs(std::log(k0 / k1) - (-spec.omega / 2.0) * 0.25) < 1e-14);
  CHECK_THROWS_AS(K0_intertwiner({0.0, 0.0, 0.0}, Point(t, {0.5}), spec), ZeroParameter);
}
