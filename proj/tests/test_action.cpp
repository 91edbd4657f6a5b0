#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "schroedsym/action.hpp"
#include "schroedsym/errors.hpp"

using namespace schroedsym;
using Catch::Matchers::WithinAbs;

namespace {

double dist(const Point& p, const Point& q) {
  double d = std::abs(p.t - q.t);
  for (std::size_t j = 0; j < p.x.size(); ++j) d = std::max(d, std::abs(p.x[j] - q.x[j]));
  return d;
}

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

TEST_CASE("inverse-square action", "[action]") {
  const Point z(0.7, {0.4});
  CHECK(dist(act_inverse_quadratic(Mat2::identity(), z), z) == 0.0);
  CHECK(dist(act_inverse_quadratic({1.0, 0.5, 0.0, 1.0}, z), Point(1.2, {0.4})) < 1e-15);
  CHECK(dist(act_inverse_quadratic({2.0, 0.0, 0.0, 0.5}, z), Point(2.8, {0.8})) < 1e-15);
  CHECK_THROWS_AS(act_inverse_quadratic({1.0, 0.0, 1.0, 2.0}, Point(-2.0, {0.4})), SingularTime);
}

TEST_CASE("linear action", "[action]") {
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  const Point z(0.7, {0.4});
  CHECK(dist(act_linear(identity_element(), z, spec), z) == 0.0);

  // beta = 0, pure translation: x' = x + mu - nu t
  const auto flat = FamilySpec::linear(1.0, 0.3, 0.0);
  auto p = act_linear(make_element(Mat2::identity(), 0.25, 0.5), z, flat);
  CHECK_THAT(p.x[0].real(), WithinAbs(0.4 + 0.25 - 0.5 * 0.7, 1e-15));

  CHECK_THROWS_AS(act_linear(identity_element(), z, FamilySpec::quadratic(1.0, 0.0, 1.0)), FamilyMismatch);
}

TEST_CASE("pairwise differences scale by 1/(at+b) in two dimensions", "[action]") {
  const auto spec = FamilySpec::ndim_linear(1.0, 0.3, 0.5, {{0.0, 2.0}, {2.0, 0.0}});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto l = near_identity(rng);
    const Point z(0.6, {0.3, -0.5});
    auto p = act(l, z, spec);
    CHECK(std::abs((p.x[0] - p.x[1]) - (z.x[0] - z.x[1]) / (l.a() * z.t + l.b())) < 1e-14);
  }
}

TEST_CASE("actions are homomorphisms", "[action]") {
  std::mt19937_64 rng(2);
  const auto lin = FamilySpec::linear(1.0, 0.3, 0.7);
  const auto quad = FamilySpec::quadratic(1.0, 0.2, 0.8);
  for (int i = 0; i < 100; ++i) {
    const Point z(0.2 + 0.01 * i, {0.3 - 0.006 * i});
    auto l1 = near_identity(rng), l2 = near_identity(rng);
    CHECK(dist(act(compose(l1, l2), z, lin), act(l1, act(l2, z, lin), lin)) < 1e-11);
    auto q1 = nonnegative(rng), q2 = nonnegative(rng);
    CHECK(dist(act(compose(q1, q2), z, quad), act(q1, act(q2, z, quad), quad)) < 1e-11);
    const Mat2 m1 = near_identity(rng, false).m(), m2 = near_identity(rng, false).m();
    CHECK(dist(act_inverse_quadratic(m1 * m2, z), act_inverse_quadratic(m1, act_inverse_quadratic(m2, z))) <
          1e-12);
  }
}

TEST_CASE("quadratic action", "[action][quadratic]") {
  const auto spec = FamilySpec::quadratic(1.0, 0.2, 0.8);
  const Point z(0.3, {0.4});
  CHECK(dist(act_quadratic(identity_element(), z, spec), z) < 1e-15);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    auto l = nonnegative(rng);
    CHECK(reality_domain_check(l, 0.3, spec));
    auto p = act_quadratic(l, z, spec);
    CHECK(std::abs(p.t.imag()) < 1e-15);
    CHECK(std::abs(p.x[0].imag()) < 1e-15);
  }

  // a < 0 with large u flips the sign of au + b.
  auto bad = make_element({1.0, 0.0, -0.5, 1.0});
  CHECK_FALSE(reality_domain_check(bad, 1.0, spec));
  CHECK(reality_domain_check(identity_element(), 5.0, spec));
  CHECK_THROWS_AS(act_quadratic(bad, Point(1.0, {0.1}), spec), BranchError);
}

TEST_CASE("imaginary k omega keeps disk elements real", "[action][quadratic]") {
  const auto spec = FamilySpec::quadratic(cplx(0.0, 1.0), 0.2, 0.8);
  auto l = disk_parametrize({0.4, cplx(0.3, -0.2)}, cplx(0.2, 0.1));
  const double t = 0.35;
  REQUIRE(reality_domain_check(l, t, spec));
  auto p = act_quadratic(l, Point(t, {0.5}), spec);
  CHECK(std::abs(p.t.imag()) < 1e-14);
  CHECK(std::abs(p.x[0].imag()) < 1e-14);
  // xi = 1/|au + b|: check it through the x-derivative of x'.
  const cplx u = std::exp(4.0 * spec.k * spec.omega * t);
  auto p2 = act_quadratic(l, Point(t, {0.6}), spec);
  CHECK_THAT((p2.x[0] - p.x[0]).real() / 0.1, WithinAbs(1.0 / std::abs(l.a() * u + l.b()), 1e-12));
}

TEST_CASE("galilean reduction", "[action]") {
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  auto g0 = galilean_params(identity_element(), spec);
  CHECK(std::abs(g0.sigma) == 0.0);
  CHECK(std::abs(g0.v) == 0.0);

  // nu = 0: sigma = mu + k^2 beta lambda^2, v = 2 k^2 beta lambda
  const double lam = 0.4, mu = 0.3;
  auto g = galilean_params(make_element({1.0, lam, 0.0, 1.0}, mu, 0.0), spec);
  CHECK_THAT(g.sigma.real(), WithinAbs(mu + 0.7 * lam * lam, 1e-15));
  CHECK_THAT(g.v.real(), WithinAbs(2.0 * 0.7 * lam, 1e-15));
  CHECK_THROWS_AS(galilean_params(dilatation(2.0), spec), ShapeError);
}

TEST_CASE("drift-frame identity", "[action]") {
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  std::mt19937_64 rng(6);
  const Point z(0.8, {-0.3});
  CHECK(drift_frame_identity_residual(identity_element(), z, spec) == 0.0);
  for (int i = 0; i < 50; ++i) CHECK(drift_frame_identity_residual(near_identity(rng, false), z, spec) < 1e-12);
  CHECK(drift_frame_identity_residual(make_element(Mat2::identity(), 0.5, 0.0), z, spec) > 0.1);
}
