#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "schroedsym/errors.hpp"
#include "schroedsym/residual.hpp"
#include "schroedsym/solutions.hpp"

using namespace schroedsym;
using Catch::Matchers::WithinAbs;

namespace {

double rel_residual(const SmoothFn& fn, const FamilySpec& spec, const Point& z) {
  return std::abs(residual_at(fn, spec, z)) / std::abs(fn.value(z));
}

}  // namespace

TEST_CASE("heat kernel", "[solutions]") {
  const auto fn = gaussian_free(1.0, 0.0);
  CHECK(rel_residual(fn, FamilySpec::free(1.0), Point(1.0, {0.5})) < 1e-12);
  CHECK(std::abs(fn.value(Point(1.0, {0.5})) - fn.value(Point(1.0, {-0.5}))) < 1e-16);
  const cplx k(0.0, -0.5);
  CHECK(rel_residual(gaussian_free(k, 0.0), FamilySpec::free(k), Point(0.8, {0.3})) < 1e-12);
  CHECK(rel_residual(gaussian_free(1.0, 0.5, 3), FamilySpec::free(1.0, 3), Point(0.8, {0.3, -0.2, 0.1})) < 1e-12);
  CHECK_THROWS_AS(fn.value(Point(0.0, {0.5})), DomainError);
}

TEST_CASE("static power solutions", "[solutions]") {
  CHECK(rel_residual(power_static(1.0, 0.0), FamilySpec::inverse_quadratic(1.0, 0.0), Point(0.3, {0.7})) < 1e-14);
  CHECK(rel_residual(power_static(2.0, 2.0), FamilySpec::inverse_quadratic(1.0, 2.0), Point(0.3, {0.7})) < 1e-14);
  CHECK_THROWS_AS(power_static(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(power_static(2.0, 2.0).value(Point(0.3, {-0.7})), DomainError);
}

TEST_CASE("theta function", "[solutions][theta]") {
  const auto th = theta1(20);
  const auto spec = FamilySpec::free(theta_k());
  CHECK(rel_residual(th, spec, Point(cplx(0.0, 1.0), {0.3})) < 1e-10);
  const Point z(cplx(0.1, 0.9), {0.37});
  const Point zm(cplx(0.1, 0.9), {-0.37});
  CHECK(std::abs(th.value(z) + th.value(zm)) < 1e-14);
  CHECK_THROWS_AS(theta1(5), DomainError);
  CHECK_THROWS_AS(th.value(Point(cplx(0.0, -1.0), {0.3})), DomainError);
  CHECK(theta1_tail_bound(20, cplx(0.0, 1.0), 0.3) < 1e-12);

  for (const Mat2& m : {Mat2{0, -1, 1, 0}, Mat2{1, 1, 0, 1}, Mat2{2, 1, 1, 1}}) {
    const cplx e = theta1_modular_phase(m, cplx(0.1, 1.0), 0.3);
    CHECK(std::abs(std::pow(e, 8) - 1.0) < 1e-8);
    CHECK(std::abs(e - theta1_modular_phase(m, cplx(-0.3, 0.7), 0.6)) < 1e-8);
  }
}

TEST_CASE("f pair", "[solutions][linear]") {
  const auto spec = FamilySpec::linear(1.0, 0.0, 1.0);
  auto [f1, f2] = f_pair(spec);
  CHECK(rel_residual(f1, spec, Point(1.0, {0.7})) < 1e-12);
  CHECK(rel_residual(f2, spec, Point(1.0, {0.7})) < 1e-12);

  const auto flat = FamilySpec::linear(1.0, 0.4, 0.0);
  auto [g1, g2] = f_pair(flat);
  CHECK(std::abs(g1.value(Point(0.8, {0.3})) - std::exp(-0.4 * 0.8)) < 1e-15);
}

TEST_CASE("f1 is invariant under the two-parameter abelian subgroup", "[solutions][linear]") {
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  auto [f1, f2] = f_pair(spec);
  const auto l0 = make_element({1.0, 0.4, 0.0, 1.0}, 0.3, 0.0);
  const auto moved = transformed_solution(f1, l0, spec);
  for (double x : {-0.5, 0.1, 0.8}) {
    const Point z(0.9, {x});
    CHECK(std::abs(moved.value(z) / f1.value(z) - 1.0) < 1e-13);
  }
}

TEST_CASE("phi pair coefficients", "[solutions][linear]") {
  const auto spec = FamilySpec::linear(1.3, 0.2, 0.6);
  const cplx k = spec.k;
  const double b = spec.beta;
  CHECK(std::abs(phi1_exp_poly(spec).coefficient(3, 0) - (2.0 / 3.0) * k * k * k * b * b) < 1e-15);
  CHECK(std::abs(phi1_exp_poly(spec, PhiCoefficients::Printed).coefficient(3, 0) - (2.0 / 3.0) * k * k * b * b * b) <
        1e-15);

  const auto flat = FamilySpec::linear(1.0, 0.4, 0.0);
  auto [f1, f2] = f_pair(flat);
  auto [p1, p2] = phi_pair(flat);
  const Point z(0.8, {0.3});
  CHECK(std::abs(p1.value(z) * f1.value(z) - 1.0) < 1e-15);
}

TEST_CASE("harmonic family functions", "[solutions][quadratic]") {
  const auto spec = FamilySpec::quadratic(1.0, 0.0, 1.0);
  auto [g1, g2, g3] = g_functions(spec, 0.5);
  const Point z(0.2, {0.4});
  CHECK(rel_residual(g2, spec, z) < 1e-12);
  CHECK(rel_residual(g1, spec, z) < 1e-12);
  CHECK(rel_residual(g3, spec, z) < 1e-12);
  auto [h1, h2, h3] = g_functions(spec, 0.0);
  CHECK(std::abs(h3.value(z) - g2.value(z)) < 1e-16);
  // ground-state shape exp(-omega x^2 / 2) at fixed t
  CHECK(std::abs(g2.value(Point(0.2, {0.9})) / g2.value(Point(0.2, {0.0})) - std::exp(-0.5 * 0.81)) < 1e-15);
}

TEST_CASE("airy bound states", "[solutions][airy]") {
  const auto spec = AirySpec::with_energy(1.0, 1.0);
  const auto u = airy_u(spec);
  const Jet4 j = u.jet(Point(0.0, {2.0}), 0);
  CHECK(std::abs(-j.partial(0, 2) + (spec.beta * 2.0 - spec.E) * j.value()) < 1e-6);
  CHECK(std::abs(u.value(Point(0.0, {10.0}))) < 1e-6);

  const auto r1 = eigenvalue_scan(spec, 1.0, 3.0);
  const auto r2 = eigenvalue_scan(spec, 3.0, 5.0);
  REQUIRE(r1.size() == 1);
  REQUIRE(r2.size() == 1);
  CHECK_THAT(r1[0], WithinAbs(2.338107410459767, 1e-3));
  CHECK_THAT(r2[0], WithinAbs(4.087949444130971, 1e-3));
  CHECK_THROWS_AS(eigenvalue_scan(spec, 0.5, 2.0), NoRootError);
  CHECK_THROWS_AS(airy_u(AirySpec::with_energy(-1.0, 1.0)), DomainError);
}

TEST_CASE("nonlinear plane wave", "[solutions][nls]") {
  const auto spec = FamilySpec::nls2d(cplx(0.0, 1.0), 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto pw = plane_wave_nls(0.7, {0.3, -0.2}, spec);
  for (int i = 0; i < 10; ++i) {
    const Point z(0.5 + 0.1 * i, {u(rng), u(rng)});
    CHECK(rel_residual(pw, spec, z) < 1e-12);
  }
  const auto zero = plane_wave_nls(0.0, {0.3, -0.2}, spec);
  CHECK(std::abs(residual_at(zero, spec, Point(0.5, {0.1, 0.2}))) == 0.0);
}

TEST_CASE("two-body product solution", "[solutions][ndim]") {
  const auto spec = FamilySpec::ndim_linear(1.0, 0.3, 0.5, {{0.0, 2.0}, {2.0, 0.0}});
  const auto fn = pair_product_solution(spec, 2.0);
  CHECK(rel_residual(fn, spec, Point(0.7, {0.5, -0.4})) < 1e-12);
  CHECK_THROWS_AS(fn.value(Point(0.7, {-0.5, 0.4})), DomainError);
}

TEST_CASE("mixed partials are symmetric", "[solutions]") {
  // d/dt d/dx from one jet against finite differences of the x-partial in t.
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  auto [f1, f2] = f_pair(spec);
  const Point z(0.9, {0.4});
  const double h = 1e-5;
  const cplx fd = (f2.partial(Point(0.9 + h, {0.4}), 0, 0, 1) - f2.partial(Point(0.9 - h, {0.4}), 0, 0, 1)) / (2 * h);
  CHECK(std::abs(f2.partial(z, 1, 0, 1) - fd) / std::abs(fd) < 1e-8);
}
