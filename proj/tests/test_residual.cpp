#include <catch2/catch_amalgamated.hpp>

#include "schroedsym/errors.hpp"
#include "schroedsym/residual.hpp"

using namespace schroedsym;

namespace {

SmoothFn exp_t_plus_x() {
  return SmoothFn::from_generic("exp(t+x)", 1, [](const auto& t, auto x) {
    using std::exp;
    return exp(t + x[0]);
  });
}

SmoothFn x_squared() {
  return SmoothFn::from_generic("x^2", 1, [](const auto&, auto x) { return x[0] * x[0]; },
                                Domain::x_positive());
}

GridSpec positive_x_grid() {
  GridSpec g;
  g.x_min = 0.3;
  g.x_max = 1.5;
  return g;
}

}  // namespace

TEST_CASE("analytic residuals", "[residual]") {
  // exp(t + x) solves dt = dx^2 for k = 1
  CHECK(std::abs(residual_at(exp_t_plus_x(), FamilySpec::free(1.0), Point(0.4, {0.2}))) < 1e-14);
  // x^2: dt psi - (psi'' - alpha psi / x^2) = -(2 - alpha)
  const auto iq = FamilySpec::inverse_quadratic(1.0, 0.0);
  CHECK(std::abs(residual_at(x_squared(), iq, Point(0.4, {0.5})) + 2.0) < 1e-14);
  CHECK(std::abs(residual_at(x_squared(), FamilySpec::inverse_quadratic(1.0, 2.0), Point(0.4, {0.5}))) < 1e-14);
}

TEST_CASE("zero function has zero residual", "[residual]") {
  const auto zero = SmoothFn::from_generic("0", 1, [](const auto& t, auto) { return 0.0 * t; });
  const auto r = grid_residual(zero, FamilySpec::linear(1.0, 0.3, 0.7), GridSpec{});
  CHECK(r.max_abs == 0.0);
  CHECK(r.points == 25);
  CHECK(r.failures == 0);
}

TEST_CASE("finite differences converge at second order", "[residual]") {
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  auto [f1, f2] = f_pair(spec);
  GridSpec g;
  g.h_fd = 2e-2;
  const auto r = grid_residual(f2, spec, g, ResidualMode::FiniteDifference);
  REQUIRE(r.convergence_order.has_value());
  CHECK(*r.convergence_order > 1.8);
  CHECK(*r.convergence_order < 2.2);
  const cplx fd = residual_fd(f2, spec, Point(1.0, {0.3}), 1e-3);
  CHECK(std::abs(fd) / std::abs(f2.value(Point(1.0, {0.3}))) < 1e-4);
}

TEST_CASE("grid points keep the stencil inside the domain", "[residual]") {
  GridSpec g;
  g.x_min = 0.0;
  const auto pts = grid_points(g, 1);
  CHECK(pts.size() == 25);
  const auto r = grid_residual(power_static(2.0, 2.0), FamilySpec::inverse_quadratic(1.0, 2.0), g);
  CHECK(r.skipped == 5);
  CHECK(r.points == 20);
  GridSpec bad;
  bad.nt = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("transformed solutions stay solutions", "[residual]") {
  const auto spec = FamilySpec::linear(1.0, 0.3, 0.7);
  auto [f1, f2] = f_pair(spec);
  const auto l = make_element({1.1, 0.2, 0.3, 0.96363636363636362}, 0.4, -0.3);
  CHECK(verify_transformed_solution(f2, l, spec, GridSpec{}).ok(1e-9));

  const auto free = FamilySpec::free(1.0);
  const auto g = make_element({1.0, 0.1, 0.2, 1.02}, 0.0, 0.0);
  CHECK(verify_transformed_solution(gaussian_free(1.0, 0.0), g, free, GridSpec{}).ok(1e-9));
}

TEST_CASE("intertwining holds for arbitrary functions", "[residual]") {
  const auto l = make_element({1.1, 0.2, 0.3, 0.96363636363636362}, 0.4, -0.3);
  for (const auto& spec : {FamilySpec::free(1.0), FamilySpec::linear(1.0, 0.3, 0.7), FamilySpec::quadratic(1.0, 0.2, 0.8)}) {
    const auto r = verify_intertwining(exp_t_plus_x(), l, spec, GridSpec{});
    CHECK(r.failures == 0);
    CHECK(r.max_rel < 1e-10);
  }
  const auto iq = FamilySpec::inverse_quadratic(1.0, 0.0);
  const auto d = make_element({1.0, 0.0, 0.2, 1.0}, 0.0, 0.0);
  const auto r = verify_intertwining(x_squared(), d, iq, positive_x_grid());
  CHECK(r.points > 0);
  CHECK(r.max_rel < 1e-10);
  CHECK_THROWS_AS(verify_intertwining(exp_t_plus_x(), l, FamilySpec::nls2d(cplx(0.0, 1.0), 1.0), GridSpec{}),
                  FamilyMismatch);
}

TEST_CASE("maps between equations", "[residual][maps]") {
  const auto free = FamilySpec::free(1.0);
  const auto lin = FamilySpec::linear(1.0, 0.3, 0.7);
  const auto heat = gaussian_free(1.0, 0.0);
  CHECK(verify_solution_map(heat, SolutionMap::F1, {}, free, lin, GridSpec{}).ok(1e-9));
  CHECK(verify_solution_map(heat, SolutionMap::F2, {}, free, lin, GridSpec{}).ok(1e-9));

  auto [f1, f2] = f_pair(lin);
  CHECK(verify_solution_map(f2, SolutionMap::Phi1, {}, lin, free, GridSpec{}).ok(1e-9));
  CHECK(verify_solution_map(f2, SolutionMap::Phi2, {}, lin, free, GridSpec{}).ok(1e-9));

  const auto quad = FamilySpec::quadratic(1.0, 0.2, 0.8);
  CHECK(verify_solution_map(heat, SolutionMap::K0, {1.0, 0.0, 0.0}, free, quad, GridSpec{}).ok(1e-9));

  CHECK(solution_map_from_string(to_string(SolutionMap::Phi2)) == SolutionMap::Phi2);
  CHECK_THROWS_AS(solution_map_from_string("nope"), ConfigError);
}

TEST_CASE("forward and inverse maps round trip up to a constant", "[residual][maps]") {
  const auto lin = FamilySpec::linear(1.0, 0.3, 0.7);
  const auto heat = gaussian_free(1.0, 0.0);
  CHECK(round_trip_deviation(heat, SolutionMap::F1, SolutionMap::Phi1, lin, GridSpec{}) < 1e-10);
  CHECK(round_trip_deviation(heat, SolutionMap::F2, SolutionMap::Phi2, lin, GridSpec{}) < 1e-10);
  CHECK(round_trip_deviation(heat, SolutionMap::F1, SolutionMap::Phi1, lin, GridSpec{}, PhiCoefficients::Printed) >
        1e-6);
}
