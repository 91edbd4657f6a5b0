#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "schroedsym/errors.hpp"
#include "schroedsym/group.hpp"

using namespace schroedsym;
using Catch::Matchers::WithinAbs;

namespace {

GroupElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0);
  const double a = u(rng), d = u(rng), b = pos(rng);
  return make_element({(1.0 + a * d) / b, d, a, b}, u(rng), u(rng));
}

}  // namespace

TEST_CASE("make_element validates the determinant", "[group]") {
  CHECK(make_element(Mat2::identity()).distance(identity_element()) == 0.0);
  CHECK_THROWS_AS(make_element({1.0, 0.0, 0.0, 1.1}), DeterminantError);
  CHECK_NOTHROW(make_element({2.0, 0.0, 0.0, 0.5}));
}

TEST_CASE("time translations compose additively", "[group]") {
  auto l = compose(time_translation(0.3), time_translation(-1.1));
  CHECK(l.distance(time_translation(-0.8)) < 1e-15);
}

TEST_CASE("compose with identity and inverse", "[group]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto l = random_element(rng);
    CHECK(compose(l, identity_element()).distance(l) < 1e-15);
    CHECK(compose(identity_element(), l).distance(l) < 1e-15);
    CHECK(compose(l, inverse(l)).distance(identity_element()) < 1e-12);
  }
  auto tr = make_element(Mat2::identity(), 0.4, -0.2);
  auto inv = inverse(tr);
  CHECK_THAT(inv.mu().real(), WithinAbs(-0.4, 1e-15));
  CHECK_THAT(inv.nu().real(), WithinAbs(0.2, 1e-15));
}

TEST_CASE("associativity on random triples", "[group]") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    CHECK(compose(compose(a, b), c).distance(compose(a, compose(b, c))) < 1e-12);
  }
}

TEST_CASE("linear cocycle values", "[group][cocycle]") {
  auto e1 = make_element(Mat2::identity(), 1.0, 0.0);
  auto e2 = make_element(Mat2::identity(), 0.0, 1.0);
  CHECK_THAT(cocycle_linear(e1, e2, 1.0).value.real(), WithinAbs(0.25, 1e-15));
  CHECK(std::abs(cocycle_linear(e1, dilatation(2.0), 1.0).value) == 0.0);
  CHECK_THROWS_AS(cocycle_linear(e1, e2, 0.0), ZeroParameter);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto l1 = random_element(rng), l2 = random_element(rng), l3 = random_element(rng);
    const cplx k = 0.7;
    CHECK(std::abs(cocycle_linear(l1, l2, k).value - cocycle_linear_matrix_form(l1, l2, k).value) < 1e-13);
    const cplx lhs = cocycle_linear(l1, l2, k).value + cocycle_linear(compose(l1, l2), l3, k).value;
    const cplx rhs = cocycle_linear(l2, l3, k).value + cocycle_linear(l1, compose(l2, l3), k).value;
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(std::abs(cocycle_linear(inverse(l2), inverse(l1), k).value + cocycle_linear(l1, l2, k).value) <
          1e-12);
  }
}

TEST_CASE("quadratic cocycle variants differ only through nu a vs nu d", "[group][cocycle]") {
  auto e1 = make_element(Mat2::identity(), 1.0, 0.0);
  auto e2 = make_element(Mat2::identity(), 0.0, 1.0);
  CHECK_THAT(cocycle_quadratic(e1, e2, 1.0).value.real(), WithinAbs(1.0, 1e-15));
  CHECK(std::abs(cocycle_quadratic(e1, dilatation(2.0), 1.0).value) == 0.0);

  // Only the second-term coefficient distinguishes them.
  auto l1 = make_element({2.0, 1.0, 1.0, 1.0}, 0.0, 1.0);
  auto l2 = make_element(Mat2::identity(), 0.0, 1.0);
  const cplx corrected = cocycle_quadratic(l1, l2, 1.0).value;
  const cplx printed = cocycle_quadratic(l1, l2, 1.0, QuadraticCocycleVariant::Printed).value;
  CHECK_THAT(corrected.real(), WithinAbs(-1.0, 1e-15));  // -nu d nu'
  CHECK_THAT(printed.real(), WithinAbs(-1.0, 1e-15));    // -nu a nu', a = d here
  auto l3 = make_element({1.0, 0.0, 2.0, 1.0}, 0.0, 1.0);
  CHECK(std::abs(cocycle_quadratic(l3, l2, 1.0).value - 0.0) < 1e-15);
  CHECK_THAT(cocycle_quadratic(l3, l2, 1.0, QuadraticCocycleVariant::Printed).value.real(),
             WithinAbs(-2.0, 1e-15));
}

TEST_CASE("symplectic invariance", "[group]") {
  std::mt19937_64 rng(9);
  const Mat2 j = symplectic_j();
  for (int i = 0; i < 100; ++i) {
    const Mat2 m = random_element(rng).m();
    CHECK((m.transpose() * j * m).max_abs_diff(j) < 1e-13);
    CHECK((m * j * m.transpose()).max_abs_diff(j) < 1e-13);
  }
}

TEST_CASE("disk parametrization", "[group][disk]") {
  CHECK(disk_parametrize({0.0, 0.0}).m().max_abs_diff(Mat2::identity()) < 1e-15);
  auto rot = disk_parametrize({M_PI / 2, 0.0});
  CHECK(std::abs(rot.b() - cplx(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(rot.m().det() - 1.0) < 1e-15);
  CHECK_THROWS_AS(disk_parametrize({0.0, 1.0}), DomainError);
  auto a = disk_parametrize({0.3, cplx(0.2, -0.4)}, cplx(0.5, 0.1));
  auto b = disk_parametrize({-1.2, cplx(-0.5, 0.3)}, cplx(-0.2, 0.7));
  CHECK(is_disk_element(a));
  CHECK(is_disk_element(compose(a, b)));
  CHECK(std::abs(compose(a, b).m().det() - 1.0) < 1e-12);
}

TEST_CASE("semigroup admissibility", "[group]") {
  CHECK(is_semigroup_admissible(identity_element()));
  CHECK_FALSE(is_semigroup_admissible(make_element({1.0, 0.0, -1.0, 1.0})));
  auto p = make_element({1.5, 1.0, 0.5, 1.0});
  auto q = make_element({1.0, 0.5, 0.2, 1.1});
  CHECK(is_semigroup_admissible(compose(p, q)));
}
