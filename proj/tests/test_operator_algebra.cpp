#include <catch2/catch_amalgamated.hpp>

#include "schroedsym/errors.hpp"
#include "schroedsym/operator_algebra.hpp"
#include "schroedsym/solutions.hpp"

using namespace schroedsym;

namespace {

using P = LaurentPoly2;

DiffOp dx(Chart c) { return DiffOp::term(c, P(1.0), 0, 1); }
DiffOp dt(Chart c) { return DiffOp::term(c, P(1.0), 1, 0); }
DiffOp mul(Chart c, const P& p) { return DiffOp::multiplication(c, p); }

bool zero(const DiffOp& a, double tol = 1e-13) { return a.equals(DiffOp(a.chart()), tol); }

}  // namespace

TEST_CASE("laurent polynomial arithmetic", "[liealg]") {
  const P s = P::var1(), x = P::var2();
  const P p = P::monomial(2.0, 1, 1) + P(3.0);
  CHECK((p * P(1.0)).max_abs_diff(p) == 0.0);
  CHECK((s * s * x).derive(0).max_abs_diff(P::monomial(2.0, 1, 1)) == 0.0);
  const P sinv = P::monomial(1.0, -1, 0);
  CHECK(sinv.derive(0).max_abs_diff(P::monomial(-1.0, -2, 0)) == 0.0);
  const P sq = (s + sinv) * (s + sinv);
  CHECK(sq.max_abs_diff(P::monomial(1.0, 2, 0) + P(2.0) + P::monomial(1.0, -2, 0)) == 0.0);
  CHECK((p - p).is_zero());
  CHECK(std::abs(p.evaluate(2.0, 0.5) - 5.0) < 1e-15);
}

TEST_CASE("operator composition uses the Leibniz rule", "[liealg]") {
  const Chart c{};
  const P x = P::var2();
  // dx x = x dx + 1
  CHECK(op_compose(dx(c), mul(c, x)).max_abs_diff(mul(c, x) * dx(c) + mul(c, 1.0)) == 0.0);
  // (dx + x)^2 = dx^2 + 2 x dx + x^2 + 1
  const DiffOp a = dx(c) + mul(c, x);
  const DiffOp expect = DiffOp::term(c, 1.0, 0, 2) + DiffOp::term(c, 2.0 * x, 0, 1) + mul(c, x * x + P(1.0));
  CHECK((a * a).max_abs_diff(expect) < 1e-15);
  // associativity on a mixed triple
  const DiffOp b = mul(c, P::var1() * x) * dt(c);
  const DiffOp d = dx(c) * dx(c) + mul(c, P::monomial(0.5, 2, 0));
  CHECK(((a * b) * d).max_abs_diff(a * (b * d)) < 1e-13);
  CHECK(zero(op_commutator(a, a)));
}

TEST_CASE("operators in different charts do not mix", "[liealg]") {
  const auto lin = generators_linear(1.0, 0.3, 0.7);
  const auto quad = generators_quadratic(1.0, 0.3, 0.8);
  CHECK_THROWS_AS(lin.T1 * quad.T1, FamilyMismatch);
  CHECK_THROWS_AS(intertwine_check(lin, quad.K), FamilyMismatch);
  CHECK_THROWS_AS(generators_linear(0.0, 0.3, 0.7), ZeroParameter);
  CHECK_THROWS_AS(generators_quadratic(1.0, 0.3, 0.0), ZeroParameter);
}

namespace {

void check_commutation_table(const GeneratorSet& g) {
  const auto c = [](const DiffOp& a, const DiffOp& b) { return op_commutator(a, b); };
  CHECK(c(g.L3, g.Lplus).max_abs_diff(g.Lplus) < 1e-13);
  CHECK(c(g.L3, g.Lminus).max_abs_diff(-1.0 * g.Lminus) < 1e-13);
  CHECK(c(g.Lplus, g.Lminus).max_abs_diff(-2.0 * g.L3) < 1e-13);
  CHECK(c(g.L3, g.T1).max_abs_diff(0.5 * g.T1) < 1e-13);
  CHECK(c(g.L3, g.T2).max_abs_diff(-0.5 * g.T2) < 1e-13);
  CHECK(zero(c(g.Lplus, g.T1)));
  CHECK(zero(c(g.Lminus, g.T2)));
  CHECK(c(g.Lplus, g.T2).max_abs_diff(g.T1) < 1e-13);
  CHECK(c(g.Lminus, g.T1).max_abs_diff(-1.0 * g.T2) < 1e-13);
  CHECK(c(g.T1, g.T2).max_abs_diff(g.t_bracket * g.unit) < 1e-13);
  for (const DiffOp* a : {&g.L3, &g.Lplus, &g.Lminus, &g.T1, &g.T2}) CHECK(zero(c(*a, g.unit)));

  CHECK(casimir_I3(g).max_abs_diff((3.0 / 16.0) * g.unit) < 1e-12);
  CHECK(zero(c(casimir_I2(g), g.L3), 1e-12));
  CHECK(zero(c(casimir_I3(g), g.T1), 1e-12));
  CHECK(intertwine_check(g, g.K));
  CHECK_FALSE(intertwine_check(g, g.K + 1e-3 * g.unit));
}

}  // namespace

TEST_CASE("linear family generators", "[liealg][linear]") {
  const auto g = generators_linear(1.0, 0.3, 0.7);
  check_commutation_table(g);
  const cplx k = g.params.k;
  const double b = g.params.beta;
  CHECK(std::abs(g.t_bracket - 1.0 / (2.0 * k)) < 1e-15);
  CHECK(g.K.max_abs_diff(g.Lplus - k * (g.T1 * g.T1)) < 1e-13);
  CHECK(g.D.max_abs_diff(g.Lplus - 2.0 * k * k * b * g.T2 - k * g.params.alpha * g.unit) < 1e-13);
  const P xi = P::var2() - P::monomial(k * k * b, 2, 0);
  CHECK((casimir_I2(g) - (3.0 / 16.0) * g.unit).max_abs_diff(P(1.0 / (4.0 * k)) * xi * xi * g.K) < 1e-12);

  const auto g2 = generators_linear(cplx(0.0, -0.5), 0.0, 1.0);
  check_commutation_table(g2);
}

TEST_CASE("quadratic family generators", "[liealg][quadratic]") {
  const auto g = generators_quadratic(1.0, 0.3, 0.8);
  check_commutation_table(g);
  const cplx k = g.params.k, w = g.params.omega;
  CHECK(g.K.max_abs_diff(-4.0 * k * w * g.L3 - (k / 2.0) * (g.T1 * g.T2 + g.T2 * g.T1)) < 1e-13);
  CHECK(g.D.max_abs_diff(-4.0 * k * w * g.L3 - k * g.params.alpha * g.unit) < 1e-13);
  CHECK((casimir_I2(g) - (3.0 / 16.0) * g.unit).max_abs_diff(P(1.0 / (4.0 * k)) * P::monomial(1.0, 0, 2) * g.K) <
        1e-12);
}

TEST_CASE("generators act on closed-form solutions as eigenoperators", "[liealg]") {
  const Point z(0.7, {0.4});
  const auto g = generators_linear(1.0, 0.3, 0.7);
  auto [f1, f2] = f_pair(g.params);
  CHECK(std::abs(apply(g.L3, f1, z) + 0.25 * f1.value(z)) < 1e-10);
  CHECK(std::abs(apply(g.L3, f2, z) - 0.25 * f2.value(z)) < 1e-10);
  CHECK(std::abs(apply(g.K, f1, z)) < 1e-10);
  CHECK(std::abs(apply(casimir_I2(g), f2, z) - (3.0 / 16.0) * f2.value(z)) < 1e-10);

  const auto q = generators_quadratic(1.0, 0.3, 0.8);
  auto [g1, g2, g3] = g_functions(q.params, 0.5);
  CHECK(std::abs(apply(q.L3, g1, z) + 0.25 * g1.value(z)) < 1e-10);
  CHECK(std::abs(apply(q.Lplus, g1, z)) < 1e-10);
  CHECK(std::abs(apply(q.L3, g2, z) - 0.25 * g2.value(z)) < 1e-10);
  CHECK(std::abs(apply(q.Lminus, g2, z)) < 1e-10);
  CHECK(std::abs(apply(q.T2, g3, z) + 0.5 * g3.value(z)) < 1e-10);
  CHECK(std::abs(apply(q.K, g3, z)) < 1e-10);
}

TEST_CASE("apply rejects operators beyond the jet order", "[liealg]") {
  const auto g = generators_linear(1.0, 0.3, 0.7);
  auto [f1, f2] = f_pair(g.params);
  const DiffOp high = DiffOp::term(g.chart, 1.0, 0, 5);
  CHECK_THROWS_AS(apply(high, f1, Point(0.7, {0.4})), OrderError);
}
