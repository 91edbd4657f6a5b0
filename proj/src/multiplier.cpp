#include "schroedsym/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "schroedsym/action.hpp"
#include "schroedsym/detail/formulas.hpp"
#include "schroedsym/errors.hpp"

namespace schroedsym {

namespace {

bool linear_type(Family f) {
  return f == Family::Free || f == Family::NLS2d || f == Family::Linear ||
         f == Family::NdimLinear || f == Family::InverseQuadratic;
}

double alpha_of(const FamilySpec& s) {
  return s.family == Family::Linear || s.family == Family::NdimLinear ||
                 s.family == Family::Quadratic
             ? s.alpha
             : 0.0;
}

double beta_of(const FamilySpec& s) {
  return s.family == Family::Linear || s.family == Family::NdimLinear ? s.beta : 0.0;
}

}  // namespace

cplx K_inverse_quadratic(const Mat2& m, const Point& z, cplx k, int n) {
  if (k == cplx(0.0)) throw ZeroParameter("k must be non-zero");
  const auto lt = detail::linear_time(m, z.t);
  cplx r2 = 0.0;
  for (const cplx& xj : z.x) r2 += xj * xj;
  return detail::guarded_exp(-(n / 2.0) * std::log(lt.denom) - m.a * r2 / (4.0 * k * lt.denom));
}

cplx K_linear(const GroupElement& l, const Point& z, const FamilySpec& spec) {
  if (z.dim() != 1) throw DomainError("K_linear is one-dimensional; use K_ndim");
  return K_ndim(l, z, spec);
}

cplx K_ndim(const GroupElement& l, const Point& z, const FamilySpec& spec) {
  if (!linear_type(spec.family) || spec.family == Family::InverseQuadratic) {
    throw FamilyMismatch("linear-type family expected");
  }
  return detail::transform<cplx>(l, z.t, z.x, spec).K;
}

cplx K_quadratic(const GroupElement& l, const Point& z, const FamilySpec& spec) {
  if (spec.family != Family::Quadratic) throw FamilyMismatch("quadratic family expected");
  return detail::transform<cplx>(l, z.t, z.x, spec).K;
}

cplx multiplier(const GroupElement& l, const Point& z, const FamilySpec& spec) {
  return detail::transform<cplx>(l, z.t, z.x, spec).K;
}

MultiplierParts multiplier_parts(const GroupElement& l, double t, const FamilySpec& spec) {
  MultiplierParts p;
  p.t = t;
  const cplx tc = t;
  if (spec.family == Family::Quadratic) {
    const auto q = detail::quadratic_time(l, tc, spec.k, spec.omega);
    const auto co = detail::quadratic_coefficients(l, tc, q, spec.k, spec.alpha, spec.omega);
    p.A = co.A;
    p.B = co.B;
    p.C = co.C;
    p.xi = q.xi;
    p.f = q.f;
    p.phidot = q.xi * q.xi;
    return p;
  }
  const auto lt = detail::linear_time(l.m(), tc);
  const auto co = detail::linear_coefficients(l, tc, lt, spec.k, alpha_of(spec), beta_of(spec));
  p.A = co.A;
  p.B = co.B;
  p.C = co.C;
  p.xi = 1.0 / lt.denom;
  p.f = detail::linear_shift(l, tc, lt, spec.k, beta_of(spec));
  p.phidot = p.xi * p.xi;
  return p;
}

std::pair<Point, cplx> K0_intertwiner(const IntertwinerParams& p, const Point& z,
                                      const FamilySpec& spec) {
  if (p.sigma == cplx(0.0)) throw ZeroParameter("sigma must be non-zero");
  if (z.dim() != 1) throw DomainError("the quadratic family is one-dimensional");
  const auto m =
      detail::intertwiner_map(p.sigma, p.tau, p.lam, z.t, z.x[0], spec.k, spec.alpha, spec.omega);
  return {Point(m.tp, {m.xp}), m.K};
}

namespace {

struct AbcState {
  cplx A, B, C;
};

// Right-hand side of the structure equations for (A, B, C).
AbcState abc_rhs(const GroupElement& l, const FamilySpec& spec, double t, const AbcState& s) {
  const cplx k = spec.k;
  const cplx alpha = alpha_of(spec);
  if (spec.family == Family::Quadratic) {
    const auto q = detail::quadratic_time(l, cplx(t), k, spec.omega);
    const cplx w2 = spec.omega * spec.omega;
    const cplx xi = q.xi, f = q.f, xi2 = xi * xi;
    return {k * (s.B * s.B + 2.0 * s.C) + k * alpha * (xi2 - 1.0) + k * w2 * xi2 * f * f,
            4.0 * k * s.B * s.C + 2.0 * k * w2 * xi2 * xi * f,
            4.0 * k * s.C * s.C + k * w2 * (xi2 * xi2 - 1.0)};
  }
  const cplx beta = beta_of(spec);
  const auto lt = detail::linear_time(l.m(), cplx(t));
  const cplx xi = 1.0 / lt.denom, xi2 = xi * xi;
  const cplx f = detail::linear_shift(l, cplx(t), lt, k, beta.real());
  return {k * (s.B * s.B + 2.0 * s.C) + k * alpha * (xi2 - 1.0) + k * beta * xi2 * f,
          4.0 * k * s.B * s.C + k * beta * (xi2 * xi - 1.0), 4.0 * k * s.C * s.C};
}

AbcState axpy(const AbcState& s, cplx h, const AbcState& d) {
  return {s.A + h * d.A, s.B + h * d.B, s.C + h * d.C};
}

}  // namespace

std::vector<MultiplierParts> ode_oracle_coefficients(const GroupElement& l,
                                                     const FamilySpec& spec,
                                                     const std::vector<double>& t_grid) {
  constexpr double max_step = 1e-4;
  std::vector<MultiplierParts> out(t_grid.size());
  if (t_grid.empty()) return out;
  std::vector<std::size_t> order(t_grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return t_grid[i] < t_grid[j]; });

  const double t0 = t_grid[order.front()];
  const MultiplierParts start = multiplier_parts(l, t0, spec);
  AbcState s{start.A, start.B, start.C};
  double t = t0;
  for (std::size_t idx : order) {
    const double target = t_grid[idx];
    const auto steps = static_cast<long>(std::ceil((target - t) / max_step));
    if (steps > 0) {
      const double h = (target - t) / static_cast<double>(steps);
      for (long n = 0; n < steps; ++n) {
        const AbcState k1 = abc_rhs(l, spec, t, s);
        const AbcState k2 = abc_rhs(l, spec, t + h / 2, axpy(s, h / 2, k1));
        const AbcState k3 = abc_rhs(l, spec, t + h / 2, axpy(s, h / 2, k2));
        const AbcState k4 = abc_rhs(l, spec, t + h, axpy(s, h, k3));
        s = {s.A + h / 6 * (k1.A + 2.0 * k2.A + 2.0 * k3.A + k4.A),
             s.B + h / 6 * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B),
             s.C + h / 6 * (k1.C + 2.0 * k2.C + 2.0 * k3.C + k4.C)};
        t += h;
        if (!std::isfinite(std::abs(s.A)) || !std::isfinite(std::abs(s.B)) ||
            !std::isfinite(std::abs(s.C))) {
          throw IntegrationError("non-finite value while integrating the multiplier equations");
        }
      }
      t = target;
    }
    MultiplierParts p = multiplier_parts(l, target, spec);
    p.A = s.A;
    p.B = s.B;
    p.C = s.C;
    out[idx] = p;
  }
  return out;
}

cplx cocycle_factor(const GroupElement& l1, const GroupElement& l2, const FamilySpec& spec,
                    QuadraticCocycleVariant variant) {
  switch (spec.family) {
    case Family::InverseQuadratic:
      return 1.0;
    case Family::Quadratic:
      return std::exp(cocycle_quadratic(l1, l2, spec.omega, variant).value);
    default:
      return std::exp(static_cast<double>(spec.n) * cocycle_linear(l1, l2, spec.k).value);
  }
}

double cocycle_defect(const GroupElement& l1, const GroupElement& l2, const Point& z,
                      const FamilySpec& spec, QuadraticCocycleVariant variant) {
  const cplx lhs = multiplier(l2, z, spec) * multiplier(l1, act(l2, z, spec), spec);
  const cplx rhs = cocycle_factor(l1, l2, spec, variant) * multiplier(compose(l1, l2), z, spec);
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

QuadraticCocycleVariant select_quadratic_cocycle_variant(
    const FamilySpec& spec, const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
    const Point& z) {
  double worst_corrected = 0.0, worst_printed = 0.0;
  for (const auto& [l1, l2] : pairs) {
    worst_corrected = std::max(
        worst_corrected, cocycle_defect(l1, l2, z, spec, QuadraticCocycleVariant::Corrected));
    worst_printed = std::max(worst_printed,
                             cocycle_defect(l1, l2, z, spec, QuadraticCocycleVariant::Printed));
  }
  return worst_printed < worst_corrected ? QuadraticCocycleVariant::Printed
                                         : QuadraticCocycleVariant::Corrected;
}

}  // namespace schroedsym
