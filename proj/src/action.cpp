#include "schroedsym/action.hpp"

#include <algorithm>
#include <cmath>

#include "schroedsym/detail/formulas.hpp"
#include "schroedsym/errors.hpp"

namespace schroedsym {

Point act_inverse_quadratic(const Mat2& m, const Point& z) {
  const auto lt = detail::linear_time(m, z.t);
  Point out;
  out.t = lt.tp;
  out.x.reserve(z.x.size());
  for (const cplx& xj : z.x) out.x.push_back(xj / lt.denom);
  return out;
}

Point act_linear(const GroupElement& l, const Point& z, const FamilySpec& spec) {
  double beta = 0.0;
  switch (spec.family) {
    case Family::Linear:
    case Family::NdimLinear:
      beta = spec.beta;
      break;
    case Family::Free:
    case Family::NLS2d:
      break;
    default:
      throw FamilyMismatch("act_linear needs a linear-type family");
  }
  const auto lt = detail::linear_time(l.m(), z.t);
  const cplx shift = detail::linear_shift(l, z.t, lt, spec.k, beta);
  Point out;
  out.t = lt.tp;
  out.x.reserve(z.x.size());
  for (const cplx& xj : z.x) out.x.push_back(xj / lt.denom + shift);
  return out;
}

Point act_quadratic(const GroupElement& l, const Point& z, const FamilySpec& spec) {
  if (spec.family != Family::Quadratic) throw FamilyMismatch("act_quadratic needs the quadratic family");
  if (z.dim() != 1) throw DomainError("the quadratic family is one-dimensional");
  const auto q = detail::quadratic_time(l, z.t, spec.k, spec.omega);
  return Point(q.tp, {q.xi * z.x[0] + q.f});
}

Point act(const GroupElement& l, const Point& z, const FamilySpec& spec) {
  switch (spec.family) {
    case Family::InverseQuadratic:
      if (l.mu() != cplx(0.0) || l.nu() != cplx(0.0)) {
        throw DomainError("the inverse-quadratic family acts through SL(2) only");
      }
      return act_inverse_quadratic(l.m(), z);
    case Family::Quadratic:
      return act_quadratic(l, z, spec);
    default:
      return act_linear(l, z, spec);
  }
}

GalileanData galilean_params(const GroupElement& l, const FamilySpec& spec) {
  constexpr double tol = 1e-14;
  if (std::abs(l.c() - 1.0) > tol || std::abs(l.a()) > tol || std::abs(l.b() - 1.0) > tol) {
    throw ShapeError("expected c = 1, a = 0, b = 1");
  }
  const cplx lam = l.d();
  const cplx k2b = spec.k * spec.k * spec.beta;
  return {l.mu() - l.nu() * lam + k2b * lam * lam, 2.0 * k2b * lam - l.nu(), lam};
}

double drift_frame_identity_residual(const GroupElement& l, const Point& z,
                                     const FamilySpec& spec) {
  const Point zp = act_linear(l, z, spec);
  const cplx k2b = spec.k * spec.k * spec.beta;
  const cplx denom = l.a() * z.t + l.b();
  double worst = 0.0;
  for (std::size_t j = 0; j < z.x.size(); ++j) {
    const cplx lhs = zp.x[j] - k2b * zp.t * zp.t;
    const cplx rhs = (z.x[j] - k2b * z.t * z.t) / denom;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

bool reality_domain_check(const GroupElement& l, double t, const FamilySpec& spec) {
  const cplx kw = spec.k * spec.omega;
  if (detail::kw_is_real(spec.k, spec.omega)) {
    const cplx u = std::exp(4.0 * kw * t);
    const cplx ea = l.a() * u + l.b();
    const cplx ec = l.c() * u + l.d();
    constexpr double tol = 1e-12;
    if (std::abs(ea.imag()) > tol * std::max(1.0, std::abs(ea))) return false;
    if (std::abs(ec.imag()) > tol * std::max(1.0, std::abs(ec))) return false;
    return ea.real() * ec.real() > 0.0;
  }
  if (std::abs(kw.real()) <= 1e-14 * std::abs(kw)) return is_disk_element(l);
  return false;
}

}  // namespace schroedsym
