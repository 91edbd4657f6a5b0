#include "schroedsym/group.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schroedsym/errors.hpp"

namespace schroedsym {

bool Mat2::is_real(double tol) const {
  return std::abs(a.imag()) <= tol && std::abs(b.imag()) <= tol && std::abs(c.imag()) <= tol &&
         std::abs(d.imag()) <= tol;
}

double Mat2::max_abs_diff(const Mat2& o) const {
  return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d)});
}

bool GroupElement::is_real(double tol) const {
  return m_.is_real(tol) && std::abs(mu_.imag()) <= tol && std::abs(nu_.imag()) <= tol;
}

double GroupElement::distance(const GroupElement& o) const {
  return std::max({m_.max_abs_diff(o.m_), std::abs(mu_ - o.mu_), std::abs(nu_ - o.nu_)});
}

GroupElement make_element(const Mat2& m, cplx mu, cplx nu) {
  const double err = std::abs(m.det() - 1.0);
  if (!(err <= kDetTolerance)) {
    throw DeterminantError("det M = cb - ad deviates from 1 by " + std::to_string(err));
  }
  return make_element_unchecked(m, mu, nu);
}

GroupElement make_element_unchecked(const Mat2& m, cplx mu, cplx nu) {
  GroupElement g;
  g.m_ = m;
  g.mu_ = mu;
  g.nu_ = nu;
  return g;
}

GroupElement identity_element() { return GroupElement{}; }

GroupElement time_translation(cplx lambda) { return make_element({1.0, lambda, 0.0, 1.0}); }

GroupElement dilatation(cplx c) {
  if (c == cplx(0.0)) throw ZeroParameter("dilatation factor must be non-zero");
  return make_element({c, 0.0, 0.0, 1.0 / c});
}

GroupElement compose(const GroupElement& l1, const GroupElement& l2) {
  const Mat2& m = l1.m();
  return make_element_unchecked(m * l2.m(), l1.mu() + m.c * l2.mu() + m.d * l2.nu(),
                                l1.nu() + m.a * l2.mu() + m.b * l2.nu());
}

GroupElement inverse(const GroupElement& l) {
  const Mat2 mi = l.m().inverse();
  return make_element_unchecked(mi, -(mi.c * l.mu() + mi.d * l.nu()),
                                -(mi.a * l.mu() + mi.b * l.nu()));
}

CocycleValue cocycle_linear(const GroupElement& l1, const GroupElement& l2, cplx k) {
  if (k == cplx(0.0)) throw ZeroParameter("k must be non-zero");
  const cplx mu = l1.mu(), nu = l1.nu();
  return {((mu * l1.a() - nu * l1.c()) * l2.mu() + (mu * l1.b() - nu * l1.d()) * l2.nu()) /
          (4.0 * k)};
}

Mat2 symplectic_j() { return {0.0, 1.0, -1.0, 0.0}; }

CocycleValue cocycle_linear_matrix_form(const GroupElement& l1, const GroupElement& l2, cplx k) {
  if (k == cplx(0.0)) throw ZeroParameter("k must be non-zero");
  // Rows of J M with M = [[c, d], [a, b]] and J = [[0, 1], [-1, 0]].
  const Mat2 jm = symplectic_j() * l1.m();
  const cplx r0 = jm.c * l2.mu() + jm.d * l2.nu();
  const cplx r1 = jm.a * l2.mu() + jm.b * l2.nu();
  return {(l1.mu() * r0 + l1.nu() * r1) / (4.0 * k)};
}

CocycleValue cocycle_quadratic(const GroupElement& l1, const GroupElement& l2, cplx omega,
                               QuadraticCocycleVariant variant) {
  if (omega == cplx(0.0)) throw ZeroParameter("omega must be non-zero");
  const cplx mu = l1.mu(), nu = l1.nu();
  const cplx second = variant == QuadraticCocycleVariant::Corrected ? l1.d() : l1.a();
  return {omega * ((mu * l1.a() - nu * l1.c()) * l2.mu() + (mu * l1.b() - nu * second) * l2.nu())};
}

GroupElement disk_parametrize(const DiskParams& p, cplx mu) {
  const double r2 = std::norm(p.lam);
  if (!(r2 < 1.0)) throw DomainError("disk parameter requires |lambda| < 1");
  const double s = 1.0 / std::sqrt(1.0 - r2);
  const cplx e = std::polar(1.0, p.theta);
  const cplx a = -std::conj(p.lam) * e * s;
  const cplx b = std::conj(e) * s;
  return make_element({std::conj(b), std::conj(a), a, b}, mu, -std::conj(mu));
}

bool is_disk_element(const GroupElement& l, double tol) {
  return std::abs(l.c() - std::conj(l.b())) <= tol && std::abs(l.d() - std::conj(l.a())) <= tol &&
         std::abs(std::conj(l.mu()) + l.nu()) <= tol;
}

bool is_semigroup_admissible(const GroupElement& l) {
  const Mat2& m = l.m();
  if (!m.is_real(1e-14)) return false;
  return m.a.real() >= 0.0 && m.b.real() >= 0.0 && m.c.real() >= 0.0 && m.d.real() >= 0.0;
}

}  // namespace schroedsym
