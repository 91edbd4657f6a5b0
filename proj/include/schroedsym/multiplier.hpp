#pragma once

#include <utility>
#include <vector>

#include "schroedsym/family.hpp"
#include "schroedsym/group.hpp"

namespace schroedsym {

/// Per-coordinate pieces of K = exp(A + B x + C x^2) together with the
/// affine map x' = xi x + f and phidot = dt'/dt.
///
/// A already contains the root prefactor: -log(at+b)/2 for the linear-type
/// families, log(xi)/2 for the quadratic family.
struct MultiplierParts {
  double t{0.0};
  cplx A{0.0}, B{0.0}, C{0.0};
  cplx xi{1.0}, f{0.0}, phidot{1.0};
};

struct IntertwinerParams {
  cplx sigma{1.0};
  cplx tau{0.0};
  cplx lam{0.0};
};

/// (at+b)^{-n/2} exp(-a |x|^2 / (4k(at+b))), principal power.
cplx K_inverse_quadratic(const Mat2& m, const Point& z, cplx k, int n);

/// One-dimensional linear-potential multiplier (alpha = beta = 0 for Free).
cplx K_linear(const GroupElement& l, const Point& z, const FamilySpec& spec);

/// exp(A + B x + C x^2) in the u = exp(4 k omega t) variable.
cplx K_quadratic(const GroupElement& l, const Point& z, const FamilySpec& spec);

/// Product of the one-dimensional linear multipliers over the coordinates.
cplx K_ndim(const GroupElement& l, const Point& z, const FamilySpec& spec);

/// Dispatches on spec.family.
cplx multiplier(const GroupElement& l, const Point& z, const FamilySpec& spec);

/// Closed-form parts at time t. Not defined for InverseQuadratic with n > 1
/// beyond the per-coordinate reading.
MultiplierParts multiplier_parts(const GroupElement& l, double t, const FamilySpec& spec);

/// Map from the free equation to the quadratic family:
///   t' = -sigma^2 / (4 k omega (u + lam))
///   x' = sigma sqrt(u) x/(u + lam) - sigma tau / (2 omega (u + lam))
/// together with its multiplier K0. Throws ZeroParameter for sigma = 0 and
/// SingularTime when |u + lam| < 1e-14.
std::pair<Point, cplx> K0_intertwiner(const IntertwinerParams& p, const Point& z,
                                      const FamilySpec& spec);

/// Integrates the first-order system for A, B, C with RK4 (step <= 1e-4)
/// from the earliest grid time, starting from the closed-form values there,
/// with xi and f taken in closed form. Returns samples in the order of
/// t_grid. Throws IntegrationError on a non-finite step.
std::vector<MultiplierParts> ode_oracle_coefficients(const GroupElement& l,
                                                     const FamilySpec& spec,
                                                     const std::vector<double>& t_grid);

/// The projective factor exp(omega(l1, l2)) in
///   K(Z|l2) K(l2 Z|l1) = exp(omega(l1, l2)) K(Z|l1 l2).
/// One for InverseQuadratic; n copies of the linear cocycle for NdimLinear.
cplx cocycle_factor(const GroupElement& l1, const GroupElement& l2, const FamilySpec& spec,
                    QuadraticCocycleVariant variant = QuadraticCocycleVariant::Corrected);

/// Relative defect of the product identity above at the point z.
double cocycle_defect(const GroupElement& l1, const GroupElement& l2, const Point& z,
                      const FamilySpec& spec,
                      QuadraticCocycleVariant variant = QuadraticCocycleVariant::Corrected);

/// Picks the quadratic cocycle variant whose worst product-identity defect
/// over the given pairs is smaller.
QuadraticCocycleVariant select_quadratic_cocycle_variant(
    const FamilySpec& spec, const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
    const Point& z);

}  // namespace schroedsym
