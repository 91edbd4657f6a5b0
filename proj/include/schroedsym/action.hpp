#pragma once

#include "schroedsym/family.hpp"
#include "schroedsym/group.hpp"

namespace schroedsym {

/// t' = (ct+d)/(at+b), x' = x/(at+b). Throws SingularTime if |at+b| < 1e-14.
Point act_inverse_quadratic(const Mat2& m, const Point& z);

/// Linear-potential action, componentwise in x:
///   t' = (ct+d)/(at+b)
///   x' = x/(at+b) + mu - nu t' + k^2 beta (t'^2 - t^2/(at+b))
/// Free and NLS2d use the same map with alpha = beta = 0.
Point act_linear(const GroupElement& l, const Point& z, const FamilySpec& spec);

/// Quadratic-potential action through u = exp(4 k omega t):
///   u' = (cu+d)/(au+b), t' = log(u')/(4 k omega), x' = xi x + f.
/// xi is the root that equals 1 at the identity. Throws SingularTime or
/// BranchError.
Point act_quadratic(const GroupElement& l, const Point& z, const FamilySpec& spec);

/// Dispatches on spec.family.
Point act(const GroupElement& l, const Point& z, const FamilySpec& spec);

/// x' = x + sigma + v t for elements with c = 1, a = 0, b = 1, d = lambda.
struct GalileanData {
  cplx sigma{0.0};
  cplx v{0.0};
  cplx lambda_shift{0.0};
};

/// Throws ShapeError unless the matrix is a pure time translation.
GalileanData galilean_params(const GroupElement& l, const FamilySpec& spec);

/// |(x' - k^2 beta t'^2) - (x - k^2 beta t^2)/(at+b)|, maximised over the
/// coordinates. Vanishes when mu = nu = 0; other elements give a nonzero value.
double drift_frame_identity_residual(const GroupElement& l, const Point& z,
                                     const FamilySpec& spec);

/// Whether the quadratic action stays real at real time t: for real k omega
/// both au+b and cu+d must be real with a positive product; for imaginary
/// k omega the element must have the disk shape.
bool reality_domain_check(const GroupElement& l, double t, const FamilySpec& spec);

}  // namespace schroedsym
