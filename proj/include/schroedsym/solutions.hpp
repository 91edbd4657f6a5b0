#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "schroedsym/exp_poly.hpp"
#include "schroedsym/family.hpp"
#include "schroedsym/group.hpp"
#include "schroedsym/smooth_fn.hpp"

namespace schroedsym {

/// (4 pi k (t+t0))^{-n/2} exp(-|x|^2 / (4k(t+t0))), a free-equation solution.
/// The domain excludes t = -t0.
SmoothFn gaussian_free(cplx k, double t0, int n = 1);

/// Static x^s on x > 0; solves the inverse-square equation with alpha = s(s-1).
/// Throws DomainError when s(s-1) != alpha.
SmoothFn power_static(double s_exponent, double alpha);

/// theta_1(x|t) = i sum_n (-1)^n exp(i pi (n-1/2)^2 t + i pi (2n-1) x),
/// n = -trunc..trunc+1. Solves dt psi = k dx^2 psi with k = -i/(4 pi) for
/// Im t > 0. Throws DomainError for trunc < 10 and, on evaluation,
/// ConvergenceError when the tail bound exceeds 1e-12.
SmoothFn theta1(int trunc = 20);

/// k used by the theta-function heat equation.
cplx theta_k();

/// Tail bound of the truncated theta series at (t, x).
double theta1_tail_bound(int trunc, cplx t, cplx x);

/// epsilon in theta_1(x/(at+b) | (ct+d)/(at+b))
///     = epsilon (at+b)^{1/2} exp(i pi a x^2/(at+b)) theta_1(x|t)
/// for an integer unimodular matrix; epsilon^8 = 1.
cplx theta1_modular_phase(const Mat2& m, cplx t, cplx x, int trunc = 40);

/// Linear family (V = alpha + beta x) members
///   f1 = exp(-k(alpha + beta x)t + k^3 beta^2 t^3/3)
///   f2 = t^{-1/2} exp(-k alpha t - k beta x t/2 + k^3 beta^2 t^3/12 - x^2/(4kt))
ExpPoly f1_exp_poly(const FamilySpec& spec);
ExpPoly f2_exp_poly(const FamilySpec& spec);
std::pair<SmoothFn, SmoothFn> f_pair(const FamilySpec& spec);

/// Which t^3 coefficient to use in the phi pair. Derived is the one that
/// inverts the f maps; Printed swaps k^3 beta^2 for k^2 beta^3 and is kept
/// only so tests can show that it fails.
enum class PhiCoefficients { Derived, Printed };

/// Inverse maps back to free solutions:
///   phi1 = exp(k(alpha + beta x)t + (2/3)k^3 beta^2 t^3)
///   phi2 = t^{-1/2} exp(-k alpha/t - (2/3)k^3 beta^2/t^3 - k beta x/t^2 - x^2/(4kt))
ExpPoly phi1_exp_poly(const FamilySpec& spec, PhiCoefficients c = PhiCoefficients::Derived);
ExpPoly phi2_exp_poly(const FamilySpec& spec, PhiCoefficients c = PhiCoefficients::Derived);
std::pair<SmoothFn, SmoothFn> phi_pair(const FamilySpec& spec,
                                       PhiCoefficients c = PhiCoefficients::Derived);

/// Quadratic family (V = alpha + omega^2 x^2) members
///   g1 = exp(k(omega - alpha)t + omega x^2/2)
///   g2 = exp(-k(omega + alpha)t - omega x^2/2)
///   g3 = g2 exp(-gamma x e^{-2k omega t} - gamma^2 e^{-4k omega t}/(4 omega))
ExpPoly g1_exp_poly(const FamilySpec& spec);
ExpPoly g2_exp_poly(const FamilySpec& spec);
ExpPoly g3_exp_poly(const FamilySpec& spec, cplx gamma);
std::tuple<SmoothFn, SmoothFn, SmoothFn> g_functions(const FamilySpec& spec, cplx gamma);

/// Bound-state problem -u'' + beta x u = E u on x > 0 with u(0) = 0.
struct AirySpec {
  double alpha{-1.0};   // alpha = -E
  double beta{1.0};
  double E{1.0};
  double T{0.0};        // half-width of the quadrature window; 0 picks 6/(beta sqrt(delta))
  double h{0.01};       // trapezoid step

  static AirySpec with_energy(double beta, double E) {
    AirySpec s;
    s.beta = beta;
    s.E = E;
    s.alpha = -E;
    return s;
  }
};

/// u(x) = 2 int_0^inf cos((alpha + beta x)t + beta^2 t^3/3) dt, evaluated as
/// the full-line integral of exp(i(...)) along the contour t + i delta. The
/// shifted contour makes the integrand Gaussian-damped and the value does not
/// depend on delta. Throws DomainError for beta <= 0 and QuadratureError when
/// the truncation or step error estimate exceeds 1e-8.
SmoothFn airy_u(const AirySpec& spec);

/// u(0) as a function of E at fixed beta.
double airy_boundary_value(const AirySpec& spec);

/// Roots of u(0; E) = 0 for E in [e_min, e_max], by sign scan and bracketing.
/// Throws NoRootError if there is none.
std::vector<double> eigenvalue_scan(const AirySpec& spec, double e_min, double e_max,
                                    double scan_step = 0.05);

/// A exp(i p.x + k(lambda A^2 - |p|^2) t) for the two-dimensional nonlinear
/// equation dt psi = k(Delta psi + lambda |psi|^2 psi), k imaginary.
SmoothFn plane_wave_nls(double amplitude, const std::vector<double>& p, const FamilySpec& spec);

/// f1(t, x1) f1(t, x2) (x1 - x2)^s on x1 > x2, for NdimLinear with n = 2 and
/// a_12 = a_21 = s(s-1).
SmoothFn pair_product_solution(const FamilySpec& spec, double s);

}  // namespace schroedsym
