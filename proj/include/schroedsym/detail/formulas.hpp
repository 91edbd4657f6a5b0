#pragma once

// Closed-form coordinate maps and multipliers, written once as templates
// over the scalar type. Instantiated with cplx for values and with Jet4 for
// exact partial derivatives.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "schroedsym/errors.hpp"
#include "schroedsym/family.hpp"
#include "schroedsym/group.hpp"
#include "schroedsym/jet.hpp"

namespace schroedsym {

inline constexpr double kSingularTolerance = 1e-14;
inline constexpr double kMaxExponent = 700.0;

namespace detail {

inline void require_nonsingular(cplx v, const char* what) {
  if (!(std::abs(v) >= kSingularTolerance)) throw SingularTime(what);
}

template <class T>
T guarded_exp(const T& e) {
  if (value_of(e).real() > kMaxExponent) {
    throw RangeError("multiplier exponent exceeds the double range");
  }
  using std::exp;
  return exp(e);
}

/// Exponent coefficients: K = exp(A + B x + C x^2) per coordinate.
template <class T>
struct Coefficients {
  T A, B, C;
};

// ---------------------------------------------------------------- linear

template <class T>
struct LinearTime {
  T denom;  // a t + b
  T tp;     // (c t + d)/(a t + b)
};

template <class T>
LinearTime<T> linear_time(const Mat2& m, const T& t) {
  T denom = m.a * t + m.b;
  require_nonsingular(value_of(denom), "a t + b vanishes");
  return {denom, (m.c * t + m.d) / denom};
}

/// f(t) in x' = x/(at+b) + f(t).
template <class T>
T linear_shift(const GroupElement& l, const T& t, const LinearTime<T>& lt, cplx k, double beta) {
  return l.mu() - l.nu() * lt.tp + (k * k * beta) * (lt.tp * lt.tp - t * t / lt.denom);
}

/// Per-coordinate coefficients with the -(1/2) log(at+b) prefactor folded into A.
template <class T>
Coefficients<T> linear_coefficients(const GroupElement& l, const T& t, const LinearTime<T>& lt,
                                    cplx k, double alpha, double beta) {
  using std::log;
  const cplx a = l.a(), b = l.b(), c = l.c(), d = l.d(), mu = l.mu(), nu = l.nu();
  const T& D = lt.denom;
  const T& P = lt.tp;
  const T num = c * t + d;
  const T t2 = t * t;
  const T t3 = t2 * t;

  T C = (-a / (4.0 * k)) / D;
  T B = (-nu / (2.0 * k)) / D + (k * beta / 2.0) * (2.0 * num / (D * D) - t - b * t / D);
  T A = -mu * nu / (4.0 * k) + (alpha * k) * (P - t) + (nu * nu / (4.0 * k)) * P +
        (k * beta) * (mu * P - nu * (P * P - 0.5 * t2 / D)) +
        (k * k * k * beta * beta) *
            ((2.0 / 3.0) * P * P * P + t3 / 12.0 + (b / 4.0) * t3 / D - t2 * num / (D * D));
  A = A - 0.5 * log(D);
  return {A, B, C};
}

// ------------------------------------------------------------- quadratic

template <class T>
struct QuadraticTime {
  T su;    // sqrt(u) = exp(2 k omega t)
  T u;     // exp(4 k omega t)
  T ea;    // a u + b
  T ec;    // c u + d
  T ra;    // sqrt(a u + b), principal
  T rcp;   // sqrt(c + d/u), principal; c u + d = u rcp^2
  T ratio; // u' = (c u + d)/(a u + b)
  T tp;    // log(u')/(4 k omega), representative nearest t
  T xi;    // 1/(ra rcp), +1 at the identity
  T f;     // nu sqrt(u') - mu / sqrt(u')
};

/// Whether k*omega is (numerically) real.
inline bool kw_is_real(cplx k, cplx omega) {
  const cplx kw = k * omega;
  return std::abs(kw.imag()) <= 1e-14 * std::abs(kw);
}

template <class T>
QuadraticTime<T> quadratic_time(const GroupElement& l, const T& t, cplx k, cplx omega) {
  using std::exp;
  using std::log;
  using std::sqrt;
  const cplx a = l.a(), b = l.b(), c = l.c(), d = l.d();
  const cplx kw4 = 4.0 * k * omega;
  QuadraticTime<T> q;
  q.su = exp((2.0 * k * omega) * t);
  q.u = q.su * q.su;
  q.ea = a * q.u + b;
  q.ec = c * q.u + d;
  require_nonsingular(value_of(q.ea), "a u + b vanishes");
  require_nonsingular(value_of(q.ec), "c u + d vanishes");
  if (kw_is_real(k, omega) && std::abs(value_of(t).imag()) <= 1e-14) {
    const cplx prod = value_of(q.ea) * value_of(q.ec);
    if (std::abs(prod.imag()) <= 1e-14 * std::abs(prod) && prod.real() < 0.0) {
      throw BranchError("(a u + b)(c u + d) lies on the negative real axis");
    }
  }
  q.ra = sqrt(q.ea);
  q.rcp = sqrt(c + d / q.u);
  q.ratio = q.ec / q.ea;
  T tp0 = log(q.ratio) / kw4;
  // log is defined up to 2 pi i; pick the time representative closest to t.
  const cplx period = cplx(0.0, 2.0 * std::numbers::pi) / kw4;
  const cplx gap = value_of(t) - value_of(tp0);
  const double turns = std::round((gap * std::conj(period)).real() / std::norm(period));
  q.tp = tp0 + turns * period;
  q.xi = 1.0 / (q.ra * q.rcp);
  q.f = l.nu() * q.su * q.rcp / q.ra - l.mu() * q.ra / (q.su * q.rcp);
  return q;
}

/// Coefficients with the sqrt(xi) prefactor folded into A as log(xi)/2.
template <class T>
Coefficients<T> quadratic_coefficients(const GroupElement& l, const T& t,
                                       const QuadraticTime<T>& q, cplx k, double alpha,
                                       cplx omega) {
  using std::log;
  const cplx mu = l.mu(), nu = l.nu();
  T B = omega * (nu * q.su / q.ea + mu * q.su / q.ec);
  T C = (omega / 2.0) * (-1.0 + l.b() / q.ea + l.d() / q.ec);
  T A = 0.5 * log(q.xi) + (k * alpha) * (q.tp - t) +
        (omega / 2.0) * (nu * nu * q.ratio - mu * mu / q.ratio);
  return {A, B, C};
}

// -------------------------------------------------------------- dispatch

template <class T>
struct Transformed {
  T t;               // t'
  std::vector<T> x;  // x'
  T K;               // multiplier
  T phidot;          // dt'/dt
};

template <class T>
Transformed<T> transform(const GroupElement& l, const T& t, std::span<const T> x,
                         const FamilySpec& spec) {
  using std::exp;
  using std::log;
  const std::size_t n = x.size();
  Transformed<T> out;
  out.x.resize(n);
  switch (spec.family) {
    case Family::InverseQuadratic: {
      if (l.mu() != cplx(0.0) || l.nu() != cplx(0.0)) {
        throw DomainError("the inverse-quadratic family acts through SL(2) only");
      }
      auto lt = linear_time(l.m(), t);
      T r2(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        out.x[j] = x[j] / lt.denom;
        r2 = r2 + x[j] * x[j];
      }
      out.t = lt.tp;
      T expo = -(static_cast<double>(n) / 2.0) * log(lt.denom) +
               (-l.a() / (4.0 * spec.k)) * r2 / lt.denom;
      out.K = guarded_exp(expo);
      out.phidot = 1.0 / (lt.denom * lt.denom);
      return out;
    }
    case Family::Free:
    case Family::NLS2d:
    case Family::Linear:
    case Family::NdimLinear: {
      const bool potential = spec.family == Family::Linear || spec.family == Family::NdimLinear;
      const double alpha = potential ? spec.alpha : 0.0;
      const double beta = potential ? spec.beta : 0.0;
      auto lt = linear_time(l.m(), t);
      const T shift = linear_shift(l, t, lt, spec.k, beta);
      const auto co = linear_coefficients(l, t, lt, spec.k, alpha, beta);
      T expo(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        out.x[j] = x[j] / lt.denom + shift;
        expo = expo + co.A + co.B * x[j] + co.C * x[j] * x[j];
      }
      out.t = lt.tp;
      out.K = guarded_exp(expo);
      out.phidot = 1.0 / (lt.denom * lt.denom);
      return out;
    }
    case Family::Quadratic: {
      if (n != 1) throw DomainError("the quadratic family is one-dimensional");
      auto q = quadratic_time(l, t, spec.k, spec.omega);
      const auto co = quadratic_coefficients(l, t, q, spec.k, spec.alpha, spec.omega);
      out.t = q.tp;
      out.x[0] = q.xi * x[0] + q.f;
      out.K = guarded_exp(co.A + co.B * x[0] + co.C * x[0] * x[0]);
      out.phidot = q.xi * q.xi;
      return out;
    }
  }
  throw DomainError("unknown family");
}

/// Potential V(x); the nonlinear family has no linear potential part.
template <class T>
T potential(const FamilySpec& spec, std::span<const T> x) {
  T v(0.0);
  switch (spec.family) {
    case Family::Free:
    case Family::NLS2d:
      return v;
    case Family::InverseQuadratic: {
      T r2(0.0);
      for (const auto& xj : x) r2 = r2 + xj * xj;
      return spec.alpha / r2;
    }
    case Family::Linear:
      return spec.alpha + spec.beta * x[0];
    case Family::Quadratic:
      return spec.alpha + (spec.omega * spec.omega) * x[0] * x[0];
    case Family::NdimLinear: {
      const std::size_t n = x.size();
      for (std::size_t j = 0; j < n; ++j) v = v + spec.alpha + spec.beta * x[j];
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          if (i == j || spec.ajk[j][i] == 0.0) continue;
          const T r = x[j] - x[i];
          v = v + spec.ajk[j][i] / (r * r);
        }
      }
      return v;
    }
  }
  return v;
}

// ------------------------------------------------------ K0 intertwiner

template <class T>
struct IntertwinerMap {
  T tp, xp, K, phidot;
};

/// Map from free solutions to the quadratic family; sigma, tau, lam are the
/// free constants of the map.
template <class T>
IntertwinerMap<T> intertwiner_map(cplx sigma, cplx tau, cplx lam, const T& t, const T& x,
                                  cplx k, double alpha, cplx omega) {
  using std::exp;
  using std::sqrt;
  const cplx kw = k * omega;
  const T su = exp((2.0 * kw) * t);
  const T u = su * su;
  const T up = u + lam;
  require_nonsingular(value_of(up), "u + lambda vanishes");
  IntertwinerMap<T> m;
  m.tp = (-sigma * sigma / (4.0 * kw)) / up;
  m.xp = sigma * su / up * x - (sigma * tau / (2.0 * omega)) / up;
  const T A0 = (-tau * tau / (4.0 * omega)) / up - (k * alpha) * t;
  const T B0 = tau * su / up;
  const T C0 = omega * (lam - u) / (2.0 * up);
  m.K = exp(kw * t) / sqrt(up) * guarded_exp(A0 + B0 * x + C0 * x * x);
  m.phidot = sigma * sigma * u / (up * up);
  return m;
}

}  // namespace detail
}  // namespace schroedsym
