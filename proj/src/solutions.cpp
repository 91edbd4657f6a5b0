#include "schroedsym/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "schroedsym/errors.hpp"

namespace schroedsym {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

void require_linear(const FamilySpec& spec) {
  if (spec.family != Family::Linear) throw FamilyMismatch("linear family expected");
}

void require_quadratic(const FamilySpec& spec) {
  if (spec.family != Family::Quadratic) throw FamilyMismatch("quadratic family expected");
}

}  // namespace

SmoothFn gaussian_free(cplx k, double t0, int n) {
  if (k == cplx(0.0)) throw ZeroParameter("k must be non-zero");
  if (n < 1) throw DomainError("dimension must be >= 1");
  Domain dom{[t0](const Point& z) { return std::abs(z.t + t0) > 0.0; }, "t != -t0"};
  return SmoothFn::from_generic(
      "gaussian_free", n,
      [k, t0, n](const auto& t, auto x) {
        using std::exp;
        using std::pow;
        using T = std::decay_t<decltype(t)>;
        const T tau = t + t0;
        T r2(0.0);
        for (const auto& xj : x) r2 = r2 + xj * xj;
        return pow((4.0 * kPi * k) * tau, -0.5 * n) * exp(-r2 / ((4.0 * k) * tau));
      },
      std::move(dom));
}

SmoothFn power_static(double s, double alpha) {
  if (std::abs(s * (s - 1.0) - alpha) > 1e-12 * std::max(1.0, std::abs(alpha))) {
    throw DomainError("power_static needs s(s-1) = alpha");
  }
  return SmoothFn::from_generic(
      "power_static", 1,
      [s](const auto&, auto x) {
        using std::pow;
        return pow(x[0], s);
      },
      Domain::x_positive());
}

cplx theta_k() { return cplx(0.0, -1.0 / (4.0 * kPi)); }

double theta1_tail_bound(int trunc, cplx t, cplx x) {
  const double im_t = t.imag();
  const double im_x = std::abs(x.imag());
  if (im_t <= 0.0) return std::numeric_limits<double>::infinity();
  // Omitted terms have |m| >= trunc + 1/2 and magnitude exp(-pi(m^2 Im t - 2|m| Im x)).
  const double m = trunc + 0.5;
  const double first = std::exp(-kPi * (m * m * im_t - 2.0 * m * im_x));
  const double ratio = std::exp(-kPi * ((2.0 * m + 1.0) * im_t - 2.0 * im_x));
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * first / (1.0 - ratio);
}

namespace {

template <class T>
T theta1_series(int trunc, const T& t, const T& x) {
  using std::exp;
  T sum(0.0);
  for (int n = -trunc; n <= trunc + 1; ++n) {
    const double m = n - 0.5;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    sum = sum + sign * exp((kI * kPi * m * m) * t + (kI * kPi * (2.0 * n - 1.0)) * x);
  }
  return kI * sum;
}

}  // namespace

SmoothFn theta1(int trunc) {
  if (trunc < 10) throw DomainError("theta1 needs trunc >= 10");
  return SmoothFn::from_generic(
      "theta1", 1,
      [trunc](const auto& t, auto x) {
        if (theta1_tail_bound(trunc, value_of(t), value_of(x[0])) > 1e-12) {
          throw ConvergenceError("theta series tail bound exceeds 1e-12");
        }
        return theta1_series(trunc, t, x[0]);
      },
      Domain::im_t_positive());
}

cplx theta1_modular_phase(const Mat2& m, cplx t, cplx x, int trunc) {
  const cplx denom = m.a * t + m.b;
  const cplx tp = (m.c * t + m.d) / denom;
  const cplx xp = x / denom;
  const SmoothFn th = theta1(trunc);
  const cplx lhs = th.value(Point(tp, {xp}));
  const cplx rhs = std::sqrt(denom) * std::exp(kI * kPi * m.a * x * x / denom) * th.value(Point(t, {x}));
  if (std::abs(rhs) < 1e-300) throw DomainError("theta vanishes at the chosen point");
  return lhs / rhs;
}

ExpPoly f1_exp_poly(const FamilySpec& spec) {
  require_linear(spec);
  const cplx k = spec.k;
  ExpPoly e;
  e.add(-k * spec.alpha, 1, 0).add(-k * spec.beta, 1, 1).add(k * k * k * spec.beta * spec.beta / 3.0, 3, 0);
  return e;
}

ExpPoly f2_exp_poly(const FamilySpec& spec) {
  require_linear(spec);
  const cplx k = spec.k;
  ExpPoly e;
  e.power = -0.5;
  e.add(-k * spec.alpha, 1, 0)
      .add(-k * spec.beta / 2.0, 1, 1)
      .add(k * k * k * spec.beta * spec.beta / 12.0, 3, 0)
      .add(-1.0 / (4.0 * k), -1, 2);
  return e;
}

std::pair<SmoothFn, SmoothFn> f_pair(const FamilySpec& spec) {
  return {f1_exp_poly(spec).to_smooth_fn("f1"), f2_exp_poly(spec).to_smooth_fn("f2")};
}

namespace {

cplx phi_cubic(const FamilySpec& spec, PhiCoefficients c) {
  const cplx k = spec.k;
  const double b = spec.beta;
  return c == PhiCoefficients::Derived ? (2.0 / 3.0) * k * k * k * b * b
                                       : (2.0 / 3.0) * k * k * b * b * b;
}

}  // namespace

ExpPoly phi1_exp_poly(const FamilySpec& spec, PhiCoefficients c) {
  require_linear(spec);
  const cplx k = spec.k;
  ExpPoly e;
  e.add(k * spec.alpha, 1, 0).add(k * spec.beta, 1, 1).add(phi_cubic(spec, c), 3, 0);
  return e;
}

ExpPoly phi2_exp_poly(const FamilySpec& spec, PhiCoefficients c) {
  require_linear(spec);
  const cplx k = spec.k;
  ExpPoly e;
  e.power = -0.5;
  e.add(-k * spec.alpha, -1, 0)
      .add(-phi_cubic(spec, c), -3, 0)
      .add(-k * spec.beta, -2, 1)
      .add(-1.0 / (4.0 * k), -1, 2);
  return e;
}

std::pair<SmoothFn, SmoothFn> phi_pair(const FamilySpec& spec, PhiCoefficients c) {
  return {phi1_exp_poly(spec, c).to_smooth_fn("phi1"), phi2_exp_poly(spec, c).to_smooth_fn("phi2")};
}

ExpPoly g1_exp_poly(const FamilySpec& spec) {
  require_quadratic(spec);
  ExpPoly e;
  e.add(spec.k * (spec.omega - spec.alpha), 1, 0).add(spec.omega / 2.0, 0, 2);
  return e;
}

ExpPoly g2_exp_poly(const FamilySpec& spec) {
  require_quadratic(spec);
  ExpPoly e;
  e.add(-spec.k * (spec.omega + spec.alpha), 1, 0).add(-spec.omega / 2.0, 0, 2);
  return e;
}

ExpPoly g3_exp_poly(const FamilySpec& spec, cplx gamma) {
  ExpPoly e = g2_exp_poly(spec);
  if (gamma != cplx(0.0)) {
    const cplx kw = spec.k * spec.omega;
    e.add(-gamma, 0, 1, -2.0 * kw).add(-gamma * gamma / (4.0 * spec.omega), 0, 0, -4.0 * kw);
  }
  return e;
}

std::tuple<SmoothFn, SmoothFn, SmoothFn> g_functions(const FamilySpec& spec, cplx gamma) {
  return {g1_exp_poly(spec).to_smooth_fn("g1"), g2_exp_poly(spec).to_smooth_fn("g2"),
          g3_exp_poly(spec, gamma).to_smooth_fn("g3")};
}

// ------------------------------------------------------------------ Airy

namespace {

// Trapezoid sum of exp(i(a tau + beta^2 tau^3/3)) over tau = s + i delta,
// |s| <= window. Also returns an error estimate (truncation + step halving).
template <class T>
T airy_integral(const AirySpec& spec, const T& a, double& error) {
  using std::exp;
  const double beta = spec.beta;
  const double a0 = value_of(a).real();
  // Any delta > 0 gives the same value; this one sits at the saddle point
  // for a > 0 and keeps the integrand O(1) otherwise.
  const double delta = std::max(std::pow(beta, -2.0 / 3.0), std::sqrt(std::max(a0, 0.0)) / beta);
  const double window = spec.T > 0.0 ? spec.T : 6.0 / (beta * std::sqrt(delta));
  const double freq = std::abs(a0 - beta * beta * delta * delta) + beta * beta * window * window;
  const double h = std::min(spec.h, 0.5 / std::max(freq, 1e-300));
  const long n = 2 * static_cast<long>(std::ceil(window / (2.0 * h)));  // even, so the coarse grid shares the endpoints
  const double step = window / static_cast<double>(n);
  const cplx b3 = kI * beta * beta / 3.0;

  T fine(0.0), coarse(0.0);
  for (long j = -n; j <= n; ++j) {
    const cplx tau(j * step, delta);
    const T term = exp((kI * tau) * a + b3 * tau * tau * tau);
    const double w = (j == -n || j == n) ? 0.5 : 1.0;
    fine = fine + w * term;
    if (j % 2 == 0) coarse = coarse + w * term;
  }
  fine = fine * step;
  coarse = coarse * (2.0 * step);
  // |integrand| = exp(-a delta + beta^2 delta^3/3 - beta^2 delta s^2) on the contour.
  const double edge = std::exp(-a0 * delta + beta * beta * delta * delta * delta / 3.0 -
                               beta * beta * delta * window * window);
  const double tail = edge / (beta * beta * delta * window);
  error = tail + std::abs(value_of(fine) - value_of(coarse));
  return fine;
}

}  // namespace

SmoothFn airy_u(const AirySpec& spec) {
  if (!(spec.beta > 0.0)) throw DomainError("airy_u needs beta > 0");
  if (!(spec.h > 0.0)) throw DomainError("airy_u needs a positive step");
  return SmoothFn::from_generic("airy_u", 1, [spec](const auto&, auto x) {
    double err = 0.0;
    auto a = spec.alpha + spec.beta * x[0];
    auto u = airy_integral(spec, a, err);
    if (err > 1e-8) throw QuadratureError("Airy quadrature error estimate exceeds 1e-8");
    return u;
  });
}

double airy_boundary_value(const AirySpec& spec) {
  return airy_u(spec).value(Point(0.0, {0.0})).real();
}

std::vector<double> eigenvalue_scan(const AirySpec& spec, double e_min, double e_max,
                                    double scan_step) {
  if (!(spec.beta > 0.0)) throw DomainError("eigenvalue_scan needs beta > 0");
  if (!(e_max > e_min) || !(scan_step > 0.0)) throw DomainError("empty energy range");
  auto boundary = [&](double E) { return airy_boundary_value(AirySpec{-E, spec.beta, E, spec.T, spec.h}); };

  std::vector<double> roots;
  const long steps = static_cast<long>(std::ceil((e_max - e_min) / scan_step));
  double lo = e_min;
  double f_lo = boundary(lo);
  for (long i = 1; i <= steps; ++i) {
    const double hi = std::min(e_max, e_min + i * scan_step);
    const double f_hi = boundary(hi);
    if (f_lo == 0.0) {
      roots.push_back(lo);
    } else if ((f_lo < 0.0) != (f_hi < 0.0) && f_hi != 0.0) {
      std::uintmax_t iters = 100;
      auto [a, b] = boost::math::tools::toms748_solve(
          boundary, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(50), iters);
      roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (f_lo == 0.0) roots.push_back(lo);
  if (roots.empty()) throw NoRootError("no sign change of u(0; E) in the range");
  return roots;
}

// ------------------------------------------------------------ nonlinear

SmoothFn plane_wave_nls(double amplitude, const std::vector<double>& p, const FamilySpec& spec) {
  if (spec.family != Family::NLS2d) throw FamilyMismatch("nls2d family expected");
  if (p.size() != 2) throw ShapeError("wave vector must have two components");
  if (!spec.k_is_imaginary(1e-12)) throw DomainError("the nonlinear family needs imaginary k");
  const double p2 = p[0] * p[0] + p[1] * p[1];
  const cplx rate = spec.k * (spec.nls_coupling * amplitude * amplitude - p2);
  return SmoothFn::from_generic("plane_wave_nls", 2, [amplitude, p, rate](const auto& t, auto x) {
    using std::exp;
    return amplitude * exp(rate * t + (kI * p[0]) * x[0] + (kI * p[1]) * x[1]);
  });
}

SmoothFn pair_product_solution(const FamilySpec& spec, double s) {
  if (spec.family != Family::NdimLinear || spec.n != 2) {
    throw FamilyMismatch("two-dimensional ndim-linear family expected");
  }
  if (std::abs(spec.ajk[0][1] - s * (s - 1.0)) > 1e-12 * std::max(1.0, std::abs(s * s))) {
    throw DomainError("pair coupling must equal s(s-1)");
  }
  FamilySpec one = FamilySpec::linear(spec.k, spec.alpha, spec.beta);
  const ExpPoly f1 = f1_exp_poly(one);
  return SmoothFn::from_generic(
      "pair_product", 2,
      [f1, s](const auto& t, auto x) {
        using std::pow;
        return f1.eval(t, x[0]) * f1.eval(t, x[1]) * pow(x[0] - x[1], s);
      },
      Domain{[](const Point& z) { return z.x[0].real() > z.x[1].real(); }, "x1 > x2"});
}

}  // namespace schroedsym
