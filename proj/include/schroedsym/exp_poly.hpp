#pragma once

#include <string>
#include <vector>

#include "schroedsym/smooth_fn.hpp"

namespace schroedsym {

/// prefactor * t^power * exp( sum_i coeff_i t^p_i x^q_i e^{rate_i t} ).
///
/// Every closed-form solution in the library has this shape. The optional
/// exponential rate lets the quadratic-family functions keep u = exp(4k omega t)
/// inside the exponent. Partials come from jet arithmetic on the exponent.
struct ExpPoly {
  struct Term {
    cplx coeff{0.0};
    int p{0};  // power of t, may be negative
    int q{0};  // power of x, >= 0
    cplx rate{0.0};
  };

  cplx prefactor{1.0};
  double power{0.0};
  std::vector<Term> terms;

  ExpPoly& add(cplx coeff, int p, int q, cplx rate = 0.0) {
    terms.push_back({coeff, p, q, rate});
    return *this;
  }

  template <class T>
  T exponent(const T& t, const T& x) const {
    using std::exp;
    T sum(0.0);
    for (const auto& term : terms) {
      T v(term.coeff);
      if (term.p > 0) {
        for (int i = 0; i < term.p; ++i) v = v * t;
      } else if (term.p < 0) {
        T inv = 1.0 / t;
        for (int i = 0; i < -term.p; ++i) v = v * inv;
      }
      for (int i = 0; i < term.q; ++i) v = v * x;
      if (term.rate != cplx(0.0)) v = v * exp(term.rate * t);
      sum = sum + v;
    }
    return sum;
  }

  template <class T>
  T eval(const T& t, const T& x) const {
    using std::exp;
    using std::pow;
    T out = prefactor * exp(exponent(t, x));
    if (power != 0.0) out = out * pow(t, power);
    return out;
  }

  /// Coefficient of t^p x^q among the plain (rate 0) terms.
  cplx coefficient(int p, int q) const;

  /// One-dimensional SmoothFn. t = 0 is excluded when power is fractional or
  /// any term has a negative power of t; negative t uses the principal power.
  SmoothFn to_smooth_fn(std::string name) const;
};

}  // namespace schroedsym
