#include "schroedsym/exp_poly.hpp"

#include <cmath>

namespace schroedsym {

cplx ExpPoly::coefficient(int p, int q) const {
  cplx sum = 0.0;
  for (const auto& term : terms) {
    if (term.p == p && term.q == q && term.rate == cplx(0.0)) sum += term.coeff;
  }
  return sum;
}

SmoothFn ExpPoly::to_smooth_fn(std::string name) const {
  bool singular_at_zero = power != std::floor(power) || power < 0.0;
  for (const auto& term : terms) singular_at_zero = singular_at_zero || term.p < 0;
  const ExpPoly self = *this;
  return SmoothFn::from_generic(
      std::move(name), 1,
      [self](const auto& t, auto x) { return self.eval(t, x[0]); },
      singular_at_zero ? Domain{[](const Point& z) { return z.t != cplx(0.0); }, "t != 0"}
                       : Domain::everywhere());
}

}  // namespace schroedsym
