#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <type_traits>

namespace schroedsym {

using cplx = std::complex<double>;

/// Truncated bivariate Taylor expansion around a point in (t, x).
///
/// Coefficient (i, j) multiplies dt^i dx^j, so a partial derivative
/// d^{i+j}/dt^i dx^j equals i! j! coeff(i, j). Every closed form in the
/// library is written as a template over its scalar type; instantiating it
/// with Jet<N> yields all partials up to total order N in one pass.
template <int N>
class Jet {
  static_assert(N >= 0);

 public:
  static constexpr int kOrder = N;
  static constexpr std::size_t kSize = static_cast<std::size_t>((N + 1) * (N + 2) / 2);

  Jet() = default;
  Jet(cplx v) { c_[0] = v; }    // NOLINT(google-explicit-constructor)
  Jet(double v) { c_[0] = v; }  // NOLINT(google-explicit-constructor)

  /// Independent variable: `which` = 0 seeds t, 1 seeds x.
  static Jet variable(cplx v, int which) {
    Jet j(v);
    if constexpr (N >= 1) {
      j.coeff(which == 0 ? 1 : 0, which == 0 ? 0 : 1) = 1.0;
    }
    return j;
  }

  static constexpr std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

  cplx coeff(int i, int j) const { return c_[index(i, j)]; }
  cplx& coeff(int i, int j) { return c_[index(i, j)]; }
  cplx value() const { return c_[0]; }

  cplx partial(int dt, int dx) const {
    return coeff(dt, dx) * factorial(dt) * factorial(dx);
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t n = 0; n < kSize; ++n) c_[n] += o.c_[n];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t n = 0; n < kSize; ++n) c_[n] -= o.c_[n];
    return *this;
  }
  Jet& operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator-(const Jet& a) {
    Jet r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, cplx s) { a.c_[0] += s; return a; }
  friend Jet operator+(cplx s, Jet a) { a.c_[0] += s; return a; }
  friend Jet operator-(Jet a, cplx s) { a.c_[0] -= s; return a; }
  friend Jet operator-(cplx s, const Jet& a) { return s + (-a); }
  friend Jet operator+(Jet a, double s) { a.c_[0] += s; return a; }
  friend Jet operator+(double s, Jet a) { a.c_[0] += s; return a; }
  friend Jet operator-(Jet a, double s) { a.c_[0] -= s; return a; }
  friend Jet operator-(double s, const Jet& a) { return s + (-a); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int d1 = 0; d1 <= N; ++d1) {
      for (int j1 = 0; j1 <= d1; ++j1) {
        const cplx av = a.c_[index(d1 - j1, j1)];
        if (av == cplx(0.0)) continue;
        for (int d2 = 0; d1 + d2 <= N; ++d2) {
          for (int j2 = 0; j2 <= d2; ++j2) {
            r.c_[index(d1 - j1 + d2 - j2, j1 + j2)] += av * b.c_[index(d2 - j2, j2)];
          }
        }
      }
    }
    return r;
  }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
  friend Jet operator*(double s, Jet a) { return a *= cplx(s); }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(Jet a, cplx s) { return a *= (1.0 / s); }
  friend Jet operator/(Jet a, double s) { return a *= cplx(1.0 / s); }
  friend Jet operator/(cplx s, const Jet& b) { return reciprocal(b) * s; }
  friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

  /// f(g) for an analytic f given its scaled derivatives taylor[n] = f^(n)(g0)/n!.
  friend Jet compose(const Jet& g, const std::array<cplx, N + 1>& taylor) {
    Jet h = g;
    h.c_[0] = 0.0;
    Jet r(taylor[N]);
    for (int n = N - 1; n >= 0; --n) {
      r = r * h;
      r.c_[0] += taylor[static_cast<std::size_t>(n)];
    }
    return r;
  }

  friend Jet reciprocal(const Jet& g) {
    std::array<cplx, N + 1> tay{};
    const cplx inv = 1.0 / g.c_[0];
    cplx p = inv;
    for (int n = 0; n <= N; ++n) {
      tay[static_cast<std::size_t>(n)] = (n % 2 == 0 ? 1.0 : -1.0) * p;
      p *= inv;
    }
    return compose(g, tay);
  }

  friend Jet exp(const Jet& g) {
    std::array<cplx, N + 1> tay{};
    const cplx e = std::exp(g.c_[0]);
    for (int n = 0; n <= N; ++n) tay[static_cast<std::size_t>(n)] = e / factorial(n);
    return compose(g, tay);
  }

  friend Jet log(const Jet& g) {
    std::array<cplx, N + 1> tay{};
    const cplx g0 = g.c_[0];
    tay[0] = std::log(g0);
    cplx p = 1.0;
    for (int n = 1; n <= N; ++n) {
      p /= g0;
      tay[static_cast<std::size_t>(n)] = (n % 2 == 1 ? 1.0 : -1.0) * p / static_cast<double>(n);
    }
    return compose(g, tay);
  }

  /// Principal branch power g^a.
  friend Jet pow(const Jet& g, cplx a) {
    std::array<cplx, N + 1> tay{};
    const cplx g0 = g.c_[0];
    cplx binom = 1.0;
    cplx base = std::pow(g0, a);
    for (int n = 0; n <= N; ++n) {
      tay[static_cast<std::size_t>(n)] = binom * base;
      binom *= (a - static_cast<double>(n)) / static_cast<double>(n + 1);
      base /= g0;
    }
    return compose(g, tay);
  }
  friend Jet pow(const Jet& g, double a) { return pow(g, cplx(a)); }

  friend Jet pow(const Jet& g, int n) {
    if (n < 0) return reciprocal(pow(g, -n));
    Jet r(1.0);
    Jet b = g;
    while (n > 0) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n > 0) b = b * b;
    }
    return r;
  }

  friend Jet sqrt(const Jet& g) {
    std::array<cplx, N + 1> tay{};
    const cplx g0 = g.c_[0];
    cplx binom = 1.0;
    cplx base = std::sqrt(g0);
    for (int n = 0; n <= N; ++n) {
      tay[static_cast<std::size_t>(n)] = binom * base;
      binom *= (0.5 - n) / static_cast<double>(n + 1);
      base /= g0;
    }
    return compose(g, tay);
  }

  friend Jet cos(const Jet& g) {
    std::array<cplx, N + 1> tay{};
    const cplx s = std::sin(g.c_[0]);
    const cplx c = std::cos(g.c_[0]);
    const cplx cyc[4] = {c, -s, -c, s};
    for (int n = 0; n <= N; ++n) tay[static_cast<std::size_t>(n)] = cyc[n % 4] / factorial(n);
    return compose(g, tay);
  }

  friend Jet sin(const Jet& g) {
    std::array<cplx, N + 1> tay{};
    const cplx s = std::sin(g.c_[0]);
    const cplx c = std::cos(g.c_[0]);
    const cplx cyc[4] = {s, c, -s, -c};
    for (int n = 0; n <= N; ++n) tay[static_cast<std::size_t>(n)] = cyc[n % 4] / factorial(n);
    return compose(g, tay);
  }

 private:
  static constexpr double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  }

  std::array<cplx, kSize> c_{};
};

constexpr int kJetOrder = 4;
using Jet4 = Jet<kJetOrder>;

template <class T>
struct is_jet : std::false_type {};
template <int N>
struct is_jet<Jet<N>> : std::true_type {};

inline cplx value_of(const cplx& v) { return v; }
template <int N>
cplx value_of(const Jet<N>& v) {
  return v.value();
}

}  // namespace schroedsym
