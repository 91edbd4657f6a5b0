#pragma once

#include <map>
#include <string>
#include <utility>

#include "schroedsym/family.hpp"
#include "schroedsym/smooth_fn.hpp"

namespace schroedsym {

/// Sparse polynomial in two variables, Laurent in the first.
/// The first variable is t for the linear family and s = exp(2 k omega t)
/// for the quadratic family; the second is x.
class LaurentPoly2 {
 public:
  using Key = std::pair<int, int>;  // (power of first variable, power of x)

  LaurentPoly2() = default;
  LaurentPoly2(cplx c);                               // NOLINT(google-explicit-constructor)
  LaurentPoly2(double c) : LaurentPoly2(cplx(c)) {}  // NOLINT(google-explicit-constructor)
  static LaurentPoly2 monomial(cplx c, int i, int j);
  static LaurentPoly2 var1() { return monomial(1.0, 1, 0); }
  static LaurentPoly2 var2() { return monomial(1.0, 0, 1); }

  const std::map<Key, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  cplx coeff(int i, int j) const;

  LaurentPoly2& operator+=(const LaurentPoly2& o);
  LaurentPoly2& operator-=(const LaurentPoly2& o);
  friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
  friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
  friend LaurentPoly2 operator-(const LaurentPoly2& a) { return LaurentPoly2() - a; }
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);

  /// Partial derivative in variable 0 (first) or 1 (x). Negative powers are
  /// handled: d/ds s^-1 = -s^-2.
  LaurentPoly2 derive(int var, int times = 1) const;

  cplx evaluate(cplx v1, cplx v2) const;
  double max_abs_diff(const LaurentPoly2& o) const;
  std::string to_string(const char* v1 = "t", const char* v2 = "x") const;

 private:
  void prune();
  std::map<Key, cplx> terms_;
};

/// Variables of the coefficient ring. In the S chart the first variable is
/// s = exp(2 k omega t), so d/dt = 2 k omega s d/ds.
enum class ChartKind { TX, SX };

struct Chart {
  ChartKind kind{ChartKind::TX};
  cplx kw{0.0};  // k omega, used by the S chart only

  bool operator==(const Chart& o) const { return kind == o.kind && kw == o.kw; }
};

/// sum_{m,n} p_{mn}(v1, x) d1^m dx^n with derivatives to the right.
class DiffOp {
 public:
  using Key = std::pair<int, int>;  // (m, n) derivative orders

  explicit DiffOp(Chart chart = {}) : chart_(chart) {}

  static DiffOp multiplication(Chart chart, const LaurentPoly2& p);
  static DiffOp constant(Chart chart, cplx c) { return multiplication(chart, LaurentPoly2(c)); }
  /// p d1^m dx^n
  static DiffOp term(Chart chart, const LaurentPoly2& p, int m, int n);

  const Chart& chart() const { return chart_; }
  const std::map<Key, LaurentPoly2>& terms() const { return terms_; }
  LaurentPoly2 coefficient(int m, int n) const;
  int order() const;
  bool is_zero() const { return terms_.empty(); }

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(cplx c, const DiffOp& a);
  friend DiffOp operator*(double c, const DiffOp& a) { return cplx(c) * a; }
  friend DiffOp operator*(const LaurentPoly2& p, const DiffOp& a);
  /// Operator product A B, expanded with the Leibniz rule.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);

  /// Largest coefficient difference after canonicalization.
  double max_abs_diff(const DiffOp& o) const;
  bool equals(const DiffOp& o, double tol = 1e-13) const { return max_abs_diff(o) <= tol; }
  std::string to_string() const;

 private:
  void require_same_chart(const DiffOp& o) const;
  void prune();
  Chart chart_;
  std::map<Key, LaurentPoly2> terms_;
};

DiffOp op_compose(const DiffOp& a, const DiffOp& b);
DiffOp op_commutator(const DiffOp& a, const DiffOp& b);

/// Symmetry generators {L3, L+, L-, T1, T2, 1}, the tilde set acting on the
/// image side, the equation operator K and the time derivative D.
struct GeneratorSet {
  FamilySpec params;
  Chart chart;
  DiffOp L3, Lplus, Lminus, T1, T2, unit;
  DiffOp L3_tilde, Lplus_tilde, Lminus_tilde, T1_tilde, T2_tilde;
  DiffOp K;  // dt - k(dx^2 - V) in the chart
  DiffOp D;  // dt in the chart
  cplx t_bracket{0.0};   // [T1, T2]
  cplx i3_weight{0.0};   // weight of the T-terms in the cubic Casimir
};

/// t, x chart; throws ZeroParameter for k = 0.
GeneratorSet generators_linear(cplx k, double alpha, double beta);
/// s = exp(2 k omega t), x chart; throws ZeroParameter for k = 0 or omega = 0.
GeneratorSet generators_quadratic(cplx k, double alpha, cplx omega);

/// L+ L- - L3^2 + L3.
DiffOp casimir_I2(const GeneratorSet& g);
/// -I2 + w {L3 (T1 T2 + T2 T1) + L+ T2 T2 + L- T1 T1} with w = k (linear)
/// or 1/(4 omega) (quadratic).
DiffOp casimir_I3(const GeneratorSet& g);

/// Largest coefficient defect of tilde(G) K - K G over the five generators.
double intertwine_defect(const GeneratorSet& g, const DiffOp& kop);
/// intertwine_defect <= tol. Throws FamilyMismatch when the charts differ.
bool intertwine_check(const GeneratorSet& g, const DiffOp& kop, double tol = 1e-13);

/// (op psi)(z). In the S chart powers of d/ds are rewritten through
/// s d/ds = (1/(2 k omega)) d/dt, so psi is still a function of (t, x).
/// Throws OrderError when op needs more than the available jet order.
cplx apply(const DiffOp& op, const SmoothFn& fn, const Point& z);

}  // namespace schroedsym
