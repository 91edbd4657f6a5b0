#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "schroedsym/jet.hpp"

namespace schroedsym {

enum class Family { Free, InverseQuadratic, Linear, Quadratic, NdimLinear, NLS2d };

std::string_view to_string(Family f);
/// Accepts the lower-case names used on the command line (free,
/// inverse-quadratic, linear, quadratic, ndim-linear, nls2d).
Family family_from_string(std::string_view s);

/// Potential family plus its parameters.
///
/// V depends on the family:
///   Free              0
///   InverseQuadratic  alpha / |x|^2
///   Linear            alpha + beta x
///   Quadratic         alpha + omega^2 x^2
///   NdimLinear        sum_j (alpha + beta x_j) + sum_{j,k} ajk[j][k] / (x_j - x_k)^2
///   NLS2d             -nls_coupling |psi|^2 (nonlinear, n = 2)
struct FamilySpec {
  Family family{Family::Free};
  cplx k{1.0};
  double alpha{0.0};
  double beta{0.0};
  cplx omega{1.0};
  int n{1};
  std::vector<std::vector<double>> ajk;  // NdimLinear only; symmetric, zero diagonal
  double nls_coupling{1.0};              // NLS2d only

  static FamilySpec free(cplx k, int n = 1);
  static FamilySpec inverse_quadratic(cplx k, double alpha, int n = 1);
  static FamilySpec linear(cplx k, double alpha, double beta);
  static FamilySpec quadratic(cplx k, double alpha, cplx omega);
  static FamilySpec ndim_linear(cplx k, double alpha, double beta,
                                std::vector<std::vector<double>> ajk);
  static FamilySpec nls2d(cplx k, double coupling);

  /// Throws ZeroParameter / DomainError on violated invariants.
  void validate() const;

  bool k_is_imaginary(double tol = 1e-14) const;
  bool k_is_real(double tol = 1e-14) const;
};

/// Coordinates Z = {t, x_1..x_n}. Real families keep zero imaginary parts;
/// complex values appear in quadratic branch analysis and the theta function.
struct Point {
  cplx t{0.0};
  std::vector<cplx> x;

  Point() = default;
  Point(cplx t_, std::vector<cplx> x_) : t(t_), x(std::move(x_)) {}
  Point(cplx t_, std::initializer_list<cplx> x_) : t(t_), x(x_) {}

  int dim() const { return static_cast<int>(x.size()); }
  bool is_real(double tol = 0.0) const;
};

}  // namespace schroedsym
