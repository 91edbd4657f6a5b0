#include "schroedsym/family.hpp"

#include <cmath>

#include "schroedsym/errors.hpp"

namespace schroedsym {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Free: return "free";
    case Family::InverseQuadratic: return "inverse-quadratic";
    case Family::Linear: return "linear";
    case Family::Quadratic: return "quadratic";
    case Family::NdimLinear: return "ndim-linear";
    case Family::NLS2d: return "nls2d";
  }
  return "unknown";
}

Family family_from_string(std::string_view s) {
  for (Family f : {Family::Free, Family::InverseQuadratic, Family::Linear, Family::Quadratic,
                   Family::NdimLinear, Family::NLS2d}) {
    if (s == to_string(f)) return f;
  }
  throw ConfigError("unknown family '" + std::string(s) + "'");
}

FamilySpec FamilySpec::free(cplx k, int n) {
  FamilySpec s;
  s.family = Family::Free;
  s.k = k;
  s.n = n;
  return s;
}

FamilySpec FamilySpec::inverse_quadratic(cplx k, double alpha, int n) {
  FamilySpec s;
  s.family = Family::InverseQuadratic;
  s.k = k;
  s.alpha = alpha;
  s.n = n;
  return s;
}

FamilySpec FamilySpec::linear(cplx k, double alpha, double beta) {
  FamilySpec s;
  s.family = Family::Linear;
  s.k = k;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

FamilySpec FamilySpec::quadratic(cplx k, double alpha, cplx omega) {
  FamilySpec s;
  s.family = Family::Quadratic;
  s.k = k;
  s.alpha = alpha;
  s.omega = omega;
  return s;
}

FamilySpec FamilySpec::ndim_linear(cplx k, double alpha, double beta,
                                   std::vector<std::vector<double>> ajk) {
  FamilySpec s;
  s.family = Family::NdimLinear;
  s.k = k;
  s.alpha = alpha;
  s.beta = beta;
  s.n = static_cast<int>(ajk.size());
  s.ajk = std::move(ajk);
  return s;
}

FamilySpec FamilySpec::nls2d(cplx k, double coupling) {
  FamilySpec s;
  s.family = Family::NLS2d;
  s.k = k;
  s.n = 2;
  s.nls_coupling = coupling;
  return s;
}

bool FamilySpec::k_is_imaginary(double tol) const { return std::abs(k.real()) <= tol * std::abs(k); }
bool FamilySpec::k_is_real(double tol) const { return std::abs(k.imag()) <= tol * std::abs(k); }

void FamilySpec::validate() const {
  if (k == cplx(0.0)) throw ZeroParameter("k must be non-zero");
  if (!k_is_real(1e-12) && !k_is_imaginary(1e-12)) {
    throw DomainError("k must be real or purely imaginary");
  }
  if (n < 1) throw DomainError("dimension n must be >= 1");
  switch (family) {
    case Family::Linear:
    case Family::Quadratic:
      if (n != 1) throw DomainError("linear and quadratic families are one-dimensional");
      if (family == Family::Quadratic && omega == cplx(0.0)) {
        throw ZeroParameter("omega must be non-zero");
      }
      break;
    case Family::NdimLinear:
      if (static_cast<int>(ajk.size()) != n) throw DomainError("ajk must be n x n");
      for (int j = 0; j < n; ++j) {
        if (static_cast<int>(ajk[j].size()) != n) throw DomainError("ajk must be n x n");
        if (ajk[j][j] != 0.0) throw DomainError("ajk must have a zero diagonal");
        for (int i = 0; i < j; ++i) {
          if (ajk[i][j] != ajk[j][i]) throw DomainError("ajk must be symmetric");
        }
      }
      break;
    case Family::NLS2d:
      if (n != 2) throw DomainError("the nonlinear family is two-dimensional");
      break;
    default:
      break;
  }
}

bool Point::is_real(double tol) const {
  if (std::abs(t.imag()) > tol) return false;
  for (const auto& v : x) {
    if (std::abs(v.imag()) > tol) return false;
  }
  return true;
}

}  // namespace schroedsym
