#pragma once

#include <array>

#include "schroedsym/jet.hpp"

namespace schroedsym {

inline constexpr double kDetTolerance = 1e-12;

/// Unimodular 2x2 matrix stored in the layout [[c, d], [a, b]].
///
/// The time action is t -> (ct + d)/(at + b), so the entries are always
/// addressed by name; there is no row/column accessor on purpose.
struct Mat2 {
  cplx c{1.0}, d{0.0}, a{0.0}, b{1.0};

  static Mat2 identity() { return {}; }
  cplx det() const { return c * b - a * d; }
  Mat2 operator*(const Mat2& o) const {
    return {c * o.c + d * o.a, c * o.d + d * o.b, a * o.c + b * o.a, a * o.d + b * o.b};
  }
  /// Inverse of a unimodular matrix: [[b, -d], [-a, c]].
  Mat2 inverse() const { return {b, -d, -a, c}; }
  Mat2 transpose() const { return {c, a, d, b}; }
  bool is_real(double tol = 0.0) const;
  double max_abs_diff(const Mat2& o) const;
};

/// Element {M, (mu, nu)} of SL(2) semidirect the translations T2.
class GroupElement {
 public:
  /// Identity element.
  GroupElement() = default;

  const Mat2& m() const { return m_; }
  cplx mu() const { return mu_; }
  cplx nu() const { return nu_; }
  cplx a() const { return m_.a; }
  cplx b() const { return m_.b; }
  cplx c() const { return m_.c; }
  cplx d() const { return m_.d; }

  bool is_real(double tol = 0.0) const;
  double distance(const GroupElement& o) const;

 private:
  friend GroupElement make_element(const Mat2&, cplx, cplx);
  friend GroupElement make_element_unchecked(const Mat2&, cplx, cplx);
  Mat2 m_{};
  cplx mu_{0.0};
  cplx nu_{0.0};
};

/// Validates det M = 1 within kDetTolerance; throws DeterminantError.
GroupElement make_element(const Mat2& m, cplx mu = 0.0, cplx nu = 0.0);
/// Skips the determinant check; for products of already-valid elements.
GroupElement make_element_unchecked(const Mat2& m, cplx mu, cplx nu);

GroupElement identity_element();
GroupElement time_translation(cplx lambda);
GroupElement dilatation(cplx c);

/// {M M', (mu, nu) + M (mu', nu')}.
GroupElement compose(const GroupElement& l1, const GroupElement& l2);
/// {M^-1, -M^-1 (mu, nu)}.
GroupElement inverse(const GroupElement& l);

struct CocycleValue {
  cplx value{0.0};
};

/// (1/4k){(mu a - nu c) mu' + (mu b - nu d) nu'}; throws ZeroParameter for k = 0.
CocycleValue cocycle_linear(const GroupElement& l1, const GroupElement& l2, cplx k);
/// Same number computed as (mu, nu)^T J M (mu', nu') / 4k.
CocycleValue cocycle_linear_matrix_form(const GroupElement& l1, const GroupElement& l2, cplx k);

/// Two readings of the second term of the quadratic-potential cocycle:
/// (mu b - nu d) nu' (Corrected) and (mu b - nu a) nu' (Printed). Only the
/// first satisfies the multiplier product identity.
enum class QuadraticCocycleVariant { Corrected, Printed };

CocycleValue cocycle_quadratic(const GroupElement& l1, const GroupElement& l2, cplx omega,
                               QuadraticCocycleVariant variant = QuadraticCocycleVariant::Corrected);

/// J = [[0, 1], [-1, 0]].
Mat2 symplectic_j();

struct DiskParams {
  double theta{0.0};
  cplx lam{0.0};
};

/// Unit-circle preserving element: a = -conj(lam) e^{i theta}/sqrt(1-|lam|^2),
/// b = e^{-i theta}/sqrt(1-|lam|^2), c = conj(b), d = conj(a). The
/// translation is (mu, -conj(mu)), which keeps x' real for imaginary k*omega.
/// Throws DomainError when |lam| >= 1.
GroupElement disk_parametrize(const DiskParams& p, cplx mu = 0.0);

/// True when the element has the disk shape c = conj(b), d = conj(a) and
/// translations with conj(mu) = -nu.
bool is_disk_element(const GroupElement& l, double tol = 1e-10);

/// Real element with a, b, c, d >= 0.
bool is_semigroup_admissible(const GroupElement& l);

}  // namespace schroedsym
