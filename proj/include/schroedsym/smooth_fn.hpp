#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schroedsym/errors.hpp"
#include "schroedsym/family.hpp"
#include "schroedsym/jet.hpp"

namespace schroedsym {

/// Where a function may be evaluated, plus a human readable description.
struct Domain {
  std::function<bool(const Point&)> contains;
  std::string description{"all points"};

  static Domain everywhere() { return {[](const Point&) { return true; }, "all points"}; }
  static Domain t_positive() { return {[](const Point& z) { return z.t.real() > 0.0; }, "t > 0"}; }
  static Domain x_positive() {
    return {[](const Point& z) { return z.x[0].real() > 0.0; }, "x > 0"};
  }
  static Domain im_t_positive() {
    return {[](const Point& z) { return z.t.imag() > 0.0; }, "Im t > 0"};
  }
  static Domain intersect(const Domain& a, const Domain& b);
};

/// psi(t, x_1..x_n) with exact partial derivatives.
///
/// Stored as two instantiations of one generic formula: a plain complex one
/// and one on Jet4, which carries derivatives up to total order 4 in t and
/// one active spatial coordinate. Jet arguments may themselves be arbitrary
/// jets, so composing with a coordinate map gives chain-rule partials for
/// free.
class SmoothFn {
 public:
  using ValueFn = std::function<cplx(const cplx&, std::span<const cplx>)>;
  using JetFn = std::function<Jet4(const Jet4&, std::span<const Jet4>)>;

  SmoothFn() = default;
  SmoothFn(std::string name, int dim, ValueFn value, JetFn jet, Domain domain);

  /// Builds both instantiations from one generic callable
  /// `f(const T& t, std::span<const T> x) -> T`.
  template <class F>
  static SmoothFn from_generic(std::string name, int dim, F f, Domain domain = Domain::everywhere()) {
    return SmoothFn(
        std::move(name), dim,
        [f](const cplx& t, std::span<const cplx> x) -> cplx { return f(t, x); },
        [f](const Jet4& t, std::span<const Jet4> x) -> Jet4 { return f(t, x); }, std::move(domain));
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Domain& domain() const { return domain_; }
  bool has_jets() const { return static_cast<bool>(jet_); }

  cplx operator()(const cplx& t, std::span<const cplx> x) const { return value_(t, x); }
  Jet4 operator()(const Jet4& t, std::span<const Jet4> x) const;

  /// Value at z; throws DomainError outside the declared domain.
  cplx value(const Point& z) const;

  /// Jet in (t, x_j) around z: t and x_j seeded as variables, the other
  /// coordinates held fixed.
  Jet4 jet(const Point& z, int j) const;

  /// d^dt/dt^dt d^dx/dx_j^dx psi at z, with dt + dx <= 4.
  cplx partial(const Point& z, int dt, int j, int dx) const;

  /// Returns a copy with a different domain (e.g. a grid guard band).
  SmoothFn with_domain(Domain d) const;

  /// Returns a copy without the Jet instantiation (value only).
  SmoothFn value_only() const;

 private:
  void require_domain(const Point& z) const;

  std::string name_;
  int dim_{1};
  ValueFn value_;
  JetFn jet_;
  Domain domain_{Domain::everywhere()};
};

/// Jet seed helpers used by evaluators and tests.
std::vector<Jet4> seed_coordinates(const Point& z, int active);

}  // namespace schroedsym
