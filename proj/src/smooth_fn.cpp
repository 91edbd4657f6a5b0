#include "schroedsym/smooth_fn.hpp"

namespace schroedsym {

Domain Domain::intersect(const Domain& a, const Domain& b) {
  return {[a, b](const Point& z) { return a.contains(z) && b.contains(z); },
          a.description + " and " + b.description};
}

SmoothFn::SmoothFn(std::string name, int dim, ValueFn value, JetFn jet, Domain domain)
    : name_(std::move(name)),
      dim_(dim),
      value_(std::move(value)),
      jet_(std::move(jet)),
      domain_(std::move(domain)) {}

Jet4 SmoothFn::operator()(const Jet4& t, std::span<const Jet4> x) const {
  if (!jet_) throw OrderError(name_ + " has no analytic partials");
  return jet_(t, x);
}

void SmoothFn::require_domain(const Point& z) const {
  if (z.dim() != dim_) throw ShapeError(name_ + ": point has the wrong dimension");
  if (domain_.contains && !domain_.contains(z)) {
    throw DomainError(name_ + ": point outside " + domain_.description);
  }
}

cplx SmoothFn::value(const Point& z) const {
  require_domain(z);
  return value_(z.t, z.x);
}

std::vector<Jet4> seed_coordinates(const Point& z, int active) {
  std::vector<Jet4> x;
  x.reserve(z.x.size());
  for (int j = 0; j < z.dim(); ++j) {
    x.push_back(j == active ? Jet4::variable(z.x[j], 1) : Jet4(z.x[j]));
  }
  return x;
}

Jet4 SmoothFn::jet(const Point& z, int j) const {
  require_domain(z);
  if (j < 0 || j >= dim_) throw ShapeError("active coordinate out of range");
  const auto x = seed_coordinates(z, j);
  return (*this)(Jet4::variable(z.t, 0), x);
}

cplx SmoothFn::partial(const Point& z, int dt, int j, int dx) const {
  if (dt < 0 || dx < 0 || dt + dx > kJetOrder) throw OrderError("partial order out of range");
  return jet(z, j).partial(dt, dx);
}

SmoothFn SmoothFn::with_domain(Domain d) const {
  SmoothFn out = *this;
  out.domain_ = std::move(d);
  return out;
}

SmoothFn SmoothFn::value_only() const {
  SmoothFn out = *this;
  out.jet_ = nullptr;
  return out;
}

}  // namespace schroedsym
