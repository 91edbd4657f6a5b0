#include "schroedsym/residual.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "schroedsym/detail/formulas.hpp"
#include "schroedsym/errors.hpp"
#include "schroedsym/solutions.hpp"

namespace schroedsym {

void GridSpec::validate() const {
  if (nt < 1 || nx < 1) throw DomainError("grid counts must be positive");
  if (t_max < t_min || x_max < x_min) throw DomainError("grid ranges are reversed");
  if (!(h_fd > 0.0)) throw DomainError("finite-difference step must be positive");
}

namespace {

cplx potential_at(const FamilySpec& spec, const Point& z) {
  return detail::potential<cplx>(spec, std::span<const cplx>(z.x));
}

cplx nonlinear_term(const FamilySpec& spec, cplx psi) {
  return spec.family == Family::NLS2d ? -spec.k * spec.nls_coupling * std::norm(psi) * psi : 0.0;
}

Point shifted(const Point& z, int coord, double h) {
  Point s = z;
  if (coord < 0) {
    s.t += h;
  } else {
    s.x[coord] += h;
  }
  return s;
}

// The point and its 3h neighbourhood along every axis lie in the domain.
bool inside_guard_band(const SmoothFn& fn, const Point& z, double h) {
  const auto& contains = fn.domain().contains;
  if (!contains) return true;
  if (!contains(z)) return false;
  for (int c = -1; c < z.dim(); ++c) {
    if (!contains(shifted(z, c, 3.0 * h)) || !contains(shifted(z, c, -3.0 * h))) return false;
  }
  return true;
}

double linspace(double lo, double hi, int n, int i) {
  return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
}

void note_failure(ResidualReport& r, const Point& z, const std::exception& e) {
  if (r.failures++ == 0) {
    r.first_failure = e.what();
    r.argmax = z;
  }
}

}  // namespace

cplx residual_at(const SmoothFn& fn, const FamilySpec& spec, const Point& z) {
  if (!fn.has_jets()) throw OrderError(fn.name() + " has no analytic partials");
  cplx dt = 0.0, lap = 0.0, psi = 0.0;
  for (int j = 0; j < z.dim(); ++j) {
    const Jet4 g = fn.jet(z, j);
    if (j == 0) {
      psi = g.value();
      dt = g.partial(1, 0);
    }
    lap += g.partial(0, 2);
  }
  return dt - spec.k * lap + spec.k * potential_at(spec, z) * psi + nonlinear_term(spec, psi);
}

cplx residual_fd(const SmoothFn& fn, const FamilySpec& spec, const Point& z, double h) {
  const cplx psi = fn.value(z);
  const cplx dt = (fn.value(shifted(z, -1, h)) - fn.value(shifted(z, -1, -h))) / (2.0 * h);
  cplx lap = 0.0;
  for (int j = 0; j < z.dim(); ++j) {
    lap += (fn.value(shifted(z, j, h)) - 2.0 * psi + fn.value(shifted(z, j, -h))) / (h * h);
  }
  return dt - spec.k * lap + spec.k * potential_at(spec, z) * psi + nonlinear_term(spec, psi);
}

std::vector<Point> grid_points(const GridSpec& grid, int n) {
  grid.validate();
  std::vector<Point> pts;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (int it = 0; it < grid.nt; ++it) {
    const cplx t(linspace(grid.t_min, grid.t_max, grid.nt, it), grid.t_imag);
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<cplx> x(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) x[j] = linspace(grid.x_min, grid.x_max, grid.nx, idx[j]);
      pts.emplace_back(t, std::move(x));
      int j = 0;
      while (j < n && ++idx[j] == grid.nx) idx[j++] = 0;
      if (j == n) break;
    }
  }
  return pts;
}

ResidualReport grid_residual(const SmoothFn& fn, const FamilySpec& spec, const GridSpec& grid,
                             ResidualMode mode) {
  ResidualReport r;
  double err_h = 0.0, err_h2 = 0.0;
  const double h = grid.h_fd;
  for (const Point& z : grid_points(grid, fn.dim())) {
    if (!inside_guard_band(fn, z, h)) {
      ++r.skipped;
      continue;
    }
    try {
      const cplx psi = fn.value(z);
      cplx res;
      if (mode == ResidualMode::Analytic) {
        res = residual_at(fn, spec, z);
      } else {
        res = residual_fd(fn, spec, z, h);
        const cplx half = residual_fd(fn, spec, z, h / 2);
        const cplx ref = fn.has_jets() ? residual_at(fn, spec, z) : cplx(0.0);
        err_h = std::max(err_h, std::abs(res - ref));
        err_h2 = std::max(err_h2, std::abs(half - ref));
      }
      ++r.points;
      const double a = std::abs(res);
      const double rel = a / (std::abs(psi) + 1e-300);
      r.max_abs = std::max(r.max_abs, a);
      if (rel > r.max_rel || r.points == 1) {
        r.max_rel = std::max(rel, r.max_rel);
        if (r.failures == 0) r.argmax = z;
      }
    } catch (const Error& e) {
      note_failure(r, z, e);
    }
  }
  if (mode == ResidualMode::FiniteDifference && err_h > 0.0 && err_h2 > 0.0) {
    r.convergence_order = std::log2(err_h / err_h2);
  }
  return r;
}

SmoothFn transformed_solution(const SmoothFn& fn, const GroupElement& l, const FamilySpec& spec) {
  Domain dom{[fn, l, spec](const Point& z) {
               try {
                 const auto tr = detail::transform<cplx>(l, z.t, z.x, spec);
                 const Point zp(tr.t, tr.x);
                 return !fn.domain().contains || fn.domain().contains(zp);
               } catch (const Error&) {
                 return false;
               }
             },
             "preimage of " + fn.domain().description};
  return SmoothFn::from_generic(
      fn.name() + " transformed", fn.dim(),
      [fn, l, spec](const auto& t, auto x) {
        using T = std::decay_t<decltype(t)>;
        const auto tr = detail::transform<T>(l, t, x, spec);
        return tr.K * fn(tr.t, std::span<const T>(tr.x));
      },
      std::move(dom));
}

ResidualReport verify_transformed_solution(const SmoothFn& fn, const GroupElement& l,
                                           const FamilySpec& spec, const GridSpec& grid) {
  return grid_residual(transformed_solution(fn, l, spec), spec, grid, ResidualMode::Analytic);
}

ResidualReport verify_intertwining(const SmoothFn& fn, const GroupElement& l,
                                   const FamilySpec& spec, const GridSpec& grid) {
  if (spec.family == Family::NLS2d) throw FamilyMismatch("intertwining is a linear identity");
  const SmoothFn moved = transformed_solution(fn, l, spec);
  ResidualReport r;
  for (const Point& z : grid_points(grid, fn.dim())) {
    if (!inside_guard_band(moved, z, grid.h_fd)) {
      ++r.skipped;
      continue;
    }
    try {
      const cplx lhs = residual_at(moved, spec, z);
      const auto tr = detail::transform<cplx>(l, z.t, z.x, spec);
      const Point zp(tr.t, tr.x);
      const cplx rhs = tr.phidot * tr.K * residual_at(fn, spec, zp);
      const double diff = std::abs(lhs - rhs);
      const double scale = std::abs(rhs) + std::abs(tr.K * fn.value(zp)) + 1e-300;
      ++r.points;
      r.max_abs = std::max(r.max_abs, diff);
      if (diff / scale >= r.max_rel) {
        r.max_rel = diff / scale;
        if (r.failures == 0) r.argmax = z;
      }
    } catch (const Error& e) {
      note_failure(r, z, e);
    }
  }
  return r;
}

std::string_view to_string(SolutionMap m) {
  switch (m) {
    case SolutionMap::F1: return "f1";
    case SolutionMap::F2: return "f2";
    case SolutionMap::Phi1: return "phi1";
    case SolutionMap::Phi2: return "phi2";
    case SolutionMap::K0: return "K0";
  }
  return "unknown";
}

SolutionMap solution_map_from_string(std::string_view s) {
  for (auto m : {SolutionMap::F1, SolutionMap::F2, SolutionMap::Phi1, SolutionMap::Phi2,
                 SolutionMap::K0}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError("unknown solution map '" + std::string(s) + "'");
}

namespace {

template <class T>
struct MapImage {
  T factor, t, x;
};

// Multiplier and image point of each solution map.
template <class T>
MapImage<T> map_image(SolutionMap kind, const FamilySpec& spec, const IntertwinerParams& p,
                      const ExpPoly& weight, const T& t, const T& x) {
  const cplx k2b = spec.k * spec.k * spec.beta;
  switch (kind) {
    case SolutionMap::F1:
      return {weight.eval(t, x), t, x - k2b * t * t};
    case SolutionMap::F2:
      return {weight.eval(t, x), -1.0 / t, x / t - k2b * t};
    case SolutionMap::Phi1:
      return {weight.eval(t, x), t, x + k2b * t * t};
    case SolutionMap::Phi2:
      return {weight.eval(t, x), -1.0 / t, x / t + k2b / (t * t)};
    case SolutionMap::K0: {
      const auto m =
          detail::intertwiner_map(p.sigma, p.tau, p.lam, t, x, spec.k, spec.alpha, spec.omega);
      return {m.K, m.tp, m.xp};
    }
  }
  throw DomainError("unknown solution map");
}

ExpPoly map_weight(SolutionMap kind, const FamilySpec& spec, PhiCoefficients phi) {
  if (kind == SolutionMap::K0) return {};
  FamilySpec lin = FamilySpec::linear(spec.k, spec.alpha, spec.beta);
  switch (kind) {
    case SolutionMap::F1: return f1_exp_poly(lin);
    case SolutionMap::F2: return f2_exp_poly(lin);
    case SolutionMap::Phi1: return phi1_exp_poly(lin, phi);
    default: return phi2_exp_poly(lin, phi);
  }
}

}  // namespace

SmoothFn mapped_solution(const SmoothFn& psi, SolutionMap kind, const FamilySpec& spec,
                         const IntertwinerParams& params, PhiCoefficients phi) {
  if (psi.dim() != 1) throw ShapeError("solution maps act on one-dimensional functions");
  if (kind == SolutionMap::K0 && params.sigma == cplx(0.0)) {
    throw ZeroParameter("sigma must be non-zero");
  }
  const ExpPoly weight = map_weight(kind, spec, phi);
  const bool needs_t_nonzero = kind == SolutionMap::F2 || kind == SolutionMap::Phi2;
  Domain dom{[psi, kind, spec, params, weight, needs_t_nonzero](const Point& z) {
               if (needs_t_nonzero && z.t == cplx(0.0)) return false;
               try {
                 const auto im = map_image<cplx>(kind, spec, params, weight, z.t, z.x[0]);
                 return !psi.domain().contains || psi.domain().contains(Point(im.t, {im.x}));
               } catch (const Error&) {
                 return false;
               }
             },
             "preimage of " + psi.domain().description};
  return SmoothFn::from_generic(
      psi.name() + " via " + std::string(to_string(kind)), 1,
      [psi, kind, spec, params, weight](const auto& t, auto x) {
        using T = std::decay_t<decltype(t)>;
        const auto im = map_image<T>(kind, spec, params, weight, t, x[0]);
        const std::array<T, 1> xs{im.x};
        return im.factor * psi(im.t, std::span<const T>(xs));
      },
      std::move(dom));
}

ResidualReport verify_solution_map(const SmoothFn& psi0, SolutionMap kind,
                                   const IntertwinerParams& params, const FamilySpec& spec_from,
                                   const FamilySpec& spec_to, const GridSpec& grid,
                                   PhiCoefficients phi) {
  const bool to_free = kind == SolutionMap::Phi1 || kind == SolutionMap::Phi2;
  const FamilySpec& carrier = to_free ? spec_from : spec_to;
  return grid_residual(mapped_solution(psi0, kind, carrier, params, phi), spec_to, grid,
                       ResidualMode::Analytic);
}

double round_trip_deviation(const SmoothFn& psi0, SolutionMap forth, SolutionMap back,
                            const FamilySpec& linear_spec, const GridSpec& grid,
                            PhiCoefficients phi) {
  const SmoothFn there = mapped_solution(psi0, forth, linear_spec, {}, phi);
  const SmoothFn again = mapped_solution(there, back, linear_spec, {}, phi);
  std::vector<cplx> ratios;
  for (const Point& z : grid_points(grid, 1)) {
    if (!inside_guard_band(again, z, grid.h_fd) || !inside_guard_band(psi0, z, grid.h_fd)) continue;
    ratios.push_back(again.value(z) / psi0.value(z));
  }
  if (ratios.empty()) throw DomainError("no grid point inside both domains");
  cplx mean = 0.0;
  for (const cplx& r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double worst = 0.0;
  for (const cplx& r : ratios) worst = std::max(worst, std::abs(r / mean - 1.0));
  return worst;
}

}  // namespace schroedsym
