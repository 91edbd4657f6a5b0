#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schroedsym/family.hpp"
#include "schroedsym/group.hpp"
#include "schroedsym/multiplier.hpp"
#include "schroedsym/smooth_fn.hpp"
#include "schroedsym/solutions.hpp"

namespace schroedsym {

/// Tensor grid t in [t_min, t_max] (shifted by i t_imag) times [x_min, x_max]^n.
struct GridSpec {
  double t_min{0.5}, t_max{2.0};
  double x_min{-1.0}, x_max{1.0};
  int nt{5}, nx{5};
  double h_fd{1e-2};
  double t_imag{0.0};

  void validate() const;
};

struct ResidualReport {
  double max_abs{0.0};
  double max_rel{0.0};  // |residual| / (|psi| + 1e-300)
  Point argmax;
  std::optional<double> convergence_order;
  int points{0};    // points evaluated
  int skipped{0};   // points whose stencil leaves the domain (guard band)
  int failures{0};  // points where evaluation raised an error
  std::string first_failure;

  bool ok(double tol) const { return failures == 0 && points > 0 && max_rel <= tol; }
};

enum class ResidualMode { Analytic, FiniteDifference };

/// Residual of psi under dt - k(Delta - V); for NLS2d the operator is
/// dt - k Delta - k lambda |psi|^2.
cplx residual_at(const SmoothFn& fn, const FamilySpec& spec, const Point& z);

/// Same operator with centered second-order differences of step h.
cplx residual_fd(const SmoothFn& fn, const FamilySpec& spec, const Point& z, double h);

/// Grid points whose stencil (3h in every coordinate) lies in fn's domain.
std::vector<Point> grid_points(const GridSpec& grid, int n);

/// Max residual over the grid. Finite-difference mode also evaluates at h/2
/// and reports log2 of the error ratio as the convergence order (errors are
/// measured against the analytic residual when partials are available).
ResidualReport grid_residual(const SmoothFn& fn, const FamilySpec& spec, const GridSpec& grid,
                             ResidualMode mode = ResidualMode::Analytic);

/// psi'(Z) = K(Z|l) psi(l Z), with chain-rule partials.
SmoothFn transformed_solution(const SmoothFn& fn, const GroupElement& l, const FamilySpec& spec);

/// Residual of the transformed solution over the grid.
ResidualReport verify_transformed_solution(const SmoothFn& fn, const GroupElement& l,
                                           const FamilySpec& spec, const GridSpec& grid);

/// Checks, for any smooth psi,
///   (dt - k Delta + k V)[K psi(l .)](Z) = phidot K(Z) [(dt' - k Delta' + k V')psi](l Z)
/// and reports the relative difference of the two sides in max_rel.
ResidualReport verify_intertwining(const SmoothFn& fn, const GroupElement& l,
                                   const FamilySpec& spec, const GridSpec& grid);

/// Maps between equations:
///   F1, F2     free solution  -> linear-family solution
///   Phi1, Phi2 linear-family solution -> free solution
///   K0         free solution  -> quadratic-family solution
enum class SolutionMap { F1, F2, Phi1, Phi2, K0 };

std::string_view to_string(SolutionMap m);
SolutionMap solution_map_from_string(std::string_view s);

/// Builds the mapped function. `spec` carries k, alpha, beta (linear maps)
/// or k, alpha, omega (K0).
SmoothFn mapped_solution(const SmoothFn& psi, SolutionMap kind, const FamilySpec& spec,
                         const IntertwinerParams& params = {},
                         PhiCoefficients phi = PhiCoefficients::Derived);

/// Maps psi0 (a solution for spec_from) and residual-checks the result
/// against spec_to.
ResidualReport verify_solution_map(const SmoothFn& psi0, SolutionMap kind,
                                   const IntertwinerParams& params, const FamilySpec& spec_from,
                                   const FamilySpec& spec_to, const GridSpec& grid,
                                   PhiCoefficients phi = PhiCoefficients::Derived);

/// max |r/mean(r) - 1| over the grid for r = back(forth(psi0)) / psi0.
/// A constant ratio means the round trip reproduces psi0 up to a factor.
double round_trip_deviation(const SmoothFn& psi0, SolutionMap forth, SolutionMap back,
                            const FamilySpec& linear_spec, const GridSpec& grid,
                            PhiCoefficients phi = PhiCoefficients::Derived);

}  // namespace schroedsym
