#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schroedsym/family.hpp"
#include "schroedsym/group.hpp"
#include "schroedsym/residual.hpp"

namespace schroedsym {

enum class ReportFormat { Text, Json };

/// Per-field grid overrides; unset fields keep the check's own grid.
struct GridOverrides {
  std::optional<double> t_min, t_max, x_min, x_max, h_fd, t_imag;
  std::optional<int> nt, nx;
  bool any() const;
  GridSpec applied_to(GridSpec g) const;
};

/// Settings for a verification run. Unset parameters fall back to the
/// per-family defaults used by the suite.
struct RunConfig {
  std::optional<Family> family;  // restrict family-specific checks
  std::optional<cplx> k;
  std::optional<double> alpha, beta;
  std::optional<cplx> omega;
  std::optional<int> n;
  GridOverrides grid;            // applied to the grids of the residual checks
  double tol{1e-9};              // residual-type checks
  std::uint64_t seed{20240601};
  std::optional<int> trials;     // overrides every random trial count
  ReportFormat format{ReportFormat::Text};
  std::string out;               // empty: stdout

  /// Throws ConfigError on non-positive tolerances or trial counts.
  void validate() const;
  /// Default parameters of `f`, with the overrides above applied.
  FamilySpec spec_for(Family f) const;
  bool wants(Family f) const { return !family || *family == f; }
};

/// Parses "1.5", "-2i", "0.5+1i", "1-0.25i". Throws ConfigError.
cplx parse_complex(std::string_view s);
ReportFormat report_format_from_string(std::string_view s);

/// Applies one key=value setting (the long flag names without dashes, plus
/// t_min, t_max, x_min, x_max, nt, nx, h_fd, t_imag for the grid).
/// Throws ConfigError naming the key.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
/// Reads key=value lines; blank lines and '#' comments are ignored.
/// Throws ConfigError with the line number on a bad line.
RunConfig load_config_file(const std::string& path, RunConfig base = {});
RunConfig load_config_stream(std::istream& in, const std::string& origin, RunConfig base = {});

struct CheckResult {
  std::string name;
  std::string anchor;   // the identity or statement being checked
  bool pass{false};
  double value{0.0};    // measured defect (NaN when the check raised)
  double tol{0.0};
  double seconds{0.0};
  std::string detail;   // error text for checks that raised; text format only
};

struct SuiteReport {
  std::vector<CheckResult> checks;  // sorted by name
  bool all_pass() const;
  int failures() const;
};

/// Targets: group, coords, multiplier, solutions, residual, liealg, all.
/// Throws ConfigError for an unknown target.
SuiteReport run_suite(std::string_view target, const RunConfig& cfg);
std::vector<std::string> suite_targets();

/// Text: aligned columns. Json: one object per line with the fields
/// name, anchor, pass, value, tol, seconds; numbers with 17 significant digits.
std::string format_report(const SuiteReport& report, ReportFormat format);
/// Number formatting used by the reports (locale independent).
std::string format_number(double v);

/// Which closed-form solution a demo transforms.
/// f1, f2 (linear); g1, g2, g3 (quadratic); gaussian (free); theta (free,
/// theta k); power (inverse-quadratic); plane-wave (nls2d); pair (ndim-linear).
std::vector<std::string> demo_solutions();

struct DemoRecord {
  cplx t{0.0};
  std::vector<double> x;
  cplx value{0.0};
  double residual{0.0};  // |residual| / |value|
};

/// Samples K(Z|l) psi(l Z) over the grid. The family comes from the
/// solution. Points outside the domain are left out. Throws ConfigError
/// for an unknown solution and DomainError when no point is usable.
std::vector<DemoRecord> demo_transform(const RunConfig& cfg, const GroupElement& l,
                                       std::string_view solution);
/// "t_re t_im x... re im residual" lines with 17 significant digits.
std::string format_demo(const std::vector<DemoRecord>& records);

/// Parses "c,d,a,b" or "c,d,a,b,mu,nu" (complex entries allowed).
GroupElement parse_element(std::string_view s);

}  // namespace schroedsym
