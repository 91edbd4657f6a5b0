// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <regex>
#include <string>
#include <vector>

#include "schroedsym/residual.hpp"
#include "schroedsym/suite.hpp"

using namespace schroedsym;

namespace {

struct Outcome {
  bool pass;
  std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Every check whose name starts with one of the prefixes must pass, at least
// `min_count` must match, and their summed run time must stay under `limit`.
Outcome checks_pass(const SuiteReport& report, const std::vector<std::string>& prefixes,
                    std::size_t min_count, double limit = 0.0) {
  std::size_t matched = 0;
  double secs = 0.0;
  std::string failed;
  for (const auto& c : report.checks) {
    bool hit = false;
    for (const auto& p : prefixes) hit = hit || starts_with(c.name, p);
    if (!hit) continue;
    ++matched;
    secs += c.seconds;
    if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name + "=" + format_number(c.value);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu checks, %.2f s", matched, secs);
  std::string note = buf;
  bool ok = failed.empty() && matched >= min_count;
  if (!failed.empty()) note += "; failed: " + failed;
  if (matched < min_count) note += "; expected at least " + std::to_string(min_count);
  if (limit > 0.0 && secs >= limit) {
    ok = false;
    note += "; over the " + format_number(limit) + " s limit";
  }
  return {ok, note};
}

SmoothFn probe_function(int dim) {
  return SmoothFn::from_generic("probe", dim, [](const auto& t, auto x) {
    using std::cos;
    using std::exp;
    auto s = 0.3 * t;
    for (std::size_t j = 0; j < x.size(); ++j) s = s + (0.5 + 0.2 * static_cast<double>(j)) * x[j];
    return exp(s) + cos(t * x[0]);
  });
}

// The intertwining probe must really be a non-solution of every family.
Outcome probe_is_not_a_solution(const RunConfig& cfg) {
  double smallest = 1e300;
  for (Family f : {Family::Free, Family::InverseQuadratic, Family::Linear, Family::Quadratic,
                   Family::NdimLinear}) {
    const FamilySpec spec = cfg.spec_for(f);
    const int dim = f == Family::NdimLinear ? static_cast<int>(spec.ajk.size()) : 1;
    GridSpec g;
    g.x_min = 0.2;
    g.x_max = 2.0;
    const auto r = grid_residual(probe_function(dim), spec, g);
    smallest = std::min(smallest, r.max_rel);
  }
  return {smallest > 1e-3, "probe residual >= " + format_number(smallest)};
}

std::string strip_seconds(const std::string& json) {
  static const std::regex field(R"("seconds":[^,}]*)");
  return std::regex_replace(json, field, "\"seconds\":0");
}

Outcome combine(Outcome a, const Outcome& b) {
  return {a.pass && b.pass, a.note + "; " + b.note};
}

}  // namespace

int main() {
  const RunConfig cfg;

  auto start = std::chrono::steady_clock::now();
  const SuiteReport all = run_suite("all", cfg);
  const double all_secs = seconds_since(start);
  const SuiteReport again = run_suite("all", cfg);
  const bool identical = strip_seconds(format_report(all, ReportFormat::Json)) ==
                         strip_seconds(format_report(again, ReportFormat::Json));

  struct Criterion {
    const char* title;
    std::function<Outcome()> eval;
  };
  const std::vector<Criterion> criteria = {
      {"group laws on 1000 random elements (tol 1e-12, < 1 s)",
       [&] {
         return checks_pass(all,
                            {"group.associativity", "group.inverse", "group.cycle_condition.",
                             "group.antisymmetry", "group.symplectic"},
                            6, 1.0);
       }},
      {"multiplier cocycles on 500 random pairs per family (rel tol 1e-10, < 5 s)",
       [&] { return checks_pass(all, {"multiplier.cocycle.", "multiplier.quadratic_variant"}, 7, 5.0); }},
      {"transformed solutions, 100 elements per family on 200-point grids (< 1e-9, < 20 s)",
       [&] { return checks_pass(all, {"residual.transformed."}, 6, 20.0); }},
      {"intertwining identity on non-solutions (< 1e-9)",
       [&] { return combine(checks_pass(all, {"residual.intertwining."}, 5), probe_is_not_a_solution(cfg)); }},
      {"maps between equations and round trips (< 1e-9), phi coefficients by inversion",
       [&] { return checks_pass(all, {"residual.maps.", "residual.round_trip."}, 8); }},
      {"Lie algebra tables, K and D identities, operator intertwining (coefficients 1e-13)",
       [&] {
         return checks_pass(all,
                            {"liealg.linear.commutators", "liealg.quadratic.commutators",
                             "liealg.linear.k_", "liealg.quadratic.k_", "liealg.linear.time_derivative",
                             "liealg.quadratic.time_derivative", "liealg.linear.intertwining",
                             "liealg.quadratic.intertwining", "liealg.linear.jacobi",
                             "liealg.quadratic.jacobi"},
                            15);
       }},
      {"Casimir operators exact, eigenrelations at 50 random points (1e-10)",
       [&] { return checks_pass(all, {"liealg.linear.casimir_", "liealg.quadratic.casimir_", "liealg.linear.eigen.",
                                      "liealg.quadratic.eigen."}, 9); }},
      {"theta function equation and modular phase, Airy boundary roots (1e-3)",
       [&] {
         return checks_pass(all, {"solutions.residual.theta", "solutions.theta_modular", "solutions.airy_"}, 4);
       }},
      {"nonlinear equation: multiplier modulus and transformed plane waves (< 1e-9)",
       [&] {
         return checks_pass(all, {"multiplier.nls_modulus", "residual.transformed.nls2d",
                                  "solutions.residual.plane_wave"}, 3);
       }},
      {"full run under 60 s, json reproducible for a fixed seed",
       [&] {
         char buf[64];
         std::snprintf(buf, sizeof buf, "%zu checks, %.2f s", all.checks.size(), all_secs);
         Outcome o{all.all_pass() && all_secs < 60.0 && identical, buf};
         if (!all.all_pass()) o.note += "; " + std::to_string(all.failures()) + " failed";
         if (!identical) o.note += "; json differs between runs";
         return o;
       }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = criteria[i].eval();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title, o.note.c_str());
  }
  return failed == 0 ? 0 : 1;
}
