// schroedsym verify <target> [flags]
// schroedsym demo-transform --solution NAME --element c,d,a,b[,mu,nu] [flags]
//
// Exit codes: 0 all checks pass, 1 a check failed or the run raised,
// 2 bad configuration.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "schroedsym/errors.hpp"
#include "schroedsym/suite.hpp"

namespace {

using schroedsym::ConfigError;
using schroedsym::RunConfig;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

// Flag name -> config key. Values stay strings so flags and the config
// file go through the same parser.
const std::vector<std::pair<std::string, std::string>> kSettingFlags = {
    {"--family", "family"}, {"--k", "k"},         {"--alpha", "alpha"},   {"--beta", "beta"},
    {"--omega", "omega"},   {"--n", "n"},         {"--seed", "seed"},     {"--trials", "trials"},
    {"--tol", "tol"},       {"--format", "format"}, {"--out", "out"},     {"--t-min", "t_min"},
    {"--t-max", "t_max"},   {"--x-min", "x_min"}, {"--x-max", "x_max"},   {"--nt", "nt"},
    {"--nx", "nx"},         {"--h-fd", "h_fd"},   {"--t-imag", "t_imag"}};

struct Settings {
  std::string config_path;
  std::map<std::string, std::string> values;  // key -> raw value
  std::vector<CLI::Option*> options;
};

void add_setting_flags(CLI::App* app, Settings& s) {
  app->add_option("--config", s.config_path, "key=value file; flags override it");
  for (const auto& [flag, key] : kSettingFlags) {
    s.options.push_back(app->add_option(flag, s.values[key]));
  }
}

RunConfig build_config(const Settings& s) {
  RunConfig cfg;
  if (!s.config_path.empty()) cfg = schroedsym::load_config_file(s.config_path);
  for (std::size_t i = 0; i < kSettingFlags.size(); ++i) {
    if (s.options[i]->count() == 0) continue;
    const std::string& key = kSettingFlags[i].second;
    schroedsym::apply_setting(cfg, key, s.values.at(key));
  }
  cfg.validate();
  return cfg;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-group verification for Schroedinger-type equations"};
  app.require_subcommand(1);

  Settings verify_settings;
  std::string target;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("target", target, "group, coords, multiplier, solutions, residual, liealg or all")
      ->required()
      ->check(CLI::IsMember(schroedsym::suite_targets()));
  add_setting_flags(verify, verify_settings);

  Settings demo_settings;
  std::string solution, element;
  auto* demo = app.add_subcommand("demo-transform", "sample a transformed solution over a grid");
  demo->add_option("--solution", solution, "closed-form solution to transform")
      ->required()
      ->check(CLI::IsMember(schroedsym::demo_solutions()));
  demo->add_option("--element", element, "c,d,a,b[,mu,nu] with c b - a d = 1")->required();
  add_setting_flags(demo, demo_settings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg = build_config(verify->parsed() ? verify_settings : demo_settings);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (verify->parsed()) {
      const auto report = schroedsym::run_suite(target, cfg);
      write_output(cfg.out, schroedsym::format_report(report, cfg.format));
      return report.all_pass() ? 0 : kExitFail;
    }
    const auto l = schroedsym::parse_element(element);
    const auto records = schroedsym::demo_transform(cfg, l, solution);
    write_output(cfg.out, schroedsym::format_demo(records));
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
