#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "chanpred/experiment.hpp"
#include "chanpred/meta_online.hpp"
#include "selftest.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "TOML config file (defaults apply if omitted)");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "override the base seed");
  cmd->add_option("--jobs", opts.jobs, "worker threads (1 = serial)");
}

chanpred::ExperimentConfig resolve_config(const CommonOptions& opts,
                                          chanpred::ExperimentMode mode) {
  chanpred::ConfigOverrides overrides;
  overrides.mode = mode;
  overrides.seed = opts.seed;
  overrides.jobs = opts.jobs;
  if (!opts.config_path.empty()) {
    return chanpred::load_config(opts.config_path, overrides);
  }
  chanpred::ExperimentConfig cfg = chanpred::default_config(mode);
  if (opts.seed) {
    cfg.base_seed = *opts.seed;
  }
  if (opts.jobs) {
    cfg.jobs = *opts.jobs;
  }
  cfg.validate();
  return cfg;
}

void print_summary(const std::vector<chanpred::MetricRecord>& records) {
  std::map<std::string, std::pair<double, int>> by_scheme;
  for (const auto& r : records) {
    auto& cell = by_scheme[r.scheme];
    cell.first += r.mse;
    cell.second += 1;
  }
  std::cout << "mean MSE by scheme:\n";
  for (const auto& [scheme, cell] : by_scheme) {
    std::cout << "  " << scheme << ": " << cell.first / cell.second << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meta-learned linear prediction of flat-fading channels"};
  app.require_subcommand(1);

  CommonOptions offline_opts, online_opts, genie_opts;
  auto* offline = app.add_subcommand(
      "offline", "closed-form meta-learning vs baselines over a pilot-count sweep");
  add_common(offline, offline_opts);
  auto* online = app.add_subcommand(
      "online", "streaming meta-learning over a frame sequence");
  add_common(online, online_opts);
  auto* genie = app.add_subcommand(
      "genie-check", "analytic vs Monte Carlo error of the spectrum-aware predictor");
  add_common(genie, genie_opts);
  auto* selftest = app.add_subcommand(
      "selftest", "run the built-in oracle suite and report pass/fail");

  CLI11_PARSE(app, argc, argv);

  try {
    if (offline->parsed()) {
      const auto cfg = resolve_config(offline_opts, chanpred::ExperimentMode::Offline);
      const auto records = chanpred::run_offline_experiment(cfg);
      const auto csv = chanpred::emit_outputs(records, offline_opts.out_dir, "offline");
      print_summary(records);
      std::cout << "wrote " << csv.string() << "\n";
    } else if (online->parsed()) {
      const auto cfg = resolve_config(online_opts, chanpred::ExperimentMode::Online);
      const auto result = chanpred::run_online_experiment(cfg);
      const auto csv = chanpred::emit_outputs(result.records, online_opts.out_dir, "online");
      const auto trace_path =
          std::filesystem::path(online_opts.out_dir) / "online_trace.csv";
      chanpred::export_online_trace_csv(result.trace, trace_path);
      print_summary(result.records);
      std::cout << "wrote " << csv.string() << "\n";
      std::cout << "wrote " << trace_path.string() << "\n";
    } else if (genie->parsed()) {
      const auto cfg = resolve_config(genie_opts, chanpred::ExperimentMode::GenieCheck);
      const auto records = chanpred::run_genie_check(cfg);
      const auto csv = chanpred::emit_outputs(records, genie_opts.out_dir, "genie_check");
      for (const auto& r : records) {
        std::cout << r.scheme << " N=" << r.sweep << ": " << r.mse << "\n";
      }
      std::cout << "wrote " << csv.string() << "\n";
    } else if (selftest->parsed()) {
      return chanpred::selftest::run_all(std::cout) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
