#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chanpred/channel.hpp"
#include "chanpred/csv.hpp"
#include "chanpred/dataset.hpp"
#include "chanpred/meta_offline.hpp"
#include "chanpred/meta_online.hpp"
#include "chanpred/spectrum.hpp"

namespace chanpred {

enum class ExperimentMode { Offline, Online, GenieCheck };
enum class ChannelModelKind { MixedDoppler, Scm };

// Per-frame spectrum family mix: a fair pick among the enabled families with
// a normalized maximum Doppler drawn uniformly from [lo, hi] cycles/slot.
struct MixedDopplerConfig {
  bool jakes = true;
  bool rounded = true;
  double doppler_lo = 0.05;
  double doppler_hi = 0.10;
};

struct GenieCheckConfig {
  std::string spectrum = "jakes";  // jakes | rounded | flat
  double doppler = 0.05;           // cycles/slot
  std::vector<int> windows = {1, 2, 3, 4, 5, 6, 7, 8};
  int lag = 1;
  long eval_samples = 100000;
};

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::Offline;

  int window = 5;
  int lag = 3;

  // offline
  int meta_frames = 80;
  std::vector<int> l_new_sweep = {1, 2, 5, 10, 20, 50, 100};
  int l_te = 100;
  int eval_samples = 100;  // evaluation pairs per replicate
  int replicates = 100;    // offline default; online defaults to 10

  ChannelModelKind channel = ChannelModelKind::MixedDoppler;
  MixedDopplerConfig mixed;
  ScmConfig scm;
  NoiseConfig noise;  // disabled unless configured

  std::vector<std::string> schemes = {"meta", "conventional", "joint", "genie"};
  std::vector<double> lambda_grid;  // empty -> default_lambda_grid()
  std::optional<std::uint64_t> resplit_seed;

  // online
  std::vector<int> online_memory = {1, 5, 10};
  OnlineConfig online;
  int online_frames = 300;
  int online_l_tr = 1;
  int smoothing_window = 100;

  GenieCheckConfig genie_check;

  std::uint64_t base_seed = 20230301;
  int jobs = 1;
  bool timing = false;  // wall-clock runtimes break byte-level reproducibility

  void validate() const;
  std::vector<double> effective_lambda_grid() const;
  std::uint64_t effective_resplit_seed() const;
};

struct ConfigOverrides {
  std::optional<ExperimentMode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

ExperimentConfig load_config(const std::filesystem::path& path,
                             const ConfigOverrides& overrides = {});
ExperimentConfig config_from_toml(const std::string& text,
                                  const ConfigOverrides& overrides = {});
ExperimentConfig default_config(ExperimentMode mode);

// --- per-frame processes ----------------------------------------------------

// The law a frame was drawn from: either a Doppler spectrum, or realized SCM
// long-term parameters. Fresh realizations and second-order statistics are
// both derivable from it, which is what the genie consumes.
struct FrameProcess {
  std::optional<DopplerSpectrum> spectrum;
  std::optional<ScmFrameParams> scm_params;
};

FrameProcess draw_frame_process(const ExperimentConfig& cfg, std::uint64_t seed);
ChannelFrame sample_process_frame(const ExperimentConfig& cfg,
                                  const FrameProcess& process, int length,
                                  std::uint64_t seed, std::int64_t frame_id = 0);
ComplexVector process_autocorrelation(const ExperimentConfig& cfg,
                                      const FrameProcess& process, int count);

// Seed-stream tags (base -> purpose -> indices); fixed so adding a scheme
// never shifts another scheme's draws.
namespace seed_stream {
constexpr std::uint64_t kMetaFrame = 1;
constexpr std::uint64_t kNewProcess = 2;
constexpr std::uint64_t kTrainRealization = 3;
constexpr std::uint64_t kEvalRealization = 4;
constexpr std::uint64_t kTrainNoise = 5;
constexpr std::uint64_t kEvalNoise = 6;
constexpr std::uint64_t kResplit = 7;
constexpr std::uint64_t kOnlineProcess = 8;
constexpr std::uint64_t kOnlineRealization = 9;
constexpr std::uint64_t kOnlineNoise = 10;
constexpr std::uint64_t kGenieCheck = 11;
constexpr std::uint64_t kMetaFrameNoise = 12;
}  // namespace seed_stream

// --- runners ---------------------------------------------------------------

// Meta-trains per sweep point, then draws one fresh frame per replicate,
// adapts every scheme on its first L_new pairs and scores eval_samples fresh
// pairs of the same process. One record per (scheme, L_new, replicate).
std::vector<MetricRecord> run_offline_experiment(const ExperimentConfig& cfg);

struct OnlineExperimentResult {
  std::vector<MetricRecord> records;       // per (scheme, frame, replicate)
  std::vector<OnlineTraceRow> trace;       // replicate-averaged, smoothed
};

// Streams online_frames SCM frames per replicate; runs the online learner per
// memory size plus the conventional and joint baselines on the same stream.
OnlineExperimentResult run_online_experiment(const ExperimentConfig& cfg);

// Analytic vs Monte Carlo genie error for a sweep of window sizes.
std::vector<MetricRecord> run_genie_check(const ExperimentConfig& cfg);

// Writes <stem>_metrics.csv and <stem>_mse.svg into out_dir; the plot shows
// the replicate-averaged MSE per scheme against the sweep. Returns the CSV
// path.
std::filesystem::path emit_outputs(const std::vector<MetricRecord>& records,
                                   const std::filesystem::path& out_dir,
                                   const std::string& stem);

}  // namespace chanpred
