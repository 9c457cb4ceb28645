#include "chanpred/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "chanpred/baselines.hpp"
#include "chanpred/rng.hpp"
#include "chanpred/svg.hpp"

namespace chanpred {

namespace {

void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  jobs = std::min(jobs, count);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        while (true) {
          const int i = next.fetch_add(1);
          if (i >= count) {
            break;
          }
          fn(i);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

class SchemeTimer {
 public:
  explicit SchemeTimer(bool enabled) : enabled_(enabled) { reset(); }

  void reset() {
    if (enabled_) {
      start_ = std::chrono::steady_clock::now();
    }
  }

  double elapsed_ms() const {
    if (!enabled_) {
      return 0.0;
    }
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

bool scheme_enabled(const ExperimentConfig& cfg, const std::string& name) {
  return std::count(cfg.schemes.begin(), cfg.schemes.end(), name) > 0;
}

}  // namespace

FrameProcess draw_frame_process(const ExperimentConfig& cfg, std::uint64_t seed) {
  FrameProcess p;
  if (cfg.channel == ChannelModelKind::Scm) {
    p.scm_params = draw_scm_frame_params(cfg.scm, seed);
    return p;
  }
  Rng rng(seed);
  bool jakes = cfg.mixed.jakes;
  if (cfg.mixed.jakes && cfg.mixed.rounded) {
    jakes = rng.uniform01() < 0.5;
  }
  const double w_max = 2.0 * M_PI * rng.uniform(cfg.mixed.doppler_lo, cfg.mixed.doppler_hi);
  p.spectrum = jakes ? make_jakes(w_max) : make_rounded(w_max);
  return p;
}

ChannelFrame sample_process_frame(const ExperimentConfig& cfg,
                                  const FrameProcess& process, int length,
                                  std::uint64_t seed, std::int64_t frame_id) {
  if (process.spectrum) {
    return sample_frame_gaussian(*process.spectrum, length, seed, frame_id);
  }
  if (process.scm_params) {
    return sample_scm_realization(cfg.scm, *process.scm_params, length, seed,
                                  frame_id);
  }
  throw std::invalid_argument("sample_process_frame: empty process");
}

ComplexVector process_autocorrelation(const ExperimentConfig& cfg,
                                      const FrameProcess& process, int count) {
  if (process.spectrum) {
    return autocorrelation_sequence(*process.spectrum, count);
  }
  if (process.scm_params) {
    return scm_autocorrelation(cfg.scm, *process.scm_params, count);
  }
  throw std::invalid_argument("process_autocorrelation: empty process");
}

// --- offline ----------------------------------------------------------------

std::vector<MetricRecord> run_offline_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != ExperimentMode::Offline) {
    throw std::invalid_argument("run_offline_experiment: config mode is not offline");
  }
  const int n = cfg.window;
  const int lag = cfg.lag;
  const int sweep_count = static_cast<int>(cfg.l_new_sweep.size());
  const int reps = cfg.replicates;
  const auto schemes = cfg.schemes;
  const int scheme_count = static_cast<int>(schemes.size());

  const bool need_meta = scheme_enabled(cfg, "meta");
  const bool need_joint = scheme_enabled(cfg, "joint");

  std::vector<MetricRecord> records(
      static_cast<std::size_t>(scheme_count * sweep_count * reps));
  const auto slot = [&](int scheme_idx, int l_idx, int rep) {
    return static_cast<std::size_t>((scheme_idx * sweep_count + l_idx) * reps + rep);
  };

  for (int l_idx = 0; l_idx < sweep_count; ++l_idx) {
    const int l_new = cfg.l_new_sweep[static_cast<std::size_t>(l_idx)];
    const int meta_len = l_new + cfg.l_te + n + lag - 1;

    // Meta-training data: F frames, each long enough for l_new + l_te pairs.
    std::vector<RegressionSet> meta_sets;
    if (need_meta || need_joint) {
      meta_sets.reserve(static_cast<std::size_t>(cfg.meta_frames));
      for (int f = 0; f < cfg.meta_frames; ++f) {
        const std::uint64_t proc_seed =
            derive_seed(cfg.base_seed, seed_stream::kMetaFrame, l_idx, f);
        const FrameProcess proc = draw_frame_process(cfg, proc_seed);
        ChannelFrame frame = sample_process_frame(cfg, proc, meta_len,
                                                  derive_seed(proc_seed, 1), f + 1);
        if (cfg.noise.enabled()) {
          frame = add_estimation_noise(
              frame, cfg.noise,
              derive_seed(cfg.base_seed, seed_stream::kMetaFrameNoise, l_idx, f));
        }
        meta_sets.push_back(build_regression_set(frame, n, lag));
      }
    }

    double meta_lambda = 0.0;
    ComplexVector meta_bias;
    if (need_meta) {
      MetaTrainConfig mt;
      mt.lambda_grid = cfg.effective_lambda_grid();
      mt.resplit_seed = derive_seed(cfg.effective_resplit_seed(), l_idx);
      mt.train_count = l_new;
      mt.test_count = cfg.l_te;
      const TuneResult tuned = tune_lambda(meta_sets, mt);
      meta_lambda = tuned.lambda;
      meta_bias = tuned.v_bar;
    }

    parallel_for(cfg.jobs, reps, [&](int rep) {
      const std::uint64_t cell_seed =
          derive_seed(cfg.base_seed, seed_stream::kNewProcess, l_idx, rep);
      const FrameProcess proc = draw_frame_process(cfg, cell_seed);

      const int train_len = l_new + n + lag - 1;
      ChannelFrame train_frame = sample_process_frame(
          cfg, proc, train_len,
          derive_seed(cfg.base_seed, seed_stream::kTrainRealization, l_idx, rep));
      if (cfg.noise.enabled()) {
        train_frame = add_estimation_noise(
            train_frame, cfg.noise,
            derive_seed(cfg.base_seed, seed_stream::kTrainNoise, l_idx, rep));
      }
      const RegressionSet train_set = build_regression_set(train_frame, n, lag);

      const int eval_len = cfg.eval_samples + n + lag - 1;
      const ChannelFrame eval_clean = sample_process_frame(
          cfg, proc, eval_len,
          derive_seed(cfg.base_seed, seed_stream::kEvalRealization, l_idx, rep));
      RegressionSet eval_set(n, lag);
      if (cfg.noise.enabled()) {
        // Observed windows are noisy; the prediction target stays clean.
        const ChannelFrame eval_noisy = add_estimation_noise(
            eval_clean, cfg.noise,
            derive_seed(cfg.base_seed, seed_stream::kEvalNoise, l_idx, rep));
        eval_set = build_regression_set(eval_noisy, eval_clean, n, lag);
      } else {
        eval_set = build_regression_set(eval_clean, n, lag);
      }

      SchemeTimer timer(cfg.timing);
      for (int s = 0; s < scheme_count; ++s) {
        const std::string& scheme = schemes[static_cast<std::size_t>(s)];
        timer.reset();
        Predictor p;
        if (scheme == "meta") {
          p = meta_test(train_set, meta_lambda, meta_bias);
        } else if (scheme == "conventional") {
          p = conventional_fit(train_set);
        } else if (scheme == "joint") {
          p = joint_fit(meta_sets, train_set);
        } else {  // genie
          const ComplexVector r = process_autocorrelation(cfg, proc, n + lag);
          p = to_predictor(genie_from_autocorrelation(r, n, lag, cfg.noise.variance()),
                           lag);
        }
        MetricRecord rec;
        rec.scheme = scheme;
        rec.sweep = static_cast<double>(l_new);
        rec.seed = cell_seed;
        rec.mse = mse(p, eval_set);
        rec.runtime_ms = timer.elapsed_ms();
        records[slot(s, l_idx, rep)] = std::move(rec);
      }
    });
  }
  return records;
}

// --- online -----------------------------------------------------------------

namespace {

std::string online_mode_label(OnlineMode mode) {
  switch (mode) {
    case OnlineMode::Ep: return "meta-ep";
    case OnlineMode::Implicit: return "meta-implicit";
    case OnlineMode::ClosedForm: return "meta-closed-form";
    case OnlineMode::RecursiveRidge: return "meta-recursive-ridge";
  }
  return "meta";
}

}  // namespace

OnlineExperimentResult run_online_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != ExperimentMode::Online) {
    throw std::invalid_argument("run_online_experiment: config mode is not online");
  }
  const int n = cfg.window;
  const int lag = cfg.lag;
  const int frames = cfg.online_frames;
  const int reps = cfg.replicates;
  const int l_tr = cfg.online_l_tr;

  struct SchemeSpec {
    std::string label;
    int memory = 0;  // 0 for baselines
  };
  std::vector<SchemeSpec> specs;
  if (scheme_enabled(cfg, "meta")) {
    for (int m : cfg.online_memory) {
      specs.push_back({online_mode_label(cfg.online.mode) + "-m" + std::to_string(m), m});
    }
  }
  if (scheme_enabled(cfg, "conventional")) {
    if (l_tr < 1) {
      throw std::invalid_argument(
          "run_online_experiment: conventional learning needs online.l_tr >= 1");
    }
    specs.push_back({"conventional", 0});
  }
  if (scheme_enabled(cfg, "joint")) {
    if (l_tr < 1) {
      throw std::invalid_argument(
          "run_online_experiment: joint learning needs online.l_tr >= 1");
    }
    specs.push_back({"joint", 0});
  }
  if (specs.empty()) {
    throw std::invalid_argument("run_online_experiment: no applicable schemes");
  }

  const int scheme_count = static_cast<int>(specs.size());
  std::vector<MetricRecord> records(
      static_cast<std::size_t>(scheme_count * frames * reps));
  const auto slot = [&](int scheme_idx, int frame_idx, int rep) {
    return static_cast<std::size_t>((scheme_idx * frames + frame_idx) * reps + rep);
  };

  parallel_for(cfg.jobs, reps, [&](int rep) {
    const std::uint64_t rep_seed =
        derive_seed(cfg.base_seed, seed_stream::kOnlineProcess, rep);

    std::vector<ChannelFrame> stream;
    stream.reserve(static_cast<std::size_t>(frames));
    const int frame_len = l_tr + cfg.l_te + n + lag - 1;
    for (int f = 0; f < frames; ++f) {
      const FrameProcess proc = draw_frame_process(
          cfg, derive_seed(cfg.base_seed, seed_stream::kOnlineProcess, rep, f));
      ChannelFrame frame = sample_process_frame(
          cfg, proc, frame_len,
          derive_seed(cfg.base_seed, seed_stream::kOnlineRealization, rep, f), f + 1);
      if (cfg.noise.enabled()) {
        frame = add_estimation_noise(
            frame, cfg.noise,
            derive_seed(cfg.base_seed, seed_stream::kOnlineNoise, rep, f));
      }
      stream.push_back(std::move(frame));
    }

    SchemeTimer timer(cfg.timing);
    for (int s = 0; s < scheme_count; ++s) {
      const SchemeSpec& spec = specs[static_cast<std::size_t>(s)];
      timer.reset();
      std::vector<double> frame_mse(static_cast<std::size_t>(frames));

      if (spec.memory > 0) {
        OnlineConfig ocfg = cfg.online;
        ocfg.memory = spec.memory;
        const auto trace = run_online(stream, ocfg, n, lag, l_tr);
        for (int f = 0; f < frames; ++f) {
          frame_mse[static_cast<std::size_t>(f)] = trace[static_cast<std::size_t>(f)].mse;
        }
      } else if (spec.label == "conventional") {
        for (int f = 0; f < frames; ++f) {
          const RegressionSet set = build_regression_set(stream[static_cast<std::size_t>(f)], n, lag);
          const SplitSet sp = split(set, l_tr, SplitPolicy::Sequential);
          frame_mse[static_cast<std::size_t>(f)] = mse(conventional_fit(sp.train), sp.test);
        }
      } else {  // joint
        std::vector<RegressionSet> history;
        history.reserve(static_cast<std::size_t>(frames));
        for (int f = 0; f < frames; ++f) {
          const RegressionSet set = build_regression_set(stream[static_cast<std::size_t>(f)], n, lag);
          const SplitSet sp = split(set, l_tr, SplitPolicy::Sequential);
          frame_mse[static_cast<std::size_t>(f)] = mse(joint_fit(history, sp.train), sp.test);
          history.push_back(set);
        }
      }

      const double ms_total = timer.elapsed_ms();
      for (int f = 0; f < frames; ++f) {
        MetricRecord rec;
        rec.scheme = spec.label;
        rec.sweep = static_cast<double>(f + 1);
        rec.seed = rep_seed;
        rec.mse = frame_mse[static_cast<std::size_t>(f)];
        rec.runtime_ms = cfg.timing ? ms_total / static_cast<double>(frames) : 0.0;
        records[slot(s, f, rep)] = std::move(rec);
      }
    }
  });

  OnlineExperimentResult out;
  out.records = std::move(records);

  // Replicate-averaged trace with the configured moving average.
  for (int s = 0; s < scheme_count; ++s) {
    const SchemeSpec& spec = specs[static_cast<std::size_t>(s)];
    std::vector<double> mean(static_cast<std::size_t>(frames), 0.0);
    for (int f = 0; f < frames; ++f) {
      double sum = 0.0;
      for (int rep = 0; rep < reps; ++rep) {
        sum += out.records[slot(s, f, rep)].mse;
      }
      mean[static_cast<std::size_t>(f)] = sum / static_cast<double>(reps);
    }
    const std::vector<double> smooth = moving_average(mean, cfg.smoothing_window);
    for (int f = 0; f < frames; ++f) {
      OnlineTraceRow row;
      row.frame = f + 1;
      row.scheme = spec.label;
      row.memory = spec.memory;
      row.mse = mean[static_cast<std::size_t>(f)];
      row.smoothed_mse = smooth[static_cast<std::size_t>(f)];
      out.trace.push_back(std::move(row));
    }
  }
  return out;
}

// --- genie check -------------------------------------------------------------

std::vector<MetricRecord> run_genie_check(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != ExperimentMode::GenieCheck) {
    throw std::invalid_argument("run_genie_check: config mode is not genie-check");
  }
  const GenieCheckConfig& gc = cfg.genie_check;
  DopplerSpectrum spectrum = make_flat();
  if (gc.spectrum == "jakes") {
    spectrum = make_jakes(2.0 * M_PI * gc.doppler);
  } else if (gc.spectrum == "rounded") {
    spectrum = make_rounded(2.0 * M_PI * gc.doppler);
  }

  std::vector<MetricRecord> records;
  const int pairs_per_frame = 200;
  for (const int n : gc.windows) {
    const WienerSolution w = genie_wiener(spectrum, n, gc.lag);
    const Predictor p = to_predictor(w, gc.lag);

    const int frame_len = pairs_per_frame + n + gc.lag - 1;
    const GaussianFrameSampler sampler(spectrum, frame_len);
    double sse = 0.0;
    long done = 0;
    int frame_idx = 0;
    while (done < gc.eval_samples) {
      const ChannelFrame frame = sampler.sample(
          derive_seed(cfg.base_seed, seed_stream::kGenieCheck, n, frame_idx),
          ++frame_idx);
      const RegressionSet set = build_regression_set(frame, n, gc.lag);
      for (const auto& pair : set.pairs()) {
        if (done >= gc.eval_samples) {
          break;
        }
        sse += std::norm(predict(p, pair.x) - pair.y);
        ++done;
      }
    }

    MetricRecord analytic;
    analytic.scheme = "genie-analytic";
    analytic.sweep = static_cast<double>(n);
    analytic.seed = cfg.base_seed;
    analytic.mse = w.analytic_mse;
    records.push_back(std::move(analytic));

    MetricRecord empirical;
    empirical.scheme = "genie-empirical";
    empirical.sweep = static_cast<double>(n);
    empirical.seed = cfg.base_seed;
    empirical.mse = sse / static_cast<double>(done);
    records.push_back(std::move(empirical));
  }
  return records;
}

// --- output -----------------------------------------------------------------

std::filesystem::path emit_outputs(const std::vector<MetricRecord>& records,
                                   const std::filesystem::path& out_dir,
                                   const std::string& stem) {
  if (records.empty()) {
    throw std::invalid_argument("emit_outputs: no records");
  }
  std::filesystem::create_directories(out_dir);
  const auto csv_path = out_dir / (stem + "_metrics.csv");
  write_metrics_csv(records, csv_path);

  // Replicate-averaged MSE per (scheme, sweep); schemes keep first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::map<double, std::pair<double, int>>> agg;
  for (const auto& r : records) {
    if (agg.find(r.scheme) == agg.end()) {
      order.push_back(r.scheme);
    }
    auto& cell = agg[r.scheme][r.sweep];
    cell.first += r.mse;
    cell.second += 1;
  }
  std::vector<SvgSeries> series;
  for (const auto& scheme : order) {
    SvgSeries s;
    s.label = scheme;
    for (const auto& [sweep, cell] : agg[scheme]) {
      s.x.push_back(sweep);
      // Floor keeps a zero-error cell plottable on the log axis.
      s.y.push_back(std::max(cell.first / cell.second, 1e-12));
    }
    series.push_back(std::move(s));
  }
  write_line_plot_svg(series, "sweep", "MSE", out_dir / (stem + "_mse.svg"));
  return csv_path;
}

}  // namespace chanpred
