#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <span>
#include <vector>

#include "chanpred/dataset.hpp"
#include "chanpred/meta_offline.hpp"
#include "chanpred/numerics.hpp"
#include "chanpred/ridge.hpp"

namespace chanpred {

enum class OnlineMode { Ep, Implicit, ClosedForm, RecursiveRidge };

struct OnlineConfig {
  int memory = 1;          // frames retained for the hyperparameter update
  double lambda = 1.0;     // inner ridge weight
  double alpha = 1e-2;     // EP nudge
  double step = 0.0;       // gradient step; 0 -> 0.05 / (window rows)
  int iterations = 5;      // gradient steps per frame
  OnlineMode mode = OnlineMode::Ep;
  double prev_weight = 0.0;  // recursive-ridge pull toward the previous bias
  bool two_sided = false;    // symmetric EP estimate (off by default)

  void validate() const;
};

struct OnlineState {
  ComplexVector v_bar;
  std::deque<SplitSet> history;  // most recent frames, oldest first
  std::int64_t frame_index = 0;

  void push_frame(SplitSet s, int memory);
};

// Minimizer of ||X^tr v - y^tr||^2 + alpha ||X^te v - y^te||^2
// + lambda ||v - v_bar||^2. alpha = 0 recovers the plain ridge solution on
// the training half. Negative alpha is admitted while the system stays
// positive definite.
ComplexVector ep_stationary_point(const SplitSet& split, const ComplexVector& v_bar,
                                  double lambda, double alpha);

// Equilibrium-propagation estimate (2 lambda / alpha)(v^0 - v^alpha) of the
// outer-loss gradient; first-order accurate in alpha. The two-sided variant
// uses (lambda / alpha)(v^{-alpha} - v^{+alpha}).
ComplexVector ep_gradient(const SplitSet& split, const ComplexVector& v_bar,
                          double lambda, double alpha, bool two_sided = false);

// Exact gradient of the per-frame outer loss with respect to the bias,
// ((1/lambda) (X^tr)^H X^tr + I)^{-1} 2 (X^te)^H (X^te v* - y^te).
ComplexVector implicit_gradient(const SplitSet& split, const ComplexVector& v_bar,
                                double lambda);

// One hyperparameter update over the frames currently held in the history.
// Gradient modes run `iterations` descent steps warm-started from the current
// bias; ClosedForm refits on the window; RecursiveRidge adds
// prev_weight ||v_bar - previous||^2 to the window objective.
OnlineState online_step(OnlineState state, const OnlineConfig& cfg);

struct OnlineTracePoint {
  std::int64_t frame = 0;
  double mse = 0.0;
  ComplexVector v_bar;  // bias in force when the frame was predicted
};

// Streaming loop: per frame, adapt on the training half with the current
// bias, score on the test half, then absorb the frame and update the bias.
std::vector<OnlineTracePoint> run_online(std::span<const ChannelFrame> stream,
                                         const OnlineConfig& cfg, int window,
                                         int lag, int train_count);

struct OnlineTraceRow {
  std::int64_t frame = 0;
  std::string scheme;
  int memory = 0;
  double mse = 0.0;
  double smoothed_mse = 0.0;
};

// Columns: frame, scheme, M, mse, smoothed_mse.
void export_online_trace_csv(const std::vector<OnlineTraceRow>& rows,
                             const std::filesystem::path& path);

// Trailing moving average with the given window length.
std::vector<double> moving_average(const std::vector<double>& values, int window);

}  // namespace chanpred
