#include "chanpred/meta_online.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace chanpred {

void OnlineConfig::validate() const {
  if (memory < 1) {
    throw std::invalid_argument("OnlineConfig: memory must be >= 1");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("OnlineConfig: lambda must be positive");
  }
  if (iterations < 1) {
    throw std::invalid_argument("OnlineConfig: iterations must be >= 1");
  }
  if ((mode == OnlineMode::Ep) && alpha == 0.0) {
    throw std::invalid_argument("OnlineConfig: EP mode needs alpha != 0");
  }
  if (mode == OnlineMode::RecursiveRidge && prev_weight < 0.0) {
    throw std::invalid_argument("OnlineConfig: prev_weight must be >= 0");
  }
}

void OnlineState::push_frame(SplitSet s, int memory) {
  history.push_back(std::move(s));
  while (static_cast<int>(history.size()) > memory) {
    history.pop_front();
  }
}

ComplexVector ep_stationary_point(const SplitSet& split, const ComplexVector& v_bar,
                                  double lambda, double alpha) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("ep_stationary_point: lambda must be positive");
  }
  const ComplexMatrix x_tr = split.train.design_matrix();
  const ComplexVector y_tr = split.train.target_vector();
  const ComplexMatrix x_te = split.test.design_matrix();
  const ComplexVector y_te = split.test.target_vector();

  ComplexMatrix a = x_tr.adjoint() * x_tr + alpha * (x_te.adjoint() * x_te);
  a.diagonal().array() += lambda;
  const ComplexVector b =
      x_tr.adjoint() * y_tr + alpha * (x_te.adjoint() * y_te) + lambda * v_bar;
  try {
    return hermitian_solve(a, b, "ep_stationary_point");
  } catch (const std::runtime_error&) {
    throw std::runtime_error(
        "ep_stationary_point: nudged system is indefinite; use a smaller |alpha|");
  }
}

ComplexVector ep_gradient(const SplitSet& split, const ComplexVector& v_bar,
                          double lambda, double alpha, bool two_sided) {
  if (alpha == 0.0) {
    throw std::invalid_argument("ep_gradient: alpha must be nonzero");
  }
  if (two_sided) {
    const ComplexVector minus = ep_stationary_point(split, v_bar, lambda, -alpha);
    const ComplexVector plus = ep_stationary_point(split, v_bar, lambda, alpha);
    return (lambda / alpha) * (minus - plus);
  }
  const ComplexVector base = ep_stationary_point(split, v_bar, lambda, 0.0);
  const ComplexVector nudged = ep_stationary_point(split, v_bar, lambda, alpha);
  return (2.0 * lambda / alpha) * (base - nudged);
}

ComplexVector implicit_gradient(const SplitSet& split, const ComplexVector& v_bar,
                                double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("implicit_gradient: lambda must be positive");
  }
  const ComplexVector v_star = ep_stationary_point(split, v_bar, lambda, 0.0);
  const ComplexMatrix x_tr = split.train.design_matrix();
  const ComplexMatrix x_te = split.test.design_matrix();
  const ComplexVector y_te = split.test.target_vector();

  const ComplexVector outer = 2.0 * (x_te.adjoint() * (x_te * v_star - y_te));
  ComplexMatrix m = (1.0 / lambda) * (x_tr.adjoint() * x_tr);
  m.diagonal().array() += 1.0;
  return hermitian_solve(m, outer, "implicit_gradient");
}

namespace {

double default_step(const std::deque<SplitSet>& history) {
  Eigen::Index rows = 0;
  for (const auto& f : history) {
    rows += f.test.size();
  }
  return 0.05 / static_cast<double>(std::max<Eigen::Index>(rows, 1));
}

}  // namespace

OnlineState online_step(OnlineState state, const OnlineConfig& cfg) {
  cfg.validate();
  if (state.history.empty()) {
    return state;
  }
  const std::vector<SplitSet> window(state.history.begin(), state.history.end());

  switch (cfg.mode) {
    case OnlineMode::Ep:
    case OnlineMode::Implicit: {
      const double eta = cfg.step > 0.0 ? cfg.step : default_step(state.history);
      ComplexVector v = state.v_bar;
      for (int k = 0; k < cfg.iterations; ++k) {
        ComplexVector g = ComplexVector::Zero(v.size());
        for (const auto& f : window) {
          g += cfg.mode == OnlineMode::Ep
                   ? ep_gradient(f, v, cfg.lambda, cfg.alpha, cfg.two_sided)
                   : implicit_gradient(f, v, cfg.lambda);
        }
        v -= eta * g;
      }
      state.v_bar = v;
      break;
    }
    case OnlineMode::ClosedForm: {
      state.v_bar = meta_fit(window, cfg.lambda);
      break;
    }
    case OnlineMode::RecursiveRidge: {
      if (cfg.prev_weight == 0.0) {
        state.v_bar = meta_fit(window, cfg.lambda);
        break;
      }
      const int n = static_cast<int>(state.v_bar.size());
      ComplexMatrix gram = ComplexMatrix::Zero(n, n);
      ComplexVector rhs = ComplexVector::Zero(n);
      for (const auto& f : window) {
        const TransformedPair t = transform_pair(f, cfg.lambda);
        gram.noalias() += t.inputs.adjoint() * t.inputs;
        rhs.noalias() += t.inputs.adjoint() * t.targets;
      }
      gram.diagonal().array() += cfg.prev_weight;
      rhs += cfg.prev_weight * state.v_bar;
      state.v_bar = hermitian_solve(gram, rhs, "online_step");
      break;
    }
  }
  return state;
}

std::vector<OnlineTracePoint> run_online(std::span<const ChannelFrame> stream,
                                         const OnlineConfig& cfg, int window,
                                         int lag, int train_count) {
  cfg.validate();
  OnlineState state;
  state.v_bar = ComplexVector::Zero(window);

  std::vector<OnlineTracePoint> trace;
  trace.reserve(stream.size());
  for (const auto& frame : stream) {
    const RegressionSet set = build_regression_set(frame, window, lag);
    SplitSet sp = split(set, train_count, SplitPolicy::Sequential);
    if (sp.test.empty()) {
      throw std::invalid_argument("run_online: frames leave no test pairs");
    }

    const Predictor p = meta_test(sp.train, cfg.lambda, state.v_bar);
    OnlineTracePoint point;
    point.frame = state.frame_index + 1;
    point.mse = mse(p, sp.test);
    point.v_bar = state.v_bar;
    trace.push_back(std::move(point));

    state.push_frame(std::move(sp), cfg.memory);
    state = online_step(std::move(state), cfg);
    ++state.frame_index;
  }
  return trace;
}

void export_online_trace_csv(const std::vector<OnlineTraceRow>& rows,
                             const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("export_online_trace_csv: cannot open " + path.string());
  }
  out << "frame,scheme,M,mse,smoothed_mse\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%s,%d,%.17g,%.17g\n",
                  static_cast<long long>(r.frame), r.scheme.c_str(), r.memory,
                  r.mse, r.smoothed_mse);
    out << buf;
  }
}

std::vector<double> moving_average(const std::vector<double>& values, int window) {
  if (window < 1) {
    throw std::invalid_argument("moving_average: window must be >= 1");
  }
  std::vector<double> out(values.size());
  double running = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    running += values[i];
    if (i >= static_cast<std::size_t>(window)) {
      running -= values[i - static_cast<std::size_t>(window)];
    }
    const auto count = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    out[i] = running / static_cast<double>(count);
  }
  return out;
}

}  // namespace chanpred
