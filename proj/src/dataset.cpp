#include "chanpred/dataset.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "chanpred/rng.hpp"

namespace chanpred {

void RegressionSet::add(RegressionPair p) {
  if (p.x.size() != window_) {
    throw std::invalid_argument("RegressionSet: covariate length " +
                                std::to_string(p.x.size()) + " != window " +
                                std::to_string(window_));
  }
  pairs_.push_back(std::move(p));
}

ComplexMatrix RegressionSet::design_matrix() const {
  ComplexMatrix X(size(), window_);
  for (int i = 0; i < size(); ++i) {
    X.row(i) = pairs_[static_cast<std::size_t>(i)].x.adjoint();
  }
  return X;
}

ComplexVector RegressionSet::target_vector() const {
  ComplexVector y(size());
  for (int i = 0; i < size(); ++i) {
    y[i] = std::conj(pairs_[static_cast<std::size_t>(i)].y);
  }
  return y;
}

ComplexVector RegressionSet::raw_labels() const {
  ComplexVector y(size());
  for (int i = 0; i < size(); ++i) {
    y[i] = pairs_[static_cast<std::size_t>(i)].y;
  }
  return y;
}

RegressionSet build_regression_set(const ChannelFrame& f, int window, int lag) {
  return build_regression_set(f, f, window, lag);
}

RegressionSet build_regression_set(const ChannelFrame& covariates,
                                   const ChannelFrame& labels, int window,
                                   int lag) {
  if (window < 1 || lag < 1) {
    throw std::invalid_argument("build_regression_set: window and lag must be >= 1");
  }
  if (covariates.length() != labels.length()) {
    throw std::invalid_argument("build_regression_set: frame lengths differ");
  }
  const int total = covariates.length();
  if (total < window + lag) {
    throw std::invalid_argument("build_regression_set: frame has " +
                                std::to_string(total) + " slots, need at least " +
                                std::to_string(window + lag));
  }
  RegressionSet set(window, lag);
  // 1-based slot index l runs from `window` to `total - lag`.
  for (int l = window; l <= total - lag; ++l) {
    RegressionPair p;
    p.x = ComplexVector(window);
    for (int j = 0; j < window; ++j) {
      p.x[j] = covariates.gains[l - 1 - j];
    }
    p.y = labels.gains[l - 1 + lag];
    set.add(std::move(p));
  }
  return set;
}

SplitSet split(const RegressionSet& s, int train_count, SplitPolicy policy,
               std::uint64_t seed) {
  if (train_count < 0 || train_count > s.size()) {
    throw std::invalid_argument("split: train_count " + std::to_string(train_count) +
                                " out of range [0, " + std::to_string(s.size()) + "]");
  }
  std::vector<int> order(static_cast<std::size_t>(s.size()));
  std::iota(order.begin(), order.end(), 0);
  if (policy == SplitPolicy::SeededRandom) {
    Rng rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.uniform_index(i)]);
    }
  }
  SplitSet out{RegressionSet(s.window(), s.lag()), RegressionSet(s.window(), s.lag())};
  for (int i = 0; i < s.size(); ++i) {
    auto& dst = i < train_count ? out.train : out.test;
    dst.add(s.pair(order[static_cast<std::size_t>(i)]));
  }
  return out;
}

}  // namespace chanpred
