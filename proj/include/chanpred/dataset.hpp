#pragma once

#include <cstdint>
#include <vector>

#include "chanpred/channel.hpp"
#include "chanpred/numerics.hpp"

namespace chanpred {

struct RegressionPair {
  ComplexVector x;  // window of past gains, newest first
  Complex y;        // gain `lag` slots ahead
};

// Windowed covariate/label pairs for one frame. The design-matrix convention
// is centralized here: matrix rows are x_i^H and target entries are conj(y_i),
// so downstream closed forms read exactly like the normal equations they come
// from.
class RegressionSet {
 public:
  RegressionSet(int window, int lag) : window_(window), lag_(lag) {}

  int window() const { return window_; }
  int lag() const { return lag_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  const RegressionPair& pair(int i) const { return pairs_[static_cast<std::size_t>(i)]; }
  const std::vector<RegressionPair>& pairs() const { return pairs_; }

  void add(RegressionPair p);

  ComplexMatrix design_matrix() const;   // size x window, rows x_i^H
  ComplexVector target_vector() const;   // entries conj(y_i)
  ComplexVector raw_labels() const;      // entries y_i

 private:
  std::vector<RegressionPair> pairs_;
  int window_;
  int lag_;
};

// Pairs (x_l, y_l) with x_l = (h_l, h_{l-1}, ..., h_{l-window+1}) and
// y_l = h_{l+lag}, for l = window .. length-lag. Requires
// length >= window + lag.
RegressionSet build_regression_set(const ChannelFrame& f, int window, int lag);

// Same windows, but labels taken from a second, equally long frame. Used to
// evaluate against clean channels while observing noisy estimates.
RegressionSet build_regression_set(const ChannelFrame& covariates,
                                   const ChannelFrame& labels, int window, int lag);

enum class SplitPolicy { Sequential, SeededRandom };

struct SplitSet {
  RegressionSet train;
  RegressionSet test;
};

// Sequential: first train_count pairs train, remainder test. SeededRandom:
// a seeded permutation decides membership; remainder is the test set.
SplitSet split(const RegressionSet& s, int train_count, SplitPolicy policy,
               std::uint64_t seed = 0);

}  // namespace chanpred
