#pragma once

// Seeded random instances shared by the test suites and the selftest command.

#include <cstdint>

#include "chanpred/dataset.hpp"
#include "chanpred/numerics.hpp"
#include "chanpred/rng.hpp"
#include "oracles.hpp"

namespace chanpred::testdata {

inline ComplexMatrix random_matrix(std::uint64_t seed, int rows, int cols) {
  Rng rng(seed);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = rng.circular_gaussian();
    }
  }
  return m;
}

inline ComplexVector random_vector(std::uint64_t seed, int n) {
  Rng rng(seed);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = rng.circular_gaussian();
  }
  return v;
}

// Hermitian positive definite A = B^H B + I.
inline ComplexMatrix random_hpd(std::uint64_t seed, int n) {
  const ComplexMatrix b = random_matrix(seed, n, n);
  return b.adjoint() * b + ComplexMatrix::Identity(n, n);
}

inline RegressionSet random_set(std::uint64_t seed, int count, int window,
                                int lag = 1) {
  Rng rng(seed);
  RegressionSet set(window, lag);
  for (int i = 0; i < count; ++i) {
    RegressionPair p;
    p.x = ComplexVector(window);
    for (int j = 0; j < window; ++j) {
      p.x[j] = rng.circular_gaussian();
    }
    p.y = rng.circular_gaussian();
    set.add(std::move(p));
  }
  return set;
}

inline SplitSet random_split(std::uint64_t seed, int train_count, int test_count,
                             int window, int lag = 1) {
  const RegressionSet all = random_set(seed, train_count + test_count, window, lag);
  return split(all, train_count, SplitPolicy::Sequential);
}

inline oracles::FrameData to_frame_data(const SplitSet& s) {
  oracles::FrameData f;
  f.x_tr = s.train.design_matrix();
  f.y_tr = s.train.target_vector();
  f.x_te = s.test.design_matrix();
  f.y_te = s.test.target_vector();
  return f;
}

}  // namespace chanpred::testdata
