#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "chanpred/dataset.hpp"
#include "chanpred/numerics.hpp"
#include "chanpred/ridge.hpp"

namespace chanpred {

// One frame's contribution to the meta least-squares problem. Row i of
// `inputs` is (lambda A^{-1} x_i^te)^H with A = (X^tr)^H X^tr + lambda I;
// `targets` holds conj(y_i^te - y_tr^H X^tr A^{-1} x_i^te). For any bias
// v_bar, ||inputs v_bar - targets||^2 equals the test loss of the
// ridge-adapted predictor on this frame.
struct TransformedPair {
  ComplexMatrix inputs;   // test_size x window
  ComplexVector targets;  // test_size
};

TransformedPair transform_pair(const SplitSet& split, double lambda);

// Bias vector minimizing the summed transformed losses across frames.
// Rank-deficient stacks resolve to the minimum-norm solution with a warning.
ComplexVector meta_fit(const std::vector<SplitSet>& frames, double lambda);

struct MetaTrainConfig {
  std::vector<double> lambda_grid;
  std::uint64_t resplit_seed = 0;
  int train_count = 0;
  int test_count = 0;
};

struct TuneResult {
  double lambda = 0.0;
  ComplexVector v_bar;
  std::vector<double> grid;       // ascending
  std::vector<double> grid_loss;  // summed test loss per grid point
};

// Grid search for lambda: each frame is re-split at random (seeded), the bias
// is refit per candidate, and the candidate with the lowest summed test loss
// wins (ties break toward the smaller lambda). The returned bias is refit on
// the original sequential splits.
TuneResult tune_lambda(const std::vector<RegressionSet>& frames,
                       const MetaTrainConfig& cfg);

// Per-frame adaptation with the meta-learned hyperparameters.
Predictor meta_test(const RegressionSet& train_new, double lambda,
                    const ComplexVector& v_bar);

// Hyperparameter checkpoint (versioned CSV: window, lambda, re/im rows).
void save_checkpoint(const std::filesystem::path& path, double lambda,
                     const ComplexVector& v_bar);
std::pair<double, ComplexVector> load_checkpoint(const std::filesystem::path& path);

std::vector<double> default_lambda_grid();

}  // namespace chanpred
