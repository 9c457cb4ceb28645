#pragma once

#include <vector>

#include "chanpred/channel.hpp"
#include "chanpred/dataset.hpp"
#include "chanpred/numerics.hpp"
#include "chanpred/ridge.hpp"
#include "chanpred/spectrum.hpp"

namespace chanpred {

// Optimal linear predictor computed from second-order statistics, plus its
// analytic mean squared error r[0] - p^H R^{-1} p.
struct WienerSolution {
  ComplexVector v;
  double analytic_mse = 0.0;
  ComplexMatrix covariance;          // window covariance, noise included
  ComplexVector cross_correlation;   // window-to-target correlation
};

// Per-frame least squares with no prior (lambda = 0, minimum-norm when
// underdetermined).
Predictor conventional_fit(const RegressionSet& train);

// Single least-squares fit pooling all history pairs with the new frame's
// pairs.
Predictor joint_fit(const std::vector<RegressionSet>& history,
                    const RegressionSet& train_new);

// Wiener predictor of the gain `lag` slots ahead from the last `window`
// gains, given the autocorrelation sequence r[k] = E[h_{l+k} conj(h_l)] for
// k = 0..window+lag-1. noise_variance models i.i.d. estimation noise on the
// observed window (the target stays clean).
WienerSolution genie_from_autocorrelation(const ComplexVector& r, int window,
                                          int lag, double noise_variance = 0.0);

WienerSolution genie_wiener(const DopplerSpectrum& s, int window, int lag,
                            const NoiseConfig* noise = nullptr);

Predictor to_predictor(const WienerSolution& w, int lag);

}  // namespace chanpred
