#pragma once

#include "chanpred/dataset.hpp"
#include "chanpred/numerics.hpp"

namespace chanpred {

// Linear lag predictor: the estimate is v^H x for a window x of past gains.
struct Predictor {
  ComplexVector v;
  int window = 0;
  int lag = 0;
};

// Ridge hyperparameters: regularization weight and bias vector.
struct HyperParams {
  double lambda = 0.0;
  ComplexVector v_bar;
};

// Closed-form minimizer of ||X v - y||^2 + lambda ||v - v_bar||^2, i.e.
// v = (X^H X + lambda I)^{-1} (X^H y + lambda v_bar). lambda = 0 falls back
// to the minimum-norm least-squares solution and requires data.
Predictor ridge_solve(const RegressionSet& train, const HyperParams& h);

Complex predict(const Predictor& p, const ComplexVector& window);

// Mean of |v^H x_i - y_i|^2 over the set; the set must be nonempty.
double mse(const Predictor& p, const RegressionSet& s);

// Sum of squared prediction errors (same loss without the mean).
double sum_squared_error(const Predictor& p, const RegressionSet& s);

}  // namespace chanpred
