#include "chanpred/ridge.hpp"

#include <stdexcept>
#include <string>

namespace chanpred {

Predictor ridge_solve(const RegressionSet& train, const HyperParams& h) {
  const int n = train.window();
  if (h.v_bar.size() != n) {
    throw std::invalid_argument("ridge_solve: v_bar has length " +
                                std::to_string(h.v_bar.size()) + ", window is " +
                                std::to_string(n));
  }
  if (h.lambda < 0.0) {
    throw std::invalid_argument("ridge_solve: lambda must be >= 0");
  }

  Predictor p;
  p.window = n;
  p.lag = train.lag();

  if (h.lambda == 0.0) {
    if (train.empty()) {
      throw std::invalid_argument(
          "ridge_solve: lambda = 0 with an empty training set has no solution");
    }
    p.v = min_norm_lstsq(train.design_matrix(), train.target_vector());
    return p;
  }

  const ComplexMatrix X = train.design_matrix();
  const ComplexVector y = train.target_vector();
  ComplexMatrix A = X.adjoint() * X;
  A.diagonal().array() += h.lambda;
  const ComplexVector b = X.adjoint() * y + h.lambda * h.v_bar;
  p.v = hermitian_solve(A, b, "ridge_solve");
  return p;
}

Complex predict(const Predictor& p, const ComplexVector& window) {
  if (window.size() != p.v.size()) {
    throw std::invalid_argument("predict: window length " +
                                std::to_string(window.size()) + " != " +
                                std::to_string(p.v.size()));
  }
  return p.v.dot(window);  // v^H window
}

double sum_squared_error(const Predictor& p, const RegressionSet& s) {
  double total = 0.0;
  for (const auto& pair : s.pairs()) {
    total += std::norm(predict(p, pair.x) - pair.y);
  }
  return total;
}

double mse(const Predictor& p, const RegressionSet& s) {
  if (s.empty()) {
    throw std::invalid_argument("mse: regression set is empty");
  }
  return sum_squared_error(p, s) / static_cast<double>(s.size());
}

}  // namespace chanpred
