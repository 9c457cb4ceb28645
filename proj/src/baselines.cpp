#include "chanpred/baselines.hpp"

#include <iostream>
#include <stdexcept>

namespace chanpred {

Predictor conventional_fit(const RegressionSet& train) {
  if (train.empty()) {
    throw std::invalid_argument("conventional_fit: training set is empty");
  }
  Predictor p;
  p.window = train.window();
  p.lag = train.lag();
  p.v = min_norm_lstsq(train.design_matrix(), train.target_vector());
  return p;
}

Predictor joint_fit(const std::vector<RegressionSet>& history,
                    const RegressionSet& train_new) {
  const int n = train_new.window();
  ComplexMatrix gram = ComplexMatrix::Zero(n, n);
  ComplexVector rhs = ComplexVector::Zero(n);
  Eigen::Index rows = 0;

  auto accumulate = [&](const RegressionSet& s) {
    if (s.window() != n || s.lag() != train_new.lag()) {
      throw std::invalid_argument("joint_fit: pooled sets disagree on window/lag");
    }
    const ComplexMatrix x = s.design_matrix();
    const ComplexVector y = s.target_vector();
    gram.noalias() += x.adjoint() * x;
    rhs.noalias() += x.adjoint() * y;
    rows += s.size();
  };

  for (const auto& s : history) {
    accumulate(s);
  }
  accumulate(train_new);
  if (rows == 0) {
    throw std::invalid_argument("joint_fit: no data to pool");
  }

  Predictor p;
  p.window = n;
  p.lag = train_new.lag();
  p.v = min_norm_lstsq_gram(gram, rhs);
  return p;
}

WienerSolution genie_from_autocorrelation(const ComplexVector& r, int window,
                                          int lag, double noise_variance) {
  if (window < 1 || lag < 1) {
    throw std::invalid_argument("genie: window and lag must be >= 1");
  }
  if (r.size() < window + lag) {
    throw std::invalid_argument("genie: need autocorrelation lags up to window+lag-1");
  }
  if (noise_variance < 0.0) {
    throw std::invalid_argument("genie: noise variance must be >= 0");
  }

  WienerSolution w;
  // Window covariance C(m, n) = E[x_m conj(x_n)] = r[n - m] and target
  // correlation d(m) = E[x_m conj(y)] = conj(r[lag + m]); for the symmetric
  // spectra r is real and this is the familiar R v = p system.
  w.covariance = ComplexMatrix(window, window);
  for (int m = 0; m < window; ++m) {
    for (int n = 0; n < window; ++n) {
      w.covariance(m, n) = n >= m ? r[n - m] : std::conj(r[m - n]);
    }
  }
  w.covariance.diagonal().array() += noise_variance;
  w.cross_correlation = ComplexVector(window);
  for (int m = 0; m < window; ++m) {
    w.cross_correlation[m] = std::conj(r[lag + m]);
  }

  double jitter = 0.0;
  while (true) {
    ComplexMatrix a = w.covariance;
    a.diagonal().array() += jitter;
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() == Eigen::Success) {
      if (jitter > 0.0) {
        std::cerr << "genie: covariance numerically singular, solved with jitter "
                  << jitter << "\n";
      }
      w.v = llt.solve(w.cross_correlation);
      break;
    }
    jitter = jitter == 0.0 ? 1e-12 : jitter * 10.0;
    if (jitter > 1e-6) {
      throw std::runtime_error("genie: covariance is not positive semidefinite");
    }
  }

  w.analytic_mse = r[0].real() - w.cross_correlation.dot(w.v).real();
  return w;
}

WienerSolution genie_wiener(const DopplerSpectrum& s, int window, int lag,
                            const NoiseConfig* noise) {
  const ComplexVector r = autocorrelation_sequence(s, window + lag);
  const double var = noise != nullptr ? noise->variance() : 0.0;
  return genie_from_autocorrelation(r, window, lag, var);
}

Predictor to_predictor(const WienerSolution& w, int lag) {
  Predictor p;
  p.v = w.v;
  p.window = static_cast<int>(w.v.size());
  p.lag = lag;
  return p;
}

}  // namespace chanpred
