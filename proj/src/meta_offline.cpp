#include "chanpred/meta_offline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "chanpred/rng.hpp"

namespace chanpred {

TransformedPair transform_pair(const SplitSet& split, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("transform_pair: lambda must be positive");
  }
  const ComplexMatrix x_tr = split.train.design_matrix();
  const ComplexVector y_tr = split.train.target_vector();
  const ComplexMatrix x_te = split.test.design_matrix();

  ComplexMatrix a = x_tr.adjoint() * x_tr;
  a.diagonal().array() += lambda;

  // Columns of x_te^H are the raw test covariates.
  const ComplexMatrix u = hermitian_solve(a, ComplexMatrix(x_te.adjoint()),
                                          "transform_pair");

  TransformedPair out;
  out.inputs = lambda * u.adjoint();
  const Eigen::RowVectorXcd q = y_tr.adjoint() * x_tr;
  const ComplexVector fitted = (q * u).transpose();
  out.targets = (split.test.raw_labels() - fitted).conjugate();
  return out;
}

ComplexVector meta_fit(const std::vector<SplitSet>& frames, double lambda) {
  if (frames.empty()) {
    throw std::invalid_argument("meta_fit: no frames");
  }
  const int n = frames.front().train.window();
  ComplexMatrix gram = ComplexMatrix::Zero(n, n);
  ComplexVector rhs = ComplexVector::Zero(n);
  Eigen::Index rows = 0;
  for (const auto& f : frames) {
    if (f.train.window() != n) {
      throw std::invalid_argument("meta_fit: frames disagree on window size");
    }
    const TransformedPair t = transform_pair(f, lambda);
    gram.noalias() += t.inputs.adjoint() * t.inputs;
    rhs.noalias() += t.inputs.adjoint() * t.targets;
    rows += t.inputs.rows();
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (rows < n || lo <= 1e-10 * std::max(1.0, hi)) {
    std::cerr << "meta_fit: stacked system is rank deficient; "
                 "returning the minimum-norm solution\n";
  }
  return min_norm_lstsq_gram(gram, rhs);
}

namespace {

double outer_test_loss(const std::vector<SplitSet>& frames, double lambda,
                       const ComplexVector& v_bar) {
  double loss = 0.0;
  for (const auto& f : frames) {
    const Predictor p = ridge_solve(f.train, {lambda, v_bar});
    loss += sum_squared_error(p, f.test);
  }
  return loss;
}

}  // namespace

TuneResult tune_lambda(const std::vector<RegressionSet>& frames,
                       const MetaTrainConfig& cfg) {
  if (cfg.lambda_grid.empty()) {
    throw std::invalid_argument("tune_lambda: lambda grid is empty");
  }
  for (double l : cfg.lambda_grid) {
    if (!(l > 0.0)) {
      throw std::invalid_argument("tune_lambda: grid values must be positive");
    }
  }
  if (frames.empty()) {
    throw std::invalid_argument("tune_lambda: no frames");
  }
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (frames[f].size() != cfg.train_count + cfg.test_count) {
      throw std::invalid_argument(
          "tune_lambda: frame " + std::to_string(f) + " has " +
          std::to_string(frames[f].size()) + " pairs, expected train_count + "
          "test_count = " + std::to_string(cfg.train_count + cfg.test_count));
    }
  }

  TuneResult out;
  out.grid = cfg.lambda_grid;
  std::sort(out.grid.begin(), out.grid.end());

  // One random re-split per frame, shared by every grid point so the
  // comparison is like for like.
  std::vector<SplitSet> resplit;
  resplit.reserve(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    resplit.push_back(split(frames[f], cfg.train_count, SplitPolicy::SeededRandom,
                            derive_seed(cfg.resplit_seed, f)));
  }

  out.grid_loss.resize(out.grid.size());
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    const ComplexVector v_bar = meta_fit(resplit, out.grid[i]);
    out.grid_loss[i] = outer_test_loss(resplit, out.grid[i], v_bar);
    if (out.grid_loss[i] < best) {
      best = out.grid_loss[i];
      best_idx = i;
    }
  }
  out.lambda = out.grid[best_idx];

  // Refit the bias on the original sequential splits at the winning lambda.
  std::vector<SplitSet> sequential;
  sequential.reserve(frames.size());
  for (const auto& f : frames) {
    sequential.push_back(split(f, cfg.train_count, SplitPolicy::Sequential));
  }
  out.v_bar = meta_fit(sequential, out.lambda);
  return out;
}

Predictor meta_test(const RegressionSet& train_new, double lambda,
                    const ComplexVector& v_bar) {
  return ridge_solve(train_new, {lambda, v_bar});
}

void save_checkpoint(const std::filesystem::path& path, double lambda,
                     const ComplexVector& v_bar) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("save_checkpoint: cannot open " + path.string());
  }
  char buf[96];
  out << "chanpred-hyperparams,v1\n";
  out << "window," << v_bar.size() << "\n";
  std::snprintf(buf, sizeof(buf), "lambda,%.17g\n", lambda);
  out << buf;
  out << "re,im\n";
  for (Eigen::Index i = 0; i < v_bar.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", v_bar[i].real(),
                  v_bar[i].imag());
    out << buf;
  }
}

std::pair<double, ComplexVector> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_checkpoint: cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != "chanpred-hyperparams,v1") {
    throw std::runtime_error("load_checkpoint: bad magic in " + path.string());
  }
  auto field_after = [&](const std::string& key) -> std::string {
    if (!std::getline(in, line) || line.rfind(key + ",", 0) != 0) {
      throw std::runtime_error("load_checkpoint: expected '" + key + "' line");
    }
    return line.substr(key.size() + 1);
  };
  const int n = std::stoi(field_after("window"));
  const double lambda = std::stod(field_after("lambda"));
  if (!std::getline(in, line) || line != "re,im") {
    throw std::runtime_error("load_checkpoint: expected re,im header");
  }
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("load_checkpoint: truncated coefficient rows");
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("load_checkpoint: malformed coefficient row");
    }
    v[i] = Complex(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return {lambda, v};
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int e = -6; e <= 3; ++e) {
    grid.push_back(std::pow(10.0, e));
  }
  return grid;
}

}  // namespace chanpred
