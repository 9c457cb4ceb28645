#include "chanpred/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chanpred {

namespace {

void check_square(const ComplexMatrix& A, const char* op) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument(std::string(op) + ": matrix is not square (" +
                                std::to_string(A.rows()) + "x" +
                                std::to_string(A.cols()) + ")");
  }
}

Eigen::LLT<ComplexMatrix> factor_or_throw(const ComplexMatrix& A, const char* op) {
  Eigen::LLT<ComplexMatrix> llt(A);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(std::string(op) +
                             ": matrix is not positive definite (Cholesky failed)");
  }
  return llt;
}

}  // namespace

ComplexVector hermitian_solve(const ComplexMatrix& A, const ComplexVector& b,
                              const char* op) {
  check_square(A, op);
  if (b.size() != A.rows()) {
    throw std::invalid_argument(std::string(op) + ": right-hand side has length " +
                                std::to_string(b.size()) + ", expected " +
                                std::to_string(A.rows()));
  }
  return factor_or_throw(A, op).solve(b);
}

ComplexMatrix hermitian_solve(const ComplexMatrix& A, const ComplexMatrix& B,
                              const char* op) {
  check_square(A, op);
  if (B.rows() != A.rows()) {
    throw std::invalid_argument(std::string(op) + ": right-hand side has " +
                                std::to_string(B.rows()) + " rows, expected " +
                                std::to_string(A.rows()));
  }
  return factor_or_throw(A, op).solve(B);
}

ComplexVector min_norm_lstsq(const ComplexMatrix& X, const ComplexVector& y) {
  if (X.rows() < 1) {
    throw std::invalid_argument("min_norm_lstsq: X has no rows");
  }
  if (y.size() != X.rows()) {
    throw std::invalid_argument("min_norm_lstsq: y has length " +
                                std::to_string(y.size()) + ", expected " +
                                std::to_string(X.rows()));
  }
  const ComplexMatrix gram = X.adjoint() * X;
  const ComplexVector rhs = X.adjoint() * y;
  return min_norm_lstsq_gram(gram, rhs);
}

ComplexVector min_norm_lstsq_gram(const ComplexMatrix& G, const ComplexVector& rhs) {
  check_square(G, "min_norm_lstsq");
  const auto n = G.rows();
  // The ridge is scaled by the mean diagonal so data far from unit scale
  // still lands on the min-norm solution.
  const double scale = n > 0 ? std::max(1.0, G.diagonal().real().mean()) : 1.0;
  const double eps = 1e-12 * scale;
  ComplexMatrix A = G;
  A.diagonal().array() += eps;
  return hermitian_solve(A, rhs, "min_norm_lstsq");
}

ComplexMatrix toeplitz_cholesky(const ComplexVector& r, Eigen::Index n) {
  if (n < 1) {
    throw std::invalid_argument("toeplitz_cholesky: order must be >= 1");
  }
  if (r.size() < n) {
    throw std::invalid_argument("toeplitz_cholesky: autocorrelation has " +
                                std::to_string(r.size()) + " lags, need " +
                                std::to_string(n));
  }
  if (!(r[0].real() > 0.0) || std::abs(r[0].imag()) > 1e-9 * std::abs(r[0].real())) {
    throw std::invalid_argument("toeplitz_cholesky: r[0] must be real and positive");
  }

  ComplexMatrix T(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      T(i, j) = i >= j ? r[i - j] : std::conj(r[j - i]);
    }
  }

  double jitter = 0.0;
  while (true) {
    ComplexMatrix A = T;
    A.diagonal().array() += jitter;
    Eigen::LLT<ComplexMatrix> llt(A);
    if (llt.info() == Eigen::Success) {
      return llt.matrixL();
    }
    if (jitter == 0.0) {
      jitter = 1e-12;
    } else if (jitter < 1e-6) {
      jitter = std::min(jitter * 10.0, 1e-6);
    } else {
      throw std::runtime_error(
          "toeplitz_cholesky: autocorrelation sequence is not positive "
          "semidefinite (jitter cap 1e-6 exceeded)");
    }
  }
}

double quadrature(const std::function<double(double)>& f, double a, double b,
                  int nodes) {
  if (!(a < b)) {
    throw std::invalid_argument("quadrature: require a < b");
  }
  if (nodes < 2) {
    throw std::invalid_argument("quadrature: require at least 2 nodes");
  }
  if (nodes % 2 == 0) {
    ++nodes;  // Simpson needs an even interval count
  }
  const double h = (b - a) / static_cast<double>(nodes - 1);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double w = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double x = (i == nodes - 1) ? b : a + h * static_cast<double>(i);
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw std::runtime_error("quadrature: integrand is not finite at x = " +
                               std::to_string(x));
    }
    sum += w * v;
  }
  return sum * h / 3.0;
}

}  // namespace chanpred
