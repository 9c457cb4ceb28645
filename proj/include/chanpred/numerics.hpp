#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace chanpred {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

constexpr int kDefaultQuadratureNodes = 2001;

// Solves A x = b for Hermitian positive definite A via Cholesky. `op` names
// the calling operation in error messages.
ComplexVector hermitian_solve(const ComplexMatrix& A, const ComplexVector& b,
                              const char* op = "hermitian_solve");

// Multi right-hand-side variant: one factorization, solves A X = B.
ComplexMatrix hermitian_solve(const ComplexMatrix& A, const ComplexMatrix& B,
                              const char* op = "hermitian_solve");

// Minimum-Euclidean-norm least-squares solution of ||X v - y||^2, computed
// from the normal equations with a 1e-12 ridge (the lambda = 0 surrogate).
ComplexVector min_norm_lstsq(const ComplexMatrix& X, const ComplexVector& y);

// Same solve expressed on accumulated normal equations: G = X^H X,
// rhs = X^H y. Callers that pool several data sets use this form.
ComplexVector min_norm_lstsq_gram(const ComplexMatrix& G, const ComplexVector& rhs);

// Lower-triangular C with C C^H = T + jitter I, where T is the n x n
// Hermitian Toeplitz matrix whose first column is r[0..n-1]. The jitter
// starts at zero and escalates tenfold from 1e-12 until the factorization
// succeeds; past 1e-6 the sequence is declared non positive semidefinite.
ComplexMatrix toeplitz_cholesky(const ComplexVector& r, Eigen::Index n);

// Composite Simpson estimate of the integral of f over [a, b]. An even node
// count is bumped by one so the interval count stays even.
double quadrature(const std::function<double(double)>& f, double a, double b,
                  int nodes = kDefaultQuadratureNodes);

}  // namespace chanpred
