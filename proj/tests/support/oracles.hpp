#pragma once

// Independent reference implementations used to cross-check the library's
// closed forms. Everything here computes through its own route (iterative
// minimization, series expansions, finite differences) and deliberately
// avoids the solver paths under test.

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace chanpred::oracles {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Gradient descent on a convex quadratic given its (affine) gradient map.
// The step size comes from power iteration on the Hessian; iterations stop
// early once the gradient is at machine scale.
Vector gd_quadratic_min(const std::function<Vector(const Vector&)>& gradient,
                        int dim, long max_steps);

// argmin ||X v - y||^2 + lambda ||v - v_bar||^2 by descent.
Vector gd_ridge(const Matrix& x, const Vector& y, double lambda,
                const Vector& v_bar, long max_steps = 100000);

// argmin ||Xtr v - ytr||^2 + alpha ||Xte v - yte||^2 + lambda ||v - v_bar||^2.
Vector gd_nudged_ridge(const Matrix& x_tr, const Vector& y_tr, const Matrix& x_te,
                       const Vector& y_te, double lambda, double alpha,
                       const Vector& v_bar, long max_steps = 100000);

struct FrameData {
  Matrix x_tr;
  Vector y_tr;
  Matrix x_te;
  Vector y_te;
};

// Inner ridge solution computed with a plain matrix inverse.
Vector ridge_closed_form(const Matrix& x, const Vector& y, double lambda,
                         const Vector& v_bar);

// Test loss of the ridge-adapted predictor: ||Xte v*(v_bar) - yte||^2.
double outer_loss(const FrameData& f, double lambda, const Vector& v_bar);

// Gradient of outer_loss in v_bar (real-pair convention: the complex vector
// g with dL/dRe = Re g and dL/dIm = Im g), computed from the implicit
// function theorem with local linear algebra.
Vector outer_gradient(const FrameData& f, double lambda, const Vector& v_bar);

// Same gradient by central finite differences over every real coordinate.
Vector fd_outer_gradient(const FrameData& f, double lambda, const Vector& v_bar,
                         double step = 1e-5);

// argmin over v_bar of the summed outer losses, by descent on the exact
// per-frame gradients.
Vector gd_meta(const std::vector<FrameData>& frames, double lambda,
               long max_steps = 100000);

// Truncated Bessel series J0(x) = sum (-1)^m (x/2)^{2m} / (m!)^2.
double bessel_j0(double x, int terms = 20);

}  // namespace chanpred::oracles
