#include "oracles.hpp"

#include <cmath>

namespace chanpred::oracles {

Vector gd_quadratic_min(const std::function<Vector(const Vector&)>& gradient,
                        int dim, long max_steps) {
  const Vector g0 = gradient(Vector::Zero(dim));

  // Power iteration on H u = gradient(u) - gradient(0).
  Vector u(dim);
  for (int i = 0; i < dim; ++i) {
    u[i] = std::complex<double>(1.0 + 0.1 * i, 0.5 - 0.05 * i);
  }
  u.normalize();
  double lipschitz = 1.0;
  for (int it = 0; it < 64; ++it) {
    const Vector hu = gradient(u) - g0;
    const double norm = hu.norm();
    if (norm < 1e-300) {
      break;
    }
    lipschitz = norm;
    u = hu / norm;
  }

  const double eta = 1.0 / lipschitz;
  const double tol = 1e-14 * (1.0 + g0.norm());
  Vector v = Vector::Zero(dim);
  for (long k = 0; k < max_steps; ++k) {
    const Vector g = gradient(v);
    if (g.norm() <= tol) {
      break;
    }
    v -= eta * g;
  }
  return v;
}

Vector gd_ridge(const Matrix& x, const Vector& y, double lambda,
                const Vector& v_bar, long max_steps) {
  const Matrix gram = x.adjoint() * x;
  const Vector rhs = x.adjoint() * y;
  const auto grad = [&](const Vector& v) -> Vector {
    return 2.0 * (gram * v - rhs) + 2.0 * lambda * (v - v_bar);
  };
  return gd_quadratic_min(grad, static_cast<int>(v_bar.size()), max_steps);
}

Vector gd_nudged_ridge(const Matrix& x_tr, const Vector& y_tr, const Matrix& x_te,
                       const Vector& y_te, double lambda, double alpha,
                       const Vector& v_bar, long max_steps) {
  const Matrix gram = x_tr.adjoint() * x_tr + alpha * (x_te.adjoint() * x_te);
  const Vector rhs = x_tr.adjoint() * y_tr + alpha * (x_te.adjoint() * y_te);
  const auto grad = [&](const Vector& v) -> Vector {
    return 2.0 * (gram * v - rhs) + 2.0 * lambda * (v - v_bar);
  };
  return gd_quadratic_min(grad, static_cast<int>(v_bar.size()), max_steps);
}

Vector ridge_closed_form(const Matrix& x, const Vector& y, double lambda,
                         const Vector& v_bar) {
  const int n = static_cast<int>(v_bar.size());
  Matrix a = x.adjoint() * x + lambda * Matrix::Identity(n, n);
  return a.inverse() * (x.adjoint() * y + lambda * v_bar);
}

double outer_loss(const FrameData& f, double lambda, const Vector& v_bar) {
  const Vector v = ridge_closed_form(f.x_tr, f.y_tr, lambda, v_bar);
  return (f.x_te * v - f.y_te).squaredNorm();
}

Vector outer_gradient(const FrameData& f, double lambda, const Vector& v_bar) {
  const int n = static_cast<int>(v_bar.size());
  const Vector v = ridge_closed_form(f.x_tr, f.y_tr, lambda, v_bar);
  const Matrix m =
      (1.0 / lambda) * (f.x_tr.adjoint() * f.x_tr) + Matrix::Identity(n, n);
  return m.inverse() * (2.0 * (f.x_te.adjoint() * (f.x_te * v - f.y_te)));
}

Vector fd_outer_gradient(const FrameData& f, double lambda, const Vector& v_bar,
                         double step) {
  const int n = static_cast<int>(v_bar.size());
  Vector g(n);
  for (int k = 0; k < n; ++k) {
    for (int part = 0; part < 2; ++part) {
      const std::complex<double> delta =
          part == 0 ? std::complex<double>(step, 0.0)
                    : std::complex<double>(0.0, step);
      Vector plus = v_bar, minus = v_bar;
      plus[k] += delta;
      minus[k] -= delta;
      const double d =
          (outer_loss(f, lambda, plus) - outer_loss(f, lambda, minus)) /
          (2.0 * step);
      if (part == 0) {
        g[k] = d;
      } else {
        g[k] += std::complex<double>(0.0, d);
      }
    }
  }
  return g;
}

Vector gd_meta(const std::vector<FrameData>& frames, double lambda,
               long max_steps) {
  const int n = static_cast<int>(frames.front().x_tr.cols());
  const auto grad = [&](const Vector& v_bar) -> Vector {
    Vector g = Vector::Zero(n);
    for (const auto& f : frames) {
      g += outer_gradient(f, lambda, v_bar);
    }
    return g;
  };
  return gd_quadratic_min(grad, n, max_steps);
}

double bessel_j0(double x, int terms) {
  double sum = 0.0;
  double term = 1.0;  // m = 0
  const double q = x * x / 4.0;
  for (int m = 0; m < terms; ++m) {
    if (m > 0) {
      term *= -q / (static_cast<double>(m) * static_cast<double>(m));
    }
    sum += term;
  }
  return sum;
}

}  // namespace chanpred::oracles
