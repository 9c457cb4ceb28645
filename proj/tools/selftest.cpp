#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "chanpred/baselines.hpp"
#include "chanpred/channel.hpp"
#include "chanpred/meta_offline.hpp"
#include "chanpred/meta_online.hpp"
#include "chanpred/numerics.hpp"
#include "chanpred/ridge.hpp"
#include "chanpred/spectrum.hpp"
#include "../tests/support/oracles.hpp"
#include "../tests/support/testdata.hpp"

namespace chanpred::selftest {

namespace {

using testdata::random_hpd;
using testdata::random_split;
using testdata::random_vector;
using testdata::to_frame_data;

double rel_error(const ComplexVector& got, const ComplexVector& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-30);
}

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string = pass, else failure detail
};

std::string expect(bool ok, const std::string& detail) {
  return ok ? std::string{} : detail;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::vector<Check> build_checks() {
  std::vector<Check> checks;

  checks.push_back({"hermitian_solve matches descent oracle", [] {
    const ComplexMatrix a = random_hpd(11, 5);
    const ComplexVector b = random_vector(12, 5);
    const ComplexVector x = hermitian_solve(a, b);
    // same quadratic, gradient 2(Av - b)
    const ComplexVector ref = oracles::gd_quadratic_min(
        [&](const ComplexVector& v) { return ComplexVector(2.0 * (a * v - b)); }, 5,
        100000);
    const double err = rel_error(x, ref);
    return expect(err < 1e-8, "rel error " + fmt(err));
  }});

  checks.push_back({"min_norm_lstsq matches tiny-ridge surrogate", [] {
    const ComplexMatrix x = testdata::random_matrix(21, 8, 3);
    const ComplexVector y = random_vector(22, 8);
    const ComplexVector v = min_norm_lstsq(x, y);
    ComplexMatrix a = x.adjoint() * x;
    a.diagonal().array() += 1e-12;
    const ComplexVector ref = hermitian_solve(a, ComplexVector(x.adjoint() * y));
    const double err = rel_error(v, ref);
    const double orth = (x.adjoint() * (x * v - y)).norm() /
                        std::max((x.adjoint() * y).norm(), 1e-30);
    return expect(err < 1e-6 && orth < 1e-8,
                  "rel " + fmt(err) + ", residual overlap " + fmt(orth));
  }});

  checks.push_back({"toeplitz_cholesky reconstructs a Jakes covariance", [] {
    const auto s = make_jakes(2.0 * M_PI * 0.05);
    const ComplexVector r = autocorrelation_sequence(s, 64);
    const ComplexMatrix c = toeplitz_cholesky(r, 64);
    ComplexMatrix t(64, 64);
    for (int i = 0; i < 64; ++i) {
      for (int j = 0; j < 64; ++j) {
        t(i, j) = i >= j ? r[i - j] : std::conj(r[j - i]);
      }
    }
    const double err = (c * c.adjoint() - t).cwiseAbs().maxCoeff();
    return expect(err < 1e-8, "max reconstruction error " + fmt(err));
  }});

  checks.push_back({"Jakes lag-1 autocorrelation matches Bessel series", [] {
    const double w_max = 2.0 * M_PI * 0.05;
    const Complex r1 = autocorrelation(make_jakes(w_max), 1);
    const double want = oracles::bessel_j0(w_max);
    const double err = std::abs(r1.real() - want) + std::abs(r1.imag());
    return expect(err < 1e-6, "error " + fmt(err));
  }});

  checks.push_back({"ridge_solve matches descent oracle", [] {
    const auto sp = random_split(31, 10, 0, 5);
    const ComplexVector v_bar = random_vector(32, 5);
    const Predictor p = ridge_solve(sp.train, {0.3, v_bar});
    const ComplexVector ref = oracles::gd_ridge(sp.train.design_matrix(),
                                                sp.train.target_vector(), 0.3, v_bar);
    const double err = rel_error(p.v, ref);
    return expect(err < 1e-7, "rel error " + fmt(err));
  }});

  checks.push_back({"transformed pairs reproduce the adaptation loss", [] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto sp = random_split(41 + i, 6, 8, 4);
      const double lambda = 0.2 + 0.3 * i;
      const ComplexVector v_bar = random_vector(51 + i, 4);
      const TransformedPair t = transform_pair(sp, lambda);
      const double via_transform = (t.inputs * v_bar - t.targets).squaredNorm();
      const Predictor p = ridge_solve(sp.train, {lambda, v_bar});
      const double direct = sum_squared_error(p, sp.test);
      worst = std::max(worst,
                       std::abs(via_transform - direct) / std::max(direct, 1e-30));
    }
    return expect(worst < 1e-8, "worst rel gap " + fmt(worst));
  }});

  checks.push_back({"meta_fit matches descent on the outer objective", [] {
    std::vector<SplitSet> frames;
    std::vector<oracles::FrameData> data;
    for (int f = 0; f < 8; ++f) {
      frames.push_back(random_split(61 + f, 5, 5, 5));
      data.push_back(to_frame_data(frames.back()));
    }
    const ComplexVector got = meta_fit(frames, 1.0);
    const ComplexVector ref = oracles::gd_meta(data, 1.0);
    const double err = rel_error(got, ref);
    return expect(err < 1e-6, "rel error " + fmt(err));
  }});

  checks.push_back({"ep_stationary_point matches descent oracle", [] {
    const auto sp = random_split(71, 5, 5, 5);
    const ComplexVector v_bar = random_vector(72, 5);
    const ComplexVector got = ep_stationary_point(sp, v_bar, 1.0, 0.01);
    const auto d = to_frame_data(sp);
    const ComplexVector ref =
        oracles::gd_nudged_ridge(d.x_tr, d.y_tr, d.x_te, d.y_te, 1.0, 0.01, v_bar);
    const double err = rel_error(got, ref);
    return expect(err < 1e-7, "rel error " + fmt(err));
  }});

  checks.push_back({"implicit gradient matches finite differences", [] {
    const auto sp = random_split(81, 5, 5, 5);
    const ComplexVector v_bar = random_vector(82, 5);
    const ComplexVector got = implicit_gradient(sp, v_bar, 1.0);
    const ComplexVector ref = oracles::fd_outer_gradient(to_frame_data(sp), 1.0, v_bar);
    const double err = rel_error(got, ref);
    return expect(err < 1e-4, "rel error " + fmt(err));
  }});

  checks.push_back({"EP gradient error is first order in alpha", [] {
    int hits = 0;
    for (int i = 0; i < 5; ++i) {
      const auto sp = random_split(91 + i, 5, 5, 5);
      const ComplexVector v_bar = random_vector(96 + i, 5);
      const ComplexVector exact = implicit_gradient(sp, v_bar, 1.0);
      const double e1 = (ep_gradient(sp, v_bar, 1.0, 0.02) - exact).norm();
      const double e2 = (ep_gradient(sp, v_bar, 1.0, 0.01) - exact).norm();
      const double ratio = e1 / std::max(e2, 1e-30);
      if (ratio > 1.5 && ratio < 2.5) {
        ++hits;
      }
    }
    return expect(hits == 5, "only " + std::to_string(hits) + "/5 ratios in [1.5, 2.5]");
  }});

  checks.push_back({"scalar Jakes genie matches the Bessel closed form", [] {
    const double w_max = 2.0 * M_PI * 0.05;
    const WienerSolution w = genie_wiener(make_jakes(w_max), 1, 1);
    const double r1 = oracles::bessel_j0(w_max);
    const double err_v = std::abs(w.v[0] - Complex(r1, 0.0));
    const double err_m = std::abs(w.analytic_mse - (1.0 - r1 * r1));
    return expect(err_v < 1e-6 && err_m < 1e-6,
                  "v error " + fmt(err_v) + ", mse error " + fmt(err_m));
  }});

  checks.push_back({"flat-spectrum genie is the zero predictor", [] {
    const WienerSolution w = genie_wiener(make_flat(), 4, 2);
    return expect(w.v.norm() < 1e-9 && std::abs(w.analytic_mse - 1.0) < 1e-9,
                  "|v| " + fmt(w.v.norm()) + ", mse " + fmt(w.analytic_mse));
  }});

  checks.push_back({"frame sampling is reproducible", [] {
    const auto s = make_jakes(2.0 * M_PI * 0.07);
    const ChannelFrame a = sample_frame_gaussian(s, 32, 1234);
    const ChannelFrame b = sample_frame_gaussian(s, 32, 1234);
    return expect(a.gains == b.gains, "same seed produced different frames");
  }});

  checks.push_back({"sampled frames carry the spectrum's lag-1 correlation", [] {
    const auto s = make_jakes(2.0 * M_PI * 0.075);
    const double want = autocorrelation(s, 1).real();
    const GaussianFrameSampler sampler(s, 32);
    Complex acc = 0.0;
    long count = 0;
    for (int f = 0; f < 2000; ++f) {
      const ChannelFrame frame = sampler.sample(derive_seed(777, f), f);
      for (int l = 0; l + 1 < 32; ++l) {
        acc += frame.gains[l + 1] * std::conj(frame.gains[l]);
        ++count;
      }
    }
    const double got = (acc / static_cast<double>(count)).real();
    const double err = std::abs(got - want);
    return expect(err < 0.02, "lag-1 error " + fmt(err));
  }});

  checks.push_back({"estimation noise has the configured variance", [] {
    ChannelFrame zero;
    zero.gains = ComplexVector::Zero(100000);
    const NoiseConfig noise{10.0, 10};  // variance 1e-2
    const ChannelFrame noisy = add_estimation_noise(zero, noise, 555);
    const double var = noisy.gains.squaredNorm() / 100000.0;
    const double err = std::abs(var - noise.variance()) / noise.variance();
    return expect(err < 0.05, "relative variance error " + fmt(err));
  }});

  return checks;
}

}  // namespace

bool run_all(std::ostream& out) {
  bool all_ok = true;
  for (const auto& check : build_checks()) {
    std::string detail;
    try {
      detail = check.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const bool ok = detail.empty();
    all_ok = all_ok && ok;
    out << (ok ? "[ok]   " : "[FAIL] ") << check.name;
    if (!ok) {
      out << " -- " << detail;
    }
    out << "\n";
  }
  out << (all_ok ? "selftest passed\n" : "selftest FAILED\n");
  return all_ok;
}

}  // namespace chanpred::selftest
