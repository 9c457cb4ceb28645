#include "chanpred/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chanpred {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double interpolate(const TabulatedSpectrum& t, double w) {
  const auto it = std::upper_bound(t.w.begin(), t.w.end(), w);
  if (it == t.w.begin() || (it == t.w.end() && w > t.w.back())) {
    throw std::domain_error("spectrum_density: frequency outside tabulated grid");
  }
  if (it == t.w.end()) {
    return t.density.back();
  }
  const auto hi = static_cast<std::size_t>(it - t.w.begin());
  const auto lo = hi - 1;
  const double frac = (w - t.w[lo]) / (t.w[hi] - t.w[lo]);
  return t.density[lo] + frac * (t.density[hi] - t.density[lo]);
}

double raw_tabulated_power(const TabulatedSpectrum& t) {
  return quadrature([&](double w) { return interpolate(t, w); }, t.w.front(),
                    t.w.back()) /
         kTwoPi;
}

}  // namespace

double RoundedSpectrum::normalization() const {
  return M_PI / (w_max * (a0 + a2 / 3.0 + a4 / 5.0));
}

DopplerSpectrum make_jakes(double w_max) {
  if (!(w_max > 0.0)) {
    throw std::invalid_argument("make_jakes: w_max must be positive");
  }
  return JakesSpectrum{w_max};
}

DopplerSpectrum make_rounded(double w_max, double a0, double a2, double a4) {
  if (!(w_max > 0.0)) {
    throw std::invalid_argument("make_rounded: w_max must be positive");
  }
  RoundedSpectrum s{w_max, a0, a2, a4};
  if (!(a0 + a2 / 3.0 + a4 / 5.0 > 0.0)) {
    throw std::invalid_argument("make_rounded: coefficients give nonpositive power");
  }
  // The polynomial must stay nonnegative across the band.
  for (int i = 0; i <= 100; ++i) {
    const double u = static_cast<double>(i) / 100.0;
    if (a0 + a2 * u * u + a4 * u * u * u * u < -1e-12) {
      throw std::invalid_argument("make_rounded: density is negative inside the band");
    }
  }
  return s;
}

DopplerSpectrum make_flat() { return FlatSpectrum{}; }

DopplerSpectrum make_tabulated(std::vector<double> w, std::vector<double> density) {
  if (w.size() < 2 || w.size() != density.size()) {
    throw std::invalid_argument(
        "make_tabulated: need matching grids with at least 2 points");
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || !std::isfinite(density[i]) || density[i] < 0.0) {
      throw std::invalid_argument("make_tabulated: grid values must be finite, density >= 0");
    }
    if (i > 0 && !(w[i] > w[i - 1])) {
      throw std::invalid_argument("make_tabulated: frequencies must be strictly increasing");
    }
  }
  TabulatedSpectrum t{std::move(w), std::move(density), 1.0};
  const double power = raw_tabulated_power(t);
  if (!(power > 0.0)) {
    throw std::invalid_argument("make_tabulated: density has no mass");
  }
  t.scale = 1.0 / power;
  return t;
}

double spectrum_support(const DopplerSpectrum& s) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, JakesSpectrum>) {
          return v.w_max;
        } else if constexpr (std::is_same_v<T, RoundedSpectrum>) {
          return v.w_max;
        } else if constexpr (std::is_same_v<T, FlatSpectrum>) {
          return M_PI;
        } else {
          return std::max(std::abs(v.w.front()), std::abs(v.w.back()));
        }
      },
      s);
}

double spectrum_density(const DopplerSpectrum& s, double w) {
  return std::visit(
      [w](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, JakesSpectrum>) {
          const double u = std::abs(w) / v.w_max;
          if (u > 1.0) {
            throw std::domain_error("spectrum_density: |w| beyond Jakes support");
          }
          if (u == 1.0) {
            throw std::domain_error(
                "spectrum_density: Jakes density is singular at |w| = w_max");
          }
          return 1.0 / ((v.w_max / 2.0) * std::sqrt(1.0 - u * u));
        } else if constexpr (std::is_same_v<T, RoundedSpectrum>) {
          const double u = std::abs(w) / v.w_max;
          if (u > 1.0) {
            throw std::domain_error("spectrum_density: |w| beyond rounded support");
          }
          return v.normalization() * (v.a0 + v.a2 * u * u + v.a4 * u * u * u * u);
        } else if constexpr (std::is_same_v<T, FlatSpectrum>) {
          if (std::abs(w) > M_PI) {
            throw std::domain_error("spectrum_density: |w| beyond flat support");
          }
          return 1.0;
        } else {
          return v.scale * interpolate(v, w);
        }
      },
      s);
}

Complex autocorrelation(const DopplerSpectrum& s, long lag) {
  const double k = static_cast<double>(lag);
  return std::visit(
      [k](const auto& v) -> Complex {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, JakesSpectrum>) {
          const double z = v.w_max * k;
          const double r =
              (2.0 / M_PI) *
              quadrature([z](double th) { return std::cos(z * std::sin(th)); }, 0.0,
                         M_PI / 2.0);
          return {r, 0.0};
        } else if constexpr (std::is_same_v<T, RoundedSpectrum>) {
          const double alpha = v.normalization();
          const double r =
              (1.0 / M_PI) * quadrature(
                                 [&](double w) {
                                   const double u = w / v.w_max;
                                   const double d =
                                       alpha * (v.a0 + v.a2 * u * u +
                                                v.a4 * u * u * u * u);
                                   return d * std::cos(w * k);
                                 },
                                 0.0, v.w_max);
          return {r, 0.0};
        } else if constexpr (std::is_same_v<T, FlatSpectrum>) {
          return {k == 0.0 ? 1.0 : 0.0, 0.0};
        } else {
          const auto dens = [&](double w) { return v.scale * interpolate(v, w); };
          const double re = quadrature(
              [&](double w) { return dens(w) * std::cos(w * k); }, v.w.front(),
              v.w.back());
          const double im = quadrature(
              [&](double w) { return dens(w) * std::sin(w * k); }, v.w.front(),
              v.w.back());
          return Complex{re, im} / (2.0 * M_PI);
        }
      },
      s);
}

ComplexVector autocorrelation_sequence(const DopplerSpectrum& s, int count) {
  if (count < 1) {
    throw std::invalid_argument("autocorrelation_sequence: count must be >= 1");
  }
  ComplexVector r(count);
  for (int k = 0; k < count; ++k) {
    r[k] = autocorrelation(s, k);
  }
  return r;
}

std::string spectrum_label(const DopplerSpectrum& s) {
  std::ostringstream out;
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, JakesSpectrum>) {
          out << "jakes(w_max=" << v.w_max << ")";
        } else if constexpr (std::is_same_v<T, RoundedSpectrum>) {
          out << "rounded(w_max=" << v.w_max << ")";
        } else if constexpr (std::is_same_v<T, FlatSpectrum>) {
          out << "flat";
        } else {
          out << "tabulated(" << v.w.size() << " points)";
        }
      },
      s);
  return out.str();
}

}  // namespace chanpred
