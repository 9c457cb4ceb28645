#pragma once

#include <string>
#include <variant>
#include <vector>

#include "chanpred/numerics.hpp"

namespace chanpred {

// Bathtub density of isotropic scattering: 1 / ((w_max/2) sqrt(1 - (w/w_max)^2))
// for |w| < w_max (rad/slot). The density diverges at the band edge, so it is
// never evaluated there; lag correlations go through a substitution instead.
struct JakesSpectrum {
  double w_max = 0.0;
};

// Polynomial density alpha [a0 + a2 (w/w_max)^2 + a4 (w/w_max)^4] on
// |w| <= w_max, with alpha fixed by unit power.
struct RoundedSpectrum {
  double w_max = 0.0;
  double a0 = 1.0;
  double a2 = -1.72;
  double a4 = 0.785;

  double normalization() const;  // alpha
};

// White process: S(w) = 1 on |w| <= pi.
struct FlatSpectrum {};

// Piecewise-linear density on an explicit frequency grid, rescaled to unit
// power at construction. The grid need not be symmetric.
struct TabulatedSpectrum {
  std::vector<double> w;        // rad/slot, strictly increasing
  std::vector<double> density;  // raw values, >= 0
  double scale = 1.0;           // unit-power rescaling factor
};

using DopplerSpectrum =
    std::variant<JakesSpectrum, RoundedSpectrum, FlatSpectrum, TabulatedSpectrum>;

DopplerSpectrum make_jakes(double w_max);
DopplerSpectrum make_rounded(double w_max, double a0 = 1.0, double a2 = -1.72,
                             double a4 = 0.785);
DopplerSpectrum make_flat();
DopplerSpectrum make_tabulated(std::vector<double> w, std::vector<double> density);

// Half-width of the support: w_max for the band-limited spectra, pi for flat,
// the grid extent for tabulated.
double spectrum_support(const DopplerSpectrum& s);

// Density value S(w). Throws outside the support, and at the Jakes band edge
// where the density is singular.
double spectrum_density(const DopplerSpectrum& s, double w);

// r[k] = (1/2pi) Integral S(w) e^{j w k} dw, i.e. E[h_{l+k} conj(h_l)].
// Real for the symmetric spectra. The Jakes case uses w = w_max sin(theta),
// which removes the band-edge singularity and turns the integrand into
// cos(w_max k sin(theta)) on [0, pi/2].
Complex autocorrelation(const DopplerSpectrum& s, long lag);

// Lags r[0..count-1] stacked into a vector.
ComplexVector autocorrelation_sequence(const DopplerSpectrum& s, int count);

std::string spectrum_label(const DopplerSpectrum& s);

}  // namespace chanpred
