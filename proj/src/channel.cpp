#include "chanpred/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chanpred/rng.hpp"

namespace chanpred {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_finite(const ComplexVector& gains, const char* op) {
  if (!gains.allFinite()) {
    throw std::runtime_error(std::string(op) + ": produced non-finite channel gains");
  }
}

}  // namespace

double NoiseConfig::variance() const {
  if (!enabled()) {
    return 0.0;
  }
  return std::pow(10.0, -snr_db / 10.0) / static_cast<double>(pilots);
}

void NoiseConfig::validate() const {
  if (pilots < 1) {
    throw std::invalid_argument("NoiseConfig: pilots must be >= 1");
  }
  if (std::isnan(snr_db)) {
    throw std::invalid_argument("NoiseConfig: snr_db must not be NaN");
  }
}

void ScmConfig::validate() const {
  if (path_count < 1) {
    throw std::invalid_argument("ScmConfig: path_count must be >= 1");
  }
  if (!path_powers.empty()) {
    if (static_cast<int>(path_powers.size()) != path_count) {
      throw std::invalid_argument("ScmConfig: path_powers size must match path_count");
    }
    double sum = 0.0;
    for (double p : path_powers) {
      if (!(p >= 0.0)) {
        throw std::invalid_argument("ScmConfig: path powers must be >= 0");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("ScmConfig: path powers must sum to 1");
    }
  }
  if (!(doppler_hz_lo >= 0.0) || !(doppler_hz_hi >= doppler_hz_lo)) {
    throw std::invalid_argument("ScmConfig: require 0 <= doppler_hz_lo <= doppler_hz_hi");
  }
  if (!(slot_duration_s > 0.0)) {
    throw std::invalid_argument("ScmConfig: slot_duration_s must be positive");
  }
  if (!(xpr_sigma_db >= 0.0)) {
    throw std::invalid_argument("ScmConfig: xpr_sigma_db must be >= 0");
  }
}

std::vector<double> ScmConfig::effective_powers() const {
  if (!path_powers.empty()) {
    return path_powers;
  }
  // Exponential profile spanning roughly 13 dB across the paths.
  std::vector<double> p(static_cast<std::size_t>(path_count));
  const double denom = path_count > 1 ? static_cast<double>(path_count - 1) : 1.0;
  double sum = 0.0;
  for (int d = 0; d < path_count; ++d) {
    p[static_cast<std::size_t>(d)] = std::exp(-3.0 * static_cast<double>(d) / denom);
    sum += p[static_cast<std::size_t>(d)];
  }
  for (double& v : p) {
    v /= sum;
  }
  return p;
}

double ScmConfig::path_gain_power() const {
  if (!polarization) {
    return 1.0;
  }
  // g = F_rx^T M F_tx e^{i phi} with independent uniform phases inside M, so
  // the four terms are uncorrelated. The cross-polar terms carry E[1/kappa]
  // with kappa lognormal in the dB domain.
  const double c = std::log(10.0) / 10.0;
  const double inv_kappa_mean =
      std::exp(-c * xpr_mu_db + 0.5 * c * c * xpr_sigma_db * xpr_sigma_db);
  const double a1 = std::norm(field_rx(0)), a2 = std::norm(field_rx(1));
  const double b1 = std::norm(field_tx(0)), b2 = std::norm(field_tx(1));
  return a1 * b1 + a2 * b2 + inv_kappa_mean * (a1 * b2 + a2 * b1);
}

GaussianFrameSampler::GaussianFrameSampler(const DopplerSpectrum& s, int length)
    : length_(length), label_(spectrum_label(s)) {
  if (length < 1) {
    throw std::invalid_argument("GaussianFrameSampler: length must be >= 1");
  }
  const ComplexVector r = autocorrelation_sequence(s, length);
  coloring_ = toeplitz_cholesky(r, length);
}

ChannelFrame GaussianFrameSampler::sample(std::uint64_t seed,
                                          std::int64_t frame_id) const {
  Rng rng(seed);
  ComplexVector z(length_);
  for (int i = 0; i < length_; ++i) {
    z[i] = rng.circular_gaussian();
  }
  ChannelFrame f;
  f.frame_id = frame_id;
  f.gains = coloring_ * z;
  f.meta = {label_, seed};
  check_finite(f.gains, "sample_frame_gaussian");
  return f;
}

ChannelFrame sample_frame_gaussian(const DopplerSpectrum& s, int length,
                                   std::uint64_t seed, std::int64_t frame_id) {
  return GaussianFrameSampler(s, length).sample(seed, frame_id);
}

ScmFrameParams draw_scm_frame_params(const ScmConfig& c, std::uint64_t seed) {
  c.validate();
  Rng rng(seed);
  ScmFrameParams p;
  p.power = c.effective_powers();
  p.omega.resize(p.power.size());
  for (double& w : p.omega) {
    const double hz = rng.uniform(c.doppler_hz_lo, c.doppler_hz_hi);
    w = kTwoPi * hz * c.slot_duration_s;  // rad/slot
  }
  return p;
}

ChannelFrame sample_scm_realization(const ScmConfig& c, const ScmFrameParams& p,
                                    int length, std::uint64_t seed,
                                    std::int64_t frame_id) {
  if (length < 1) {
    throw std::invalid_argument("sample_scm_realization: length must be >= 1");
  }
  if (p.power.size() != p.omega.size() || p.power.empty()) {
    throw std::invalid_argument("sample_scm_realization: inconsistent frame params");
  }
  Rng rng(seed);
  const std::size_t paths = p.power.size();

  std::vector<Complex> gain(paths);
  for (std::size_t d = 0; d < paths; ++d) {
    const double phi = rng.uniform(-M_PI, M_PI);
    Complex g = std::polar(1.0, phi);
    if (c.polarization) {
      const double p_tt = rng.uniform(-M_PI, M_PI);
      const double p_tp = rng.uniform(-M_PI, M_PI);
      const double p_pt = rng.uniform(-M_PI, M_PI);
      const double p_pp = rng.uniform(-M_PI, M_PI);
      const double kappa =
          std::pow(10.0, (c.xpr_mu_db + c.xpr_sigma_db * rng.gaussian()) / 10.0);
      const double x = std::sqrt(1.0 / kappa);
      Eigen::Matrix2cd m;
      m << std::polar(1.0, p_tt), x * std::polar(1.0, p_tp),
          x * std::polar(1.0, p_pt), std::polar(1.0, p_pp);
      g *= (c.field_rx.transpose() * m * c.field_tx)(0, 0);
    }
    gain[d] = std::sqrt(p.power[d]) * g;
  }

  ChannelFrame f;
  f.frame_id = frame_id;
  f.gains = ComplexVector::Zero(length);
  for (int l = 0; l < length; ++l) {
    Complex h = 0.0;
    for (std::size_t d = 0; d < paths; ++d) {
      // Slot index is 1-based so lag structure matches the frame convention.
      h += gain[d] * std::polar(1.0, -p.omega[d] * static_cast<double>(l + 1));
    }
    f.gains[l] = h;
  }
  std::ostringstream label;
  label << "scm(paths=" << paths << ")";
  f.meta = {label.str(), seed};
  check_finite(f.gains, "sample_scm_realization");
  return f;
}

ChannelFrame sample_frame_scm(const ScmConfig& c, int length, std::uint64_t seed,
                              std::int64_t frame_id) {
  const ScmFrameParams p = draw_scm_frame_params(c, derive_seed(seed, 1));
  return sample_scm_realization(c, p, length, derive_seed(seed, 2), frame_id);
}

ComplexVector scm_autocorrelation(const ScmConfig& c, const ScmFrameParams& p,
                                  int count) {
  if (count < 1) {
    throw std::invalid_argument("scm_autocorrelation: count must be >= 1");
  }
  const double rho = c.path_gain_power();
  ComplexVector r = ComplexVector::Zero(count);
  for (int k = 0; k < count; ++k) {
    Complex sum = 0.0;
    for (std::size_t d = 0; d < p.power.size(); ++d) {
      sum += p.power[d] * std::polar(1.0, -p.omega[d] * static_cast<double>(k));
    }
    r[k] = rho * sum;
  }
  return r;
}

ChannelFrame add_estimation_noise(const ChannelFrame& f, const NoiseConfig& n,
                                  std::uint64_t seed) {
  n.validate();
  if (!n.enabled()) {
    return f;
  }
  const double sigma = std::sqrt(n.variance());
  Rng rng(seed);
  ChannelFrame noisy = f;
  for (int i = 0; i < noisy.length(); ++i) {
    noisy.gains[i] += sigma * rng.circular_gaussian();
  }
  return noisy;
}

void export_frames_csv(const std::vector<ChannelFrame>& frames,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("export_frames_csv: cannot open " + path.string());
  }
  out << "frame_id,slot,re,im\n";
  char buf[128];
  for (const auto& f : frames) {
    for (int l = 0; l < f.length(); ++l) {
      std::snprintf(buf, sizeof(buf), "%lld,%d,%.17g,%.17g\n",
                    static_cast<long long>(f.frame_id), l + 1, f.gains[l].real(),
                    f.gains[l].imag());
      out << buf;
    }
  }
}

}  // namespace chanpred
