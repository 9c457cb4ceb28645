#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "chanpred/numerics.hpp"
#include "chanpred/spectrum.hpp"

namespace chanpred {

struct FrameMeta {
  std::string descriptor;
  std::uint64_t seed = 0;
};

// One frame's sequence of complex scalar channel gains.
struct ChannelFrame {
  std::int64_t frame_id = 0;
  ComplexVector gains;
  FrameMeta meta;

  int length() const { return static_cast<int>(gains.size()); }
};

// Pilot-based channel estimation error: additive CN(0, SNR^-1 / pilots) per
// slot. An infinite snr_db disables the noise.
struct NoiseConfig {
  double snr_db = std::numeric_limits<double>::infinity();
  int pilots = 1;

  bool enabled() const { return std::isfinite(snr_db); }
  double variance() const;
  void validate() const;
};

// Simplified single-cluster multipath model: a sum of Doppler-shifted paths
// with per-frame path powers and frequencies, random initial phases, and an
// optional polarization coupling stage.
struct ScmConfig {
  int path_count = 23;
  std::vector<double> path_powers;  // empty -> exponential profile, sum 1
  double doppler_hz_lo = 10.0;
  double doppler_hz_hi = 100.0;
  double slot_duration_s = 1e-3;
  bool polarization = true;
  double xpr_mu_db = 7.0;     // lognormal XPR, dB domain
  double xpr_sigma_db = 3.0;
  Eigen::Vector2cd field_tx = Eigen::Vector2cd(1.0, 0.0);
  Eigen::Vector2cd field_rx = Eigen::Vector2cd(1.0, 0.0);

  void validate() const;
  // Effective per-path powers (defaulted and normalized).
  std::vector<double> effective_powers() const;
  // E|g_d|^2 of the per-path complex gain, accounting for polarization.
  double path_gain_power() const;
};

// Long-term parameters realized once per frame: path powers and per-path
// Doppler shifts (rad/slot).
struct ScmFrameParams {
  std::vector<double> power;
  std::vector<double> omega;
};

// --- stationary Gaussian frames -------------------------------------------

// Precomputes the Toeplitz coloring for one (spectrum, length) pair so many
// frames of the same process can be drawn cheaply.
class GaussianFrameSampler {
 public:
  GaussianFrameSampler(const DopplerSpectrum& s, int length);

  ChannelFrame sample(std::uint64_t seed, std::int64_t frame_id = 0) const;

  int length() const { return length_; }
  const ComplexMatrix& coloring() const { return coloring_; }

 private:
  int length_;
  ComplexMatrix coloring_;
  std::string label_;
};

ChannelFrame sample_frame_gaussian(const DopplerSpectrum& s, int length,
                                   std::uint64_t seed, std::int64_t frame_id = 0);

// --- SCM frames ------------------------------------------------------------

ScmFrameParams draw_scm_frame_params(const ScmConfig& c, std::uint64_t seed);

// Fresh short-term realization (phases, polarization) for fixed long-term
// parameters.
ChannelFrame sample_scm_realization(const ScmConfig& c, const ScmFrameParams& p,
                                    int length, std::uint64_t seed,
                                    std::int64_t frame_id = 0);

ChannelFrame sample_frame_scm(const ScmConfig& c, int length, std::uint64_t seed,
                              std::int64_t frame_id = 0);

// Ensemble autocorrelation E[h_{l+k} conj(h_l)] of the realized frame process,
// for lags 0..count-1. This is what a genie that knows the frame's long-term
// parameters uses.
ComplexVector scm_autocorrelation(const ScmConfig& c, const ScmFrameParams& p,
                                  int count);

// --- estimation noise and export -------------------------------------------

ChannelFrame add_estimation_noise(const ChannelFrame& f, const NoiseConfig& n,
                                  std::uint64_t seed);

// Columns: frame_id, slot, re, im.
void export_frames_csv(const std::vector<ChannelFrame>& frames,
                       const std::filesystem::path& path);

}  // namespace chanpred
