#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace chanpred {

// One splitmix64 round over the pair (parent, child). Used to derive
// independent seed streams hierarchically: base -> frame -> replicate -> ...
std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t child);

template <typename... Ids>
std::uint64_t derive_seed(std::uint64_t base, Ids... ids) {
  ((base = mix_seed(base, static_cast<std::uint64_t>(ids))), ...);
  return base;
}

// Deterministic random source. mt19937_64 provides the bit stream (its output
// is fixed by the standard); the distribution transforms live here instead of
// std:: so the draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform01();

  double uniform(double lo, double hi);

  // Uniform index in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Standard normal via Box-Muller.
  double gaussian();

  // Circularly-symmetric complex Gaussian, unit total variance
  // (real and imaginary parts each have variance 1/2).
  std::complex<double> circular_gaussian();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace chanpred
