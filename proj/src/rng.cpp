#include "chanpred/rng.hpp"

#include <cmath>

namespace chanpred {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t child) {
  return splitmix64(splitmix64(parent) ^ splitmix64(child + 0x6a09e667f3bcc909ULL));
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::size_t Rng::uniform_index(std::size_t n) {
  // Multiply-shift bounded draw; bias is below 2^-64 per call.
  using u128 = unsigned __int128;
  return static_cast<std::size_t>((u128(next_u64()) * u128(n)) >> 64);
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> Rng::circular_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

}  // namespace chanpred
