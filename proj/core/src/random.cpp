#include "udn/random.hpp"

#include <cmath>
#include <stdexcept>

namespace udn {

double RandomStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller on (0,1] x [0,1).
  double u1 = 1.0 - next_unit();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

std::uint64_t RandomStream::poisson_inversion(double mean) {
  // Knuth-style inversion on the CDF. exp(-mean) stays normal for
  // mean <= 500, which the chunking in poisson() guarantees.
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  const double u = next_unit();
  const std::uint64_t cap = static_cast<std::uint64_t>(10.0 * mean) + 100;
  while (u > cdf && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  constexpr double kChunk = 500.0;
  std::uint64_t total = 0;
  while (mean > kChunk) {
    total += poisson_inversion(kChunk);
    mean -= kChunk;
  }
  return total + poisson_inversion(mean);
}

}  // namespace udn
