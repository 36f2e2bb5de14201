#include "udn/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "udn/errors.hpp"
#include "udn/units.hpp"

namespace udn {

double wavelength(double frequency_hz) {
  if (!(frequency_hz > 0.0))
    throw std::invalid_argument("wavelength: frequency must be > 0 Hz");
  return kSpeedOfLight / frequency_hz;
}

FieldRegions field_regions(double frequency_hz, double antenna_dimension_m,
                           double tx_height_m, double rx_height_m) {
  if (!(antenna_dimension_m > 0.0) || !(tx_height_m > 0.0) || !(rx_height_m > 0.0))
    throw std::invalid_argument("field_regions: all arguments must be > 0");
  FieldRegions r;
  r.wavelength_m = wavelength(frequency_hz);
  r.antenna_dimension_m = antenna_dimension_m;
  r.tx_height_m = tx_height_m;
  r.rx_height_m = rx_height_m;
  r.reactive_boundary_m = r.wavelength_m / (2.0 * M_PI);
  r.fraunhofer_m = 2.0 * antenna_dimension_m * antenna_dimension_m / r.wavelength_m;
  r.critical_m = 4.0 * tx_height_m * rx_height_m / r.wavelength_m;
  return r;
}

Region classify_region(double distance_m, const FieldRegions& regions) {
  if (!(distance_m >= 0.0))
    throw std::invalid_argument("classify_region: distance must be >= 0");
  if (!(regions.reactive_boundary_m > 0.0) || !(regions.fraunhofer_m > 0.0) ||
      !(regions.critical_m > 0.0))
    throw std::invalid_argument("classify_region: boundaries must be > 0");
  if (!(regions.reactive_boundary_m < regions.fraunhofer_m &&
        regions.fraunhofer_m < regions.critical_m)) {
    std::ostringstream msg;
    msg << "classify_region: inconsistent boundaries (need R_B < R_F < R_C, got R_B="
        << regions.reactive_boundary_m << " R_F=" << regions.fraunhofer_m
        << " R_C=" << regions.critical_m << ")";
    throw inconsistent_regions_error(msg.str());
  }
  if (distance_m <= regions.reactive_boundary_m) return Region::ReactiveNearField;
  if (distance_m <= regions.fraunhofer_m) return Region::RadiativeNearField;
  if (distance_m <= regions.critical_m) return Region::FarFieldWithinCritical;
  return Region::FarFieldBeyondCritical;
}

const char* region_name(Region region) {
  switch (region) {
    case Region::ReactiveNearField: return "reactive-near-field";
    case Region::RadiativeNearField: return "radiative-near-field";
    case Region::FarFieldWithinCritical: return "far-field-within-critical";
    case Region::FarFieldBeyondCritical: return "far-field-beyond-critical";
  }
  return "unknown";
}

PathlossModel PathlossModel::make(PathlossFamily family, std::vector<double> breakpoints_m,
                                  std::vector<double> exponents) {
  if (exponents.empty())
    throw std::invalid_argument("PathlossModel: at least one exponent required");
  if (exponents.size() != breakpoints_m.size() + 1)
    throw std::invalid_argument("PathlossModel: need |exponents| == |breakpoints| + 1");
  for (double a : exponents)
    if (!(a > 0.0) || a > 10.0)
      throw std::invalid_argument("PathlossModel: exponents must lie in (0, 10]");
  double prev = 0.0;
  for (double r : breakpoints_m) {
    if (!(r > prev))
      throw std::invalid_argument(
          "PathlossModel: breakpoints must be strictly increasing and > 0");
    prev = r;
  }

  PathlossModel m;
  m.family_ = family;
  m.breakpoints_m_ = std::move(breakpoints_m);
  m.exponents_ = std::move(exponents);
  m.continuity_.resize(m.exponents_.size());
  m.continuity_[0] = 1.0;
  for (std::size_t n = 1; n < m.exponents_.size(); ++n) {
    const double r = m.breakpoints_m_[n - 1];
    const double a_cur = m.exponents_[n];
    const double a_prev = m.exponents_[n - 1];
    double factor;
    if (family == PathlossFamily::BoundedMultiSlope)
      factor = (1.0 + std::pow(r, a_cur)) / (1.0 + std::pow(r, a_prev));
    else
      factor = std::pow(r, a_cur - a_prev);
    m.continuity_[n] = m.continuity_[n - 1] * factor;
  }
  return m;
}

namespace {

// d^a with the common small integer exponents special-cased; they dominate
// the Monte Carlo inner loop.
inline double pow_fast(double d, double a) {
  if (a == 2.0) return d * d;
  if (a == 4.0) {
    const double d2 = d * d;
    return d2 * d2;
  }
  if (a == 3.0) return d * d * d;
  return std::pow(d, a);
}

}  // namespace

double PathlossModel::gain(double distance_m) const {
  if (!(distance_m >= 0.0))
    throw std::invalid_argument("PathlossModel::gain: distance must be >= 0");
  // Segment index = number of breakpoints strictly below d, so a breakpoint
  // itself stays in the inner segment (R_n < d <= R_{n+1}).
  const std::size_t seg =
      static_cast<std::size_t>(std::lower_bound(breakpoints_m_.begin(), breakpoints_m_.end(),
                                                distance_m) -
                               breakpoints_m_.begin());
  const double a = exponents_[seg];
  if (family_ == PathlossFamily::BoundedMultiSlope)
    return continuity_[seg] / (1.0 + pow_fast(distance_m, a));
  if (distance_m == 0.0)
    throw singularity_error("unbounded pathloss diverges at zero distance");
  return continuity_[seg] / pow_fast(distance_m, a);
}

double PathlossModel::gain_db(double distance_m) const { return linear_to_db(gain(distance_m)); }

std::string PathlossModel::describe() const {
  std::ostringstream s;
  s << (bounded() ? "bpm" : "upm") << " alpha=[";
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    s << (i ? "," : "") << exponents_[i];
  s << "] breakpoints=[";
  for (std::size_t i = 0; i < breakpoints_m_.size(); ++i)
    s << (i ? "," : "") << breakpoints_m_[i];
  s << "]";
  return s.str();
}

}  // namespace udn
