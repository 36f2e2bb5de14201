#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace udn {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s

/// Carrier frequency (Hz) to wavelength (m). Throws std::invalid_argument
/// for non-positive frequency.
double wavelength(double frequency_hz);

/// Propagation-region boundaries for a carrier/antenna configuration:
///   reactive_boundary_m = lambda / (2*pi)
///   fraunhofer_m        = 2*D^2 / lambda
///   critical_m          = 4*h_tx*h_rx / lambda  (two-ray breakpoint)
struct FieldRegions {
  double wavelength_m = 0.0;
  double antenna_dimension_m = 0.0;
  double tx_height_m = 0.0;
  double rx_height_m = 0.0;
  double reactive_boundary_m = 0.0;
  double fraunhofer_m = 0.0;
  double critical_m = 0.0;
};

FieldRegions field_regions(double frequency_hz, double antenna_dimension_m,
                           double tx_height_m, double rx_height_m);

enum class Region {
  ReactiveNearField,
  RadiativeNearField,
  FarFieldWithinCritical,
  FarFieldBeyondCritical,
};

/// Partitions [0, inf) at R_B, R_F, R_C; a boundary belongs to the inner
/// region. Throws inconsistent_regions_error unless R_B < R_F < R_C: the
/// three formulas are only jointly meaningful in that order.
Region classify_region(double distance_m, const FieldRegions& regions);

const char* region_name(Region region);

enum class PathlossFamily {
  BoundedMultiSlope,    // eta_n * (1 + d^alpha_n)^-1, gain in (0, 1]
  UnboundedMultiSlope,  // eta_n * d^-alpha_n, divergent at d = 0
};

/// Multi-slope distance -> linear power gain law. Segment n covers
/// (R_n, R_{n+1}] with R_0 = 0 and R_N = inf; d = 0 belongs to segment 0.
/// Continuity factors eta_n are derived at construction, never user-set,
/// and make the gain continuous across every breakpoint.
class PathlossModel {
 public:
  static PathlossModel make(PathlossFamily family, std::vector<double> breakpoints_m,
                            std::vector<double> exponents);

  /// Convenience single-slope constructor.
  static PathlossModel single_slope(PathlossFamily family, double exponent) {
    return make(family, {}, {exponent});
  }

  /// Linear power gain at distance d >= 0. The unbounded family throws
  /// singularity_error at d = 0 rather than clamping.
  double gain(double distance_m) const;
  double gain_db(double distance_m) const;

  PathlossFamily family() const { return family_; }
  const std::vector<double>& breakpoints_m() const { return breakpoints_m_; }
  const std::vector<double>& exponents() const { return exponents_; }
  const std::vector<double>& continuity_factors() const { return continuity_; }
  std::size_t slopes() const { return exponents_.size(); }
  double max_breakpoint_m() const {
    return breakpoints_m_.empty() ? 0.0 : breakpoints_m_.back();
  }
  bool bounded() const { return family_ == PathlossFamily::BoundedMultiSlope; }

  std::string describe() const;

 private:
  PathlossModel() = default;

  PathlossFamily family_ = PathlossFamily::BoundedMultiSlope;
  std::vector<double> breakpoints_m_;
  std::vector<double> exponents_;
  std::vector<double> continuity_;
};

}  // namespace udn
