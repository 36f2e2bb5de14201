#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "udn/geometry.hpp"
#include "udn/propagation.hpp"
#include "udn/random.hpp"

namespace udn {

enum class Fading {
  RayleighUnitMean,  // power factor ~ Exp(1)
  None,              // factor 1
};

/// One linear power fading factor.
double sample_fading(Fading fading, RandomStream& stream);

struct SimConfig {
  double density_per_km2 = 1e3;
  PathlossModel model = PathlossModel::single_slope(PathlossFamily::BoundedMultiSlope, 4.0);
  double sinr_threshold_db = 0.0;
  double tx_power_dbm = 20.0;  // uniform across transmitters
  Fading fading = Fading::RayleighUnitMean;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  bool include_noise = false;
  double noise_dbm = -90.0;  // only read when include_noise
  double window_scale = 1.0;  // multiplies the auto window radius (truncation checks)
};

/// Trial streams are keyed on this tag and the trial index only — never on
/// density or strategy — so curves compare under common random numbers.
inline constexpr std::string_view kTrialStreamTag = "linklevel.trial";

/// Received powers (mW) of one typed-user realization: serving transmitter
/// is the geometrically nearest, everything else interferes (full buffer).
struct TrialSignals {
  double desired_mw = 0.0;
  std::vector<double> interferer_mw;
};

/// Draws one realization: PPP in the typed-user window, per-point fading,
/// pathloss from the origin. If the unbounded family hits a point exactly
/// at the origin the deployment is resampled once, then the singularity
/// propagates.
TrialSignals draw_trial_signals(const SimConfig& config, RandomStream& stream);

/// SINR of a realization; +inf sentinel when there is no interference and
/// no noise.
double sinr_linear(const TrialSignals& signals, double noise_mw);

/// One SINR realization end to end.
double sinr_trial(const SimConfig& config, RandomStream& stream);

struct CoverageEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t trials = 0;
};

CoverageEstimate make_coverage_estimate(std::uint64_t successes, std::uint64_t trials);

/// P(SINR > tau) over config.trials realizations. Deterministic given
/// (config, seed) for any thread count.
CoverageEstimate coverage_probability(const SimConfig& config, int threads = 1);

struct ThroughputPoint {
  double density_per_km2 = 0.0;
  CoverageEstimate coverage;
  double st = 0.0;  // bits/(s*Hz*m^2)
};

/// Spatial throughput density * P(SINR > tau) * log2(1 + tau). The density
/// converts to per-m^2; the log is base 2 to match bits.
ThroughputPoint spatial_throughput(double density_per_km2, const CoverageEstimate& coverage,
                                   double tau_db);

/// One point per density with common random numbers across the curve.
std::vector<ThroughputPoint> throughput_curve(const SimConfig& base,
                                              std::span<const double> densities_per_km2,
                                              int threads = 1);

}  // namespace udn
