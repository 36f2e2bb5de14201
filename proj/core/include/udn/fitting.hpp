#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "udn/propagation.hpp"
#include "udn/random.hpp"

namespace udn {

struct Measurement {
  double distance_m = 0.0;
  double rx_power_dbm = 0.0;
  std::optional<double> frequency_hz;
};

struct FitSpec {
  PathlossFamily family = PathlossFamily::BoundedMultiSlope;
  int slopes = 1;
  /// When set, breakpoints are pinned (physics-derived boundaries);
  /// otherwise they are free within the measured distance range.
  std::optional<std::vector<double>> fixed_breakpoints_m;
  std::pair<double, double> exponent_bounds{0.5, 8.0};
  double tx_power_dbm = 0.0;
  int multistart = 16;
};

struct FitResult {
  PathlossModel model = PathlossModel::single_slope(PathlossFamily::BoundedMultiSlope, 4.0);
  double rmse_db = 0.0;
  std::vector<double> residuals_db;  // measured - (tx + gain_db), per point
  std::vector<std::string> warnings;
};

/// Least-squares fit of dB residuals by multistart pattern search
/// (derivative-free; the objective is piecewise-smooth in breakpoints).
/// Search stops when no 1e-6-relative coordinate step improves.
FitResult fit_pathloss(std::span<const Measurement> measurements, const FitSpec& spec);

/// Test-data generator: rx = tx + gain_db(d) + Normal(0, sigma) per point.
std::vector<Measurement> synth_measurements(const PathlossModel& model,
                                            std::span<const double> distances_m,
                                            double tx_power_dbm, double noise_sigma_db,
                                            RandomStream& stream);

/// Fits every spec and returns results sorted by rmse ascending (stable).
std::vector<FitResult> compare_families(std::span<const Measurement> measurements,
                                        std::span<const FitSpec> specs);

/// CSV with header `distance_m,rx_power_dbm[,frequency_hz]`.
std::vector<Measurement> read_measurements_csv(std::istream& in);

}  // namespace udn
