#include "udn/linklevel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "udn/errors.hpp"
#include "udn/parallel.hpp"
#include "udn/units.hpp"

namespace udn {

double sample_fading(Fading fading, RandomStream& stream) {
  return fading == Fading::RayleighUnitMean ? stream.exponential() : 1.0;
}

namespace {

TrialSignals draw_once(const SimConfig& config, RandomStream& stream) {
  const double mu = config.density_per_km2 * kPerKm2ToPerM2;
  const double radius =
      typed_user_window_radius_m(mu, config.model.max_breakpoint_m()) * config.window_scale;
  const Deployment deployment = sample_ppp(mu, Window::disk(radius), stream);
  const std::size_t n = deployment.positions.size();

  // Draw order is fixed (positions, then fades) so that common random
  // numbers line up across configurations.
  std::vector<double> fades(n);
  for (std::size_t i = 0; i < n; ++i) fades[i] = sample_fading(config.fading, stream);

  const double tx_mw = dbm_to_mw(config.tx_power_dbm);
  const auto [serving, serving_dist] = nearest_point(deployment, Point{0.0, 0.0});
  (void)serving_dist;

  TrialSignals signals;
  signals.interferer_mw.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::hypot(deployment.positions[i].x, deployment.positions[i].y);
    const double mw = tx_mw * config.model.gain(d) * fades[i];
    if (i == serving)
      signals.desired_mw = mw;
    else
      signals.interferer_mw.push_back(mw);
  }
  return signals;
}

}  // namespace

TrialSignals draw_trial_signals(const SimConfig& config, RandomStream& stream) {
  if (config.trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
  if (!(config.density_per_km2 > 0.0))
    throw std::invalid_argument("SimConfig: density must be > 0");
  if (!std::isfinite(config.sinr_threshold_db))
    throw std::invalid_argument("SimConfig: SINR threshold must be finite");
  try {
    return draw_once(config, stream);
  } catch (const singularity_error&) {
    // A point exactly at the origin has probability zero; resample once.
    return draw_once(config, stream);
  }
}

double sinr_linear(const TrialSignals& signals, double noise_mw) {
  double denom = noise_mw;
  for (double mw : signals.interferer_mw) denom += mw;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return signals.desired_mw / denom;
}

double sinr_trial(const SimConfig& config, RandomStream& stream) {
  const TrialSignals signals = draw_trial_signals(config, stream);
  const double noise_mw = config.include_noise ? dbm_to_mw(config.noise_dbm) : 0.0;
  return sinr_linear(signals, noise_mw);
}

CoverageEstimate make_coverage_estimate(std::uint64_t successes, std::uint64_t trials) {
  CoverageEstimate e;
  e.trials = trials;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

CoverageEstimate coverage_probability(const SimConfig& config, int threads) {
  if (config.trials < 100)
    throw std::invalid_argument("coverage_probability: need at least 100 trials");
  const double tau = db_to_linear(config.sinr_threshold_db);
  const std::uint64_t successes =
      parallel_count(config.trials, threads, [&config, tau](std::uint64_t t) {
        RandomStream stream(config.seed, kTrialStreamTag, t);
        return sinr_trial(config, stream) > tau;
      });
  return make_coverage_estimate(successes, config.trials);
}

ThroughputPoint spatial_throughput(double density_per_km2, const CoverageEstimate& coverage,
                                   double tau_db) {
  ThroughputPoint p;
  p.density_per_km2 = density_per_km2;
  p.coverage = coverage;
  p.st = density_per_km2 * kPerKm2ToPerM2 * coverage.p_hat * std::log2(1.0 + db_to_linear(tau_db));
  return p;
}

std::vector<ThroughputPoint> throughput_curve(const SimConfig& base,
                                              std::span<const double> densities_per_km2,
                                              int threads) {
  if (densities_per_km2.empty())
    throw std::invalid_argument("throughput_curve: empty density list");
  std::vector<ThroughputPoint> curve;
  curve.reserve(densities_per_km2.size());
  for (double mu : densities_per_km2) {
    SimConfig config = base;
    config.density_per_km2 = mu;
    curve.push_back(spatial_throughput(mu, coverage_probability(config, threads),
                                       config.sinr_threshold_db));
  }
  return curve;
}

}  // namespace udn
