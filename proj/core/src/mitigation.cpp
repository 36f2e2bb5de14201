#include "udn/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "udn/parallel.hpp"
#include "udn/units.hpp"

namespace udn {

const char* strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::NoMitigation: return "none";
    case StrategyKind::Sic: return "sic";
    case StrategyKind::Ia: return "ia";
    case StrategyKind::Ica: return "ica";
  }
  return "unknown";
}

namespace {

void validate(const SignalProfile& profile) {
  if (!(profile.desired > 0.0))
    throw std::invalid_argument("SignalProfile: desired power must be > 0");
  for (double p : profile.interferers)
    if (!(p > 0.0))
      throw std::invalid_argument("SignalProfile: interferer powers must be > 0");
}

/// Indices sorted by power descending; stable, so ties keep original order.
std::vector<std::size_t> descending_order(const std::vector<double>& powers) {
  std::vector<std::size_t> order(powers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&powers](std::size_t a, std::size_t b) { return powers[a] > powers[b]; });
  return order;
}

/// Residual over the survivors, recomputed from scratch in original index
/// order (matches the brute-force definition, no running-sum drift).
double residual_over(const SignalProfile& profile, const std::vector<bool>& removed) {
  double denom = 0.0;
  for (std::size_t i = 0; i < profile.interferers.size(); ++i)
    if (!removed[i]) denom += profile.interferers[i];
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return profile.desired / denom;
}

DecodingOutcome finalize(const SignalProfile& profile, std::vector<bool> removed,
                         std::vector<bool> via_ia, std::vector<DecodeStep> steps) {
  DecodingOutcome out;
  for (std::size_t i = 0; i < removed.size(); ++i) {
    if (removed[i]) out.cancelled.push_back(i);
    if (via_ia[i]) out.ia_assigned.push_back(i);
  }
  out.residual_sinr = residual_over(profile, removed);
  out.steps = std::move(steps);
  return out;
}

}  // namespace

DecodingOutcome sic_decode(const SignalProfile& profile, double tau_dec) {
  return ica_decode(profile, tau_dec, 0);
}

DecodingOutcome ia_decode(const SignalProfile& profile, int budget) {
  validate(profile);
  if (budget < 0) throw std::invalid_argument("ia_decode: budget must be >= 0");
  const auto order = descending_order(profile.interferers);
  std::vector<bool> removed(order.size(), false);
  std::vector<bool> via_ia(order.size(), false);
  std::vector<DecodeStep> steps;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(budget), order.size());
  for (std::size_t k = 0; k < take; ++k) {
    removed[order[k]] = true;
    via_ia[order[k]] = true;
    steps.push_back({order[k], DecodeAction::Ia});
  }
  return finalize(profile, std::move(removed), std::move(via_ia), std::move(steps));
}

DecodingOutcome ica_decode(const SignalProfile& profile, double tau_dec, int budget) {
  validate(profile);
  if (budget < 0) throw std::invalid_argument("ica_decode: budget must be >= 0");
  const auto order = descending_order(profile.interferers);
  std::vector<bool> removed(order.size(), false);
  std::vector<bool> via_ia(order.size(), false);
  std::vector<DecodeStep> steps;

  double in_the_air = 0.0;
  for (double p : profile.interferers) in_the_air += p;

  int ia_left = budget;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t idx = order[k];
    const double s_k = profile.interferers[idx];
    const double competing = profile.desired + (in_the_air - s_k);
    if (s_k / competing >= tau_dec) {
      removed[idx] = true;
      in_the_air -= s_k;
      steps.push_back({idx, DecodeAction::Sic});
    } else if (ia_left > 0) {
      removed[idx] = true;
      via_ia[idx] = true;
      in_the_air -= s_k;
      --ia_left;
      steps.push_back({idx, DecodeAction::Ia});
    } else {
      steps.push_back({idx, DecodeAction::Stop});
      break;
    }
  }
  return finalize(profile, std::move(removed), std::move(via_ia), std::move(steps));
}

DecodingOutcome decode(const SignalProfile& profile, const Strategy& strategy,
                       double default_tau_dec) {
  const double tau_dec = strategy.decode_threshold.value_or(default_tau_dec);
  switch (strategy.kind) {
    case StrategyKind::NoMitigation: {
      validate(profile);
      DecodingOutcome out;
      out.residual_sinr = residual_over(profile, std::vector<bool>(profile.interferers.size(), false));
      return out;
    }
    case StrategyKind::Sic: return sic_decode(profile, tau_dec);
    case StrategyKind::Ia: return ia_decode(profile, strategy.budget);
    case StrategyKind::Ica: return ica_decode(profile, tau_dec, strategy.budget);
  }
  throw std::invalid_argument("decode: unknown strategy kind");
}

CoverageEstimate strategy_coverage(const SimConfig& config, const Strategy& strategy,
                                   int threads) {
  if (config.trials < 100)
    throw std::invalid_argument("strategy_coverage: need at least 100 trials");
  const double tau = db_to_linear(config.sinr_threshold_db);
  const std::uint64_t successes =
      parallel_count(config.trials, threads, [&config, &strategy, tau](std::uint64_t t) {
        RandomStream stream(config.seed, kTrialStreamTag, t);
        const TrialSignals signals = draw_trial_signals(config, stream);
        const SignalProfile profile{signals.desired_mw, signals.interferer_mw};
        return decode(profile, strategy, tau).residual_sinr > tau;
      });
  return make_coverage_estimate(successes, config.trials);
}

std::vector<ThroughputPoint> strategy_throughput_curve(const SimConfig& base,
                                                       const Strategy& strategy,
                                                       std::span<const double> densities_per_km2,
                                                       int threads) {
  if (densities_per_km2.empty())
    throw std::invalid_argument("strategy_throughput_curve: empty density list");
  std::vector<ThroughputPoint> curve;
  curve.reserve(densities_per_km2.size());
  for (double mu : densities_per_km2) {
    SimConfig config = base;
    config.density_per_km2 = mu;
    curve.push_back(spatial_throughput(mu, strategy_coverage(config, strategy, threads),
                                       config.sinr_threshold_db));
  }
  return curve;
}

}  // namespace udn
