#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "udn/linklevel.hpp"

namespace udn {

/// Received-signal powers at one receiver, linear units, any order.
struct SignalProfile {
  double desired = 1.0;
  std::vector<double> interferers;
};

enum class StrategyKind { NoMitigation, Sic, Ia, Ica };

/// Interference-management strategy. `budget` is the alignment budget
/// (antenna count); `decode_threshold` is the linear SIC decodability
/// threshold, defaulting to the coverage threshold when unset.
struct Strategy {
  StrategyKind kind = StrategyKind::NoMitigation;
  int budget = 0;
  std::optional<double> decode_threshold;

  static Strategy none() { return {}; }
  static Strategy sic(std::optional<double> tau_dec = std::nullopt) {
    return {StrategyKind::Sic, 0, tau_dec};
  }
  static Strategy ia(int budget) { return {StrategyKind::Ia, budget, std::nullopt}; }
  static Strategy ica(int budget, std::optional<double> tau_dec = std::nullopt) {
    return {StrategyKind::Ica, budget, tau_dec};
  }
};

const char* strategy_name(StrategyKind kind);

enum class DecodeAction { Sic, Ia, Stop };

struct DecodeStep {
  std::size_t interferer = 0;    // original index into the profile
  DecodeAction action = DecodeAction::Stop;
};

struct DecodingOutcome {
  std::vector<std::size_t> cancelled;    // original indices, ascending
  std::vector<std::size_t> ia_assigned;  // subset of cancelled, ascending
  double residual_sinr = 0.0;            // +inf when nothing survives
  std::vector<DecodeStep> steps;         // ordered walk decisions
};

/// Successive cancellation, strongest first. Interferer k is peeled iff
/// S_k / (desired + sum of everything else still in the air) >= tau_dec;
/// the walk stops at the first failure.
DecodingOutcome sic_decode(const SignalProfile& profile, double tau_dec);

/// Ideal alignment: the `budget` strongest interferers are projected away
/// unconditionally (ties by original index).
DecodingOutcome ia_decode(const SignalProfile& profile, int budget);

/// Hybrid: walk strongest-first; SIC-peel when decodable, otherwise spend
/// alignment budget on the blocker and keep walking; stop when neither is
/// possible. Degenerates to sic_decode at budget 0 and to ia_decode when
/// nothing is SIC-decodable.
DecodingOutcome ica_decode(const SignalProfile& profile, double tau_dec, int budget);

/// Dispatch on strategy kind; `default_tau_dec` applies when the strategy
/// carries no explicit decode threshold.
DecodingOutcome decode(const SignalProfile& profile, const Strategy& strategy,
                       double default_tau_dec);

/// Coverage with the strategy applied per trial: profile built from the
/// same draws as coverage_probability (so NoMitigation reproduces it
/// exactly), success iff the residual SINR clears the config threshold.
CoverageEstimate strategy_coverage(const SimConfig& config, const Strategy& strategy,
                                   int threads = 1);

/// Per-density spatial throughput for one strategy, common random numbers
/// across strategies and densities.
std::vector<ThroughputPoint> strategy_throughput_curve(const SimConfig& base,
                                                       const Strategy& strategy,
                                                       std::span<const double> densities_per_km2,
                                                       int threads = 1);

}  // namespace udn
