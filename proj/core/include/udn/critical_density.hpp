#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "udn/linklevel.hpp"

namespace udn {

struct StProbe {
  double mu_per_km2 = 0.0;
  double st = 0.0;
  double st_std_err = 0.0;
};

/// Spatial throughput at a density; `trials_factor` scales the base trial
/// budget (the refinement stages pay for tighter comparisons).
using StObjective = std::function<StProbe(double mu_per_km2, int trials_factor)>;

struct SearchOptions {
  int coarse_points = 13;
  int refine_points = 9;
  double bracket_rel_tol = 0.15;  // final (hi - lo) / lo
  int golden_trials_factor = 4;
  int max_golden_iterations = 48;
  int threads = 1;
};

struct CriticalDensityResult {
  double mu_star_per_km2 = 0.0;
  double st_star = 0.0;
  std::vector<StProbe> search_trace;  // every probe, in evaluation order
  double bracket_rel_width = 0.0;
  bool non_unimodal_warning = false;
  std::string warning;
};

/// Three-stage argmax search on [mu_min, mu_max]: log-spaced coarse grid,
/// refined grid spanning one coarse step around the coarse argmax, then
/// golden-section on the refined bracket with the trial budget multiplied.
/// The returned point is the best probe ever evaluated; an argmax on an
/// interval endpoint raises boundary_error.
CriticalDensityResult find_critical_density(const StObjective& objective, double mu_min,
                                            double mu_max, const SearchOptions& options = {});

/// Monte Carlo-backed overload: objective is the spatial throughput of
/// `base` at the probed density, common random numbers across probes.
CriticalDensityResult find_critical_density(const SimConfig& base, double mu_min, double mu_max,
                                            const SearchOptions& options = {});

struct ScalingFit {
  double c = 0.0;       // amplitude
  double kappa = 0.0;   // decay rate per density unit
  double rmse = 0.0;    // residual RMS in the log domain
  bool decaying = false;  // kappa > 0
};

/// Least squares of log(st/mu) = log(c) - kappa*mu over points with st > 0.
/// Throws insufficient_data_error with fewer than two positive points.
ScalingFit fit_scaling_decay(std::span<const std::pair<double, double>> mu_st);

struct Table2Cell {
  double tau_db = 0.0;
  double alpha1 = 0.0;
  double mu_star_per_km2 = 0.0;
  double st_star = 0.0;
  bool failed = false;
  std::string note;
};

/// Critical density per (tau, alpha1) cell over a dual-slope bounded model
/// sharing `base`'s breakpoint and alpha0. Per-cell search failures are
/// recorded in the cell, not thrown.
std::vector<Table2Cell> critical_density_table(std::span<const double> tau_db_list,
                                               std::span<const double> alpha1_list,
                                               const SimConfig& base, double mu_min,
                                               double mu_max,
                                               const SearchOptions& options = {});

}  // namespace udn
