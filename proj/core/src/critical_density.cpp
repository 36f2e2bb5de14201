#include "udn/critical_density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "udn/errors.hpp"
#include "udn/units.hpp"

namespace udn {

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(points);
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  for (int i = 0; i < points; ++i)
    grid[i] = std::pow(10.0, llo + (lhi - llo) * i / static_cast<double>(points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::size_t argmax_st(const std::vector<StProbe>& probes) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probes.size(); ++i)
    if (probes[i].st > probes[best].st) best = i;
  return best;
}

/// A significant rise after a significant fall on either side of the peak
/// marks the probe pattern as non-unimodal beyond noise.
bool looks_non_unimodal(const std::vector<StProbe>& grid, std::size_t peak) {
  const auto scan = [&grid](std::size_t from, std::size_t to, int step) {
    double min_st = grid[from].st;
    double min_se = grid[from].st_std_err;
    bool fell = false;
    for (std::size_t i = from; i != to; i = static_cast<std::size_t>(static_cast<long>(i) + step)) {
      const StProbe& p = grid[i];
      if (p.st < min_st) {
        min_st = p.st;
        min_se = p.st_std_err;
      }
      if (grid[from].st - min_st > 3.0 * (grid[from].st_std_err + min_se)) fell = true;
      if (fell && p.st - min_st > 3.0 * (p.st_std_err + min_se)) return true;
    }
    return false;
  };
  if (peak + 1 < grid.size() && scan(peak, grid.size() - 1, +1)) return true;
  if (peak > 0 && scan(peak, 0, -1)) return true;
  return false;
}

}  // namespace

CriticalDensityResult find_critical_density(const StObjective& objective, double mu_min,
                                            double mu_max, const SearchOptions& options) {
  if (!(mu_min > 0.0) || !(mu_min < mu_max))
    throw std::invalid_argument("find_critical_density: need 0 < mu_min < mu_max");
  if (options.coarse_points < 4 || options.refine_points < 3)
    throw std::invalid_argument("find_critical_density: too few grid points");

  CriticalDensityResult result;
  auto probe = [&](double mu, int factor) {
    StProbe p = objective(mu, factor);
    result.search_trace.push_back(p);
    return p;
  };

  // Stage 1: coarse log grid.
  const auto coarse_mu = log_grid(mu_min, mu_max, options.coarse_points);
  std::vector<StProbe> coarse;
  coarse.reserve(coarse_mu.size());
  for (double mu : coarse_mu) coarse.push_back(probe(mu, 1));
  const std::size_t cpeak = argmax_st(coarse);
  if (cpeak == 0 || cpeak + 1 == coarse.size()) {
    std::ostringstream msg;
    msg << "find_critical_density: argmax at interval endpoint mu=" << coarse_mu[cpeak]
        << "; widen [mu_min, mu_max]";
    throw boundary_error(msg.str());
  }
  if (looks_non_unimodal(coarse, cpeak)) {
    result.non_unimodal_warning = true;
    result.warning = "coarse grid shows a significant rise after a fall; unimodality doubtful";
  }

  // Stage 2: refined grid spanning one coarse decade step around the peak.
  const double coarse_step = std::log10(mu_max / mu_min) / (options.coarse_points - 1);
  const double refine_lo = coarse_mu[cpeak] * std::pow(10.0, -coarse_step / 2.0);
  const double refine_hi = coarse_mu[cpeak] * std::pow(10.0, +coarse_step / 2.0);
  const auto refine_mu = log_grid(refine_lo, refine_hi, options.refine_points);
  std::vector<StProbe> refined;
  refined.reserve(refine_mu.size());
  for (double mu : refine_mu) refined.push_back(probe(mu, 1));
  std::size_t rpeak = argmax_st(refined);

  // Stage 3: golden-section on the refined bracket, trials multiplied.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::log10(refine_mu[rpeak > 0 ? rpeak - 1 : 0]);
  double hi = std::log10(refine_mu[std::min(rpeak + 1, refine_mu.size() - 1)]);
  auto golden_probe = [&](double logmu) { return probe(std::pow(10.0, logmu), options.golden_trials_factor); };
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  StProbe f1 = golden_probe(x1);
  StProbe f2 = golden_probe(x2);
  int iterations = 0;
  while (std::pow(10.0, hi - lo) - 1.0 > options.bracket_rel_tol &&
         iterations++ < options.max_golden_iterations) {
    if (f1.st > f2.st) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = golden_probe(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = golden_probe(x2);
    }
  }
  result.bracket_rel_width = std::pow(10.0, hi - lo) - 1.0;

  // Report the best probe ever made, so trace max == st_star exactly.
  const StProbe& best =
      *std::max_element(result.search_trace.begin(), result.search_trace.end(),
                        [](const StProbe& a, const StProbe& b) { return a.st < b.st; });
  result.mu_star_per_km2 = best.mu_per_km2;
  result.st_star = best.st;
  return result;
}

CriticalDensityResult find_critical_density(const SimConfig& base, double mu_min, double mu_max,
                                            const SearchOptions& options) {
  const StObjective objective = [&base, &options](double mu, int factor) {
    SimConfig config = base;
    config.density_per_km2 = mu;
    config.trials = base.trials * static_cast<std::uint64_t>(factor);
    const CoverageEstimate cov = coverage_probability(config, options.threads);
    const ThroughputPoint point = spatial_throughput(mu, cov, config.sinr_threshold_db);
    const double st_per_cov = mu * kPerKm2ToPerM2 * std::log2(1.0 + db_to_linear(config.sinr_threshold_db));
    return StProbe{mu, point.st, st_per_cov * cov.std_err};
  };
  return find_critical_density(objective, mu_min, mu_max, options);
}

ScalingFit fit_scaling_decay(std::span<const std::pair<double, double>> mu_st) {
  if (mu_st.size() < 5)
    throw std::invalid_argument("fit_scaling_decay: need at least 5 points");
  // Linear regression of y = log(st/mu) against x = mu: y = log c - kappa x.
  std::vector<std::pair<double, double>> pts;
  for (const auto& [mu, st] : mu_st) {
    if (!(st >= 0.0)) throw std::invalid_argument("fit_scaling_decay: st must be >= 0");
    if (st > 0.0) pts.emplace_back(mu, std::log(st / mu));
  }
  if (pts.size() < 2)
    throw insufficient_data_error("fit_scaling_decay: fewer than 2 positive-throughput points");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    throw degenerate_design_error("fit_scaling_decay: all densities identical");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;

  ScalingFit fit;
  fit.kappa = -slope;
  fit.c = std::exp(intercept);
  double sse = 0.0;
  double x_min = pts.front().first, x_max = pts.front().first;
  for (const auto& [x, y] : pts) {
    const double r = y - (intercept + slope * x);
    sse += r * r;
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
  }
  fit.rmse = std::sqrt(sse / n);
  // Decaying only if the decay term moves log-throughput measurably across
  // the observed range; filters the fp-noise slope of a flat curve.
  fit.decaying = fit.kappa * (x_max - x_min) > 1e-9;
  return fit;
}

std::vector<Table2Cell> critical_density_table(std::span<const double> tau_db_list,
                                               std::span<const double> alpha1_list,
                                               const SimConfig& base, double mu_min,
                                               double mu_max, const SearchOptions& options) {
  if (tau_db_list.empty() || alpha1_list.empty())
    throw std::invalid_argument("critical_density_table: empty tau or alpha list");
  if (base.model.slopes() != 2 || !base.model.bounded())
    throw std::invalid_argument("critical_density_table: base model must be dual-slope bounded");

  std::vector<Table2Cell> cells;
  cells.reserve(tau_db_list.size() * alpha1_list.size());
  for (double tau_db : tau_db_list) {
    for (double alpha1 : alpha1_list) {
      Table2Cell cell;
      cell.tau_db = tau_db;
      cell.alpha1 = alpha1;
      SimConfig config = base;
      config.sinr_threshold_db = tau_db;
      config.model = PathlossModel::make(PathlossFamily::BoundedMultiSlope,
                                         base.model.breakpoints_m(),
                                         {base.model.exponents()[0], alpha1});
      try {
        const CriticalDensityResult r = find_critical_density(config, mu_min, mu_max, options);
        cell.mu_star_per_km2 = r.mu_star_per_km2;
        cell.st_star = r.st_star;
        if (r.non_unimodal_warning) cell.note = r.warning;
      } catch (const std::exception& e) {
        cell.failed = true;
        cell.note = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace udn
