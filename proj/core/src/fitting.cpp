#include "udn/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "udn/errors.hpp"

namespace udn {

namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

struct Problem {
  PathlossFamily family;
  int slopes;
  std::optional<std::vector<double>> fixed_breakpoints;
  double exp_lo, exp_hi;
  double tx_power_dbm;
  double log_d_lo, log_d_hi;  // log10 of the measured distance range
  std::span<const Measurement> data;

  int n_exp() const { return slopes; }
  int n_bp() const { return fixed_breakpoints ? 0 : slopes - 1; }
  int dims() const { return n_exp() + n_bp(); }

  // Parameter vector: exponents (linear), then free breakpoints (log10).
  std::optional<PathlossModel> build(const std::vector<double>& x) const {
    std::vector<double> exps(x.begin(), x.begin() + n_exp());
    std::vector<double> bps;
    if (fixed_breakpoints) {
      bps = *fixed_breakpoints;
    } else {
      double prev_log = log_d_lo - 1e-12;
      for (int i = 0; i < n_bp(); ++i) {
        const double lb = x[n_exp() + i];
        if (lb < log_d_lo || lb > log_d_hi || lb <= prev_log + 1e-9) return std::nullopt;
        prev_log = lb;
        bps.push_back(std::pow(10.0, lb));
      }
    }
    for (double a : exps)
      if (a < exp_lo || a > exp_hi) return std::nullopt;
    return PathlossModel::make(family, std::move(bps), std::move(exps));
  }

  double sse(const std::vector<double>& x) const {
    const auto model = build(x);
    if (!model) return kInfeasible;
    double total = 0.0;
    for (const Measurement& m : data) {
      const double r = m.rx_power_dbm - (tx_power_dbm + model->gain_db(m.distance_m));
      total += r * r;
    }
    return total;
  }
};

/// Compass pattern search with per-coordinate step halving. Terminates when
/// every step falls below 1e-6 relative to the coordinate scale.
double pattern_search(const Problem& problem, std::vector<double>& x) {
  const int d = problem.dims();
  std::vector<double> step(d);
  for (int i = 0; i < d; ++i)
    step[i] = i < problem.n_exp() ? (problem.exp_hi - problem.exp_lo) / 4.0
                                  : (problem.log_d_hi - problem.log_d_lo) / 4.0;
  double fx = problem.sse(x);
  if (fx == kInfeasible) return fx;

  auto tol = [&](int i) { return 1e-6 * std::max(1.0, std::abs(x[i])); };
  int evals = 0;
  const int max_evals = 20000;
  while (evals < max_evals) {
    bool any_above_tol = false;
    for (int i = 0; i < d; ++i)
      if (step[i] > tol(i)) any_above_tol = true;
    if (!any_above_tol) break;

    bool improved = false;
    for (int i = 0; i < d; ++i) {
      for (double sign : {+1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] += sign * step[i];
        if (i < problem.n_exp()) y[i] = std::clamp(y[i], problem.exp_lo, problem.exp_hi);
        const double fy = problem.sse(y);
        ++evals;
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
    if (!improved)
      for (double& s : step) s *= 0.5;
  }
  return fx;
}

double fract(double v) { return v - std::floor(v); }

std::vector<std::vector<double>> start_points(const Problem& problem, int multistart) {
  std::vector<std::vector<double>> starts;
  const double log_lo = std::log(problem.exp_lo);
  const double log_hi = std::log(problem.exp_hi);
  for (int j = 0; j < multistart; ++j) {
    std::vector<double> x(problem.dims());
    for (int k = 0; k < problem.n_exp(); ++k) {
      const double u = fract((j + 0.5) / multistart + 0.381966 * k);
      x[k] = std::exp(log_lo + (log_hi - log_lo) * u);
    }
    for (int i = 0; i < problem.n_bp(); ++i) {
      const double jitter = fract(0.618034 * j) - 0.5;
      const double q = (i + 1.0 + 0.5 * jitter) / (problem.n_bp() + 1.0);
      x[problem.n_exp() + i] =
          problem.log_d_lo + (problem.log_d_hi - problem.log_d_lo) * std::clamp(q, 0.05, 0.95);
    }
    starts.push_back(std::move(x));
  }
  // Equal-exponent starts: a multi-slope model with all slopes equal
  // reduces to the single-slope law, so nested fits never regress.
  if (problem.n_exp() > 1) {
    for (double a : {1.0, 2.0, 3.5, 6.0}) {
      if (a < problem.exp_lo || a > problem.exp_hi) continue;
      std::vector<double> x(problem.dims(), a);
      for (int i = 0; i < problem.n_bp(); ++i) {
        const double q = (i + 1.0) / (problem.n_bp() + 1.0);
        x[problem.n_exp() + i] = problem.log_d_lo + (problem.log_d_hi - problem.log_d_lo) * q;
      }
      starts.push_back(std::move(x));
    }
  }
  return starts;
}

}  // namespace

FitResult fit_pathloss(std::span<const Measurement> measurements, const FitSpec& spec) {
  if (measurements.empty())
    throw insufficient_data_error("fit_pathloss: no measurements");
  if (spec.slopes < 1) throw std::invalid_argument("fit_pathloss: slopes must be >= 1");
  if (spec.multistart < 1) throw std::invalid_argument("fit_pathloss: multistart must be >= 1");
  if (!(spec.exponent_bounds.first > 0.0) ||
      !(spec.exponent_bounds.second > spec.exponent_bounds.first) ||
      spec.exponent_bounds.second > 10.0)
    throw std::invalid_argument("fit_pathloss: exponent bounds must satisfy 0 < lo < hi <= 10");

  double d_min = std::numeric_limits<double>::infinity();
  double d_max = 0.0;
  for (const Measurement& m : measurements) {
    if (!(m.distance_m > 0.0))
      throw std::invalid_argument("fit_pathloss: distances must be > 0");
    if (!std::isfinite(m.rx_power_dbm))
      throw std::invalid_argument("fit_pathloss: powers must be finite");
    d_min = std::min(d_min, m.distance_m);
    d_max = std::max(d_max, m.distance_m);
  }
  if (measurements.size() >= 2 && d_min == d_max)
    throw degenerate_design_error("fit_pathloss: all measurements at one distance");
  if (spec.fixed_breakpoints_m &&
      static_cast<int>(spec.fixed_breakpoints_m->size()) != spec.slopes - 1)
    throw std::invalid_argument("fit_pathloss: fixed breakpoints must number slopes - 1");

  Problem problem{spec.family,
                  spec.slopes,
                  spec.fixed_breakpoints_m,
                  spec.exponent_bounds.first,
                  spec.exponent_bounds.second,
                  spec.tx_power_dbm,
                  std::log10(d_min),
                  std::log10(d_max == d_min ? d_min * 10.0 : d_max),
                  measurements};

  FitResult result;
  const int free_params = problem.dims();
  if (static_cast<int>(measurements.size()) < 2 * free_params)
    result.warnings.push_back("underdetermined: fewer than 2 measurements per free parameter");
  if (d_max / d_min < 10.0)
    result.warnings.push_back("distance span below one decade; exponents weakly identified");

  double best_sse = kInfeasible;
  std::vector<double> best_x;
  for (auto& x : start_points(problem, spec.multistart)) {
    const double sse = pattern_search(problem, x);
    if (sse < best_sse) {
      best_sse = sse;
      best_x = x;
    }
  }
  if (best_x.empty())
    throw std::runtime_error("fit_pathloss: no feasible start point");

  result.model = *problem.build(best_x);
  result.residuals_db.reserve(measurements.size());
  double sse = 0.0;
  for (const Measurement& m : measurements) {
    const double r = m.rx_power_dbm - (spec.tx_power_dbm + result.model.gain_db(m.distance_m));
    result.residuals_db.push_back(r);
    sse += r * r;
  }
  result.rmse_db = std::sqrt(sse / static_cast<double>(measurements.size()));
  return result;
}

std::vector<Measurement> synth_measurements(const PathlossModel& model,
                                            std::span<const double> distances_m,
                                            double tx_power_dbm, double noise_sigma_db,
                                            RandomStream& stream) {
  if (!(noise_sigma_db >= 0.0))
    throw std::invalid_argument("synth_measurements: sigma must be >= 0");
  std::vector<Measurement> out;
  out.reserve(distances_m.size());
  for (double d : distances_m) {
    if (!(d > 0.0)) throw std::invalid_argument("synth_measurements: distances must be > 0");
    const double noise = noise_sigma_db > 0.0 ? noise_sigma_db * stream.normal() : 0.0;
    out.push_back({d, tx_power_dbm + model.gain_db(d) + noise, std::nullopt});
  }
  return out;
}

std::vector<FitResult> compare_families(std::span<const Measurement> measurements,
                                        std::span<const FitSpec> specs) {
  if (specs.empty()) throw std::invalid_argument("compare_families: empty spec list");
  std::vector<FitResult> results;
  results.reserve(specs.size());
  for (const FitSpec& spec : specs) results.push_back(fit_pathloss(measurements, spec));
  std::stable_sort(results.begin(), results.end(),
                   [](const FitResult& a, const FitResult& b) { return a.rmse_db < b.rmse_db; });
  return results;
}

std::vector<Measurement> read_measurements_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("measurement CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool with_freq = line == "distance_m,rx_power_dbm,frequency_hz";
  if (!with_freq && line != "distance_m,rx_power_dbm")
    throw std::invalid_argument(
        "measurement CSV: header must be distance_m,rx_power_dbm[,frequency_hz]");

  std::vector<Measurement> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    Measurement m;
    try {
      if (!std::getline(fields, cell, ',')) throw std::invalid_argument("missing distance");
      m.distance_m = std::stod(cell);
      if (!std::getline(fields, cell, ',')) throw std::invalid_argument("missing power");
      m.rx_power_dbm = std::stod(cell);
      if (with_freq && std::getline(fields, cell, ',')) m.frequency_hz = std::stod(cell);
    } catch (const std::exception&) {
      throw std::invalid_argument("measurement CSV: bad row at line " + std::to_string(line_no));
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace udn
