// udnsim: experiment runner for the network densification toolkit.
//
// Subcommands map one-to-one onto reproducible experiments: propagation
// region boundaries, analytic link-distance tables, spatial-throughput
// curves, critical-density searches, interference rasters, interference
// mitigation comparisons and pathloss fits. Every output embeds its
// resolved configuration and seed, and reruns are byte-identical at any
// thread count.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "udn/critical_density.hpp"
#include "udn/errors.hpp"
#include "udn/fitting.hpp"
#include "udn/format.hpp"
#include "udn/geometry.hpp"
#include "udn/interference_field.hpp"
#include "udn/linklevel.hpp"
#include "udn/mitigation.hpp"
#include "udn/propagation.hpp"
#include "udn/units.hpp"
#include "udn/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config plumbing: defaults < config-file section < explicit flags.

struct Global {
  std::string config_path;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";
  json config = json::object();
};

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j = json::parse(in);
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  return j;
}

class Section {
 public:
  Section(const json& config, const std::string& name)
      : section_(config.contains(name) ? &config.at(name) : nullptr) {}

  template <typename T>
  void apply(const CLI::Option* opt, const char* key, T& value) const {
    if (opt != nullptr && opt->count() > 0) return;  // flag overrides file
    if (section_ != nullptr && section_->contains(key)) value = section_->at(key).get<T>();
  }
  bool has(const char* key) const { return section_ != nullptr && section_->contains(key); }
  const json& at(const char* key) const { return section_->at(key); }

 private:
  const json* section_;
};

// ---------------------------------------------------------------------------
// JSON <-> domain types.

udn::PathlossModel model_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family != "bpm" && family != "upm")
    throw std::invalid_argument("model family must be \"bpm\" or \"upm\"");
  std::vector<double> breakpoints;
  if (j.contains("breakpoints_m")) breakpoints = j.at("breakpoints_m").get<std::vector<double>>();
  return udn::PathlossModel::make(family == "bpm" ? udn::PathlossFamily::BoundedMultiSlope
                                                  : udn::PathlossFamily::UnboundedMultiSlope,
                                  std::move(breakpoints),
                                  j.at("exponents").get<std::vector<double>>());
}

json model_to_json(const udn::PathlossModel& m) {
  return json{{"family", m.bounded() ? "bpm" : "upm"},
              {"breakpoints_m", m.breakpoints_m()},
              {"exponents", m.exponents()}};
}

udn::Strategy strategy_from_name(const std::string& name, int budget,
                                 std::optional<double> tau_dec) {
  if (name == "none") return udn::Strategy::none();
  if (name == "sic") return udn::Strategy::sic(tau_dec);
  if (name == "ia") return udn::Strategy::ia(budget);
  if (name == "ica") return udn::Strategy::ica(budget, tau_dec);
  throw std::invalid_argument("unknown strategy: " + name);
}

// ---------------------------------------------------------------------------
// Output plumbing. No timestamps: reruns must be byte-identical.

std::ofstream open_output(const Global& g, const std::string& name, bool binary = false) {
  fs::create_directories(g.out_dir);
  const fs::path path = fs::path(g.out_dir) / name;
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

void write_metadata(std::ostream& out, const std::string& command, const json& resolved,
                    std::uint64_t seed) {
  out << "# udnsim " << udn::kVersion << '\n';
  out << "# command: " << command << '\n';
  out << "# config: " << resolved.dump() << '\n';
  out << "# seed: " << seed << '\n';
}

std::vector<std::string> metadata_lines(const std::string& command, const json& resolved,
                                        std::uint64_t seed) {
  return {std::string("udnsim ") + udn::kVersion, "command: " + command,
          "config: " + resolved.dump(), "seed: " + std::to_string(seed)};
}

json run_metadata(const std::string& command, const json& resolved, std::uint64_t seed) {
  return json{{"tool", std::string("udnsim ") + udn::kVersion},
              {"command", command},
              {"config", resolved},
              {"seed", seed}};
}

void note_written(const fs::path& p) { std::cout << "wrote " << p.string() << '\n'; }

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

// ---------------------------------------------------------------------------
// regions

int cmd_regions(const Global& g, double frequency_hz, double antenna_m, double tx_h, double rx_h,
                std::optional<double> reference_fraunhofer_m) {
  const udn::FieldRegions r = udn::field_regions(frequency_hz, antenna_m, tx_h, rx_h);
  std::cout << "wavelength_m: " << udn::format_g9(r.wavelength_m) << '\n'
            << "reactive_boundary_m: " << udn::format_g9(r.reactive_boundary_m) << '\n'
            << "fraunhofer_m: " << udn::format_g9(r.fraunhofer_m) << '\n'
            << "critical_m: " << udn::format_g9(r.critical_m) << '\n';
  if (!(r.reactive_boundary_m < r.fraunhofer_m && r.fraunhofer_m < r.critical_m))
    std::cout << "note: boundaries out of order (need R_B < R_F < R_C); "
                 "region classification undefined for this configuration\n";
  if (reference_fraunhofer_m) {
    const double delta = r.fraunhofer_m - *reference_fraunhofer_m;
    if (std::abs(delta) > 0.01 * *reference_fraunhofer_m)
      std::cout << "note: fraunhofer mismatch: computed " << udn::format_g9(r.fraunhofer_m)
                << " m vs reference " << udn::format_g9(*reference_fraunhofer_m)
                << " m (delta " << udn::format_g9(delta) << " m)\n";
  }
  (void)g;
  return 0;
}

// ---------------------------------------------------------------------------
// table1

int cmd_table1(const Global& g, const std::vector<double>& densities,
               const std::vector<double>& thresholds, const std::string& file_name) {
  const auto rows = udn::link_stats_table(densities, thresholds);

  const json resolved{{"densities_per_km2", densities}, {"thresholds_m", thresholds}};
  auto out = open_output(g, file_name);
  write_metadata(out, "table1", resolved, g.seed);
  for (double mu : densities) {
    for (double thr : thresholds) {
      if (mu == 10000.0 && thr == 1.0)
        out << "# erratum: cell (10000 /km^2, 1 m) computes to "
            << udn::format_g9(100.0 * udn::nearest_distance_cdf(10000.0 * udn::kPerKm2ToPerM2, 1.0))
            << "%; a published reference lists 17.8%, which is inconsistent with the "
               "nearest-distance CDF\n";
    }
  }
  out << "density_per_km2,mean_link_m";
  for (double thr : thresholds) out << ",p_d_lt_" << udn::format_g9(thr) << "m";
  out << '\n';
  for (const auto& row : rows) {
    out << udn::format_g9(row.density_per_km2) << ',' << udn::format_g9(row.mean_link_m);
    for (double p : row.probabilities) out << ',' << udn::format_g9(p);
    out << '\n';
  }
  note_written(fs::path(g.out_dir) / file_name);
  return 0;
}

// ---------------------------------------------------------------------------
// throughput

struct NamedModel {
  std::string name;
  udn::PathlossModel model;
};

int cmd_throughput(const Global& g, const std::vector<NamedModel>& models,
                   const std::vector<double>& densities, double tau_db, std::uint64_t trials,
                   bool no_fading) {
  for (const NamedModel& nm : models) {
    udn::SimConfig config;
    config.model = nm.model;
    config.sinr_threshold_db = tau_db;
    config.trials = trials;
    config.seed = g.seed;
    config.fading = no_fading ? udn::Fading::None : udn::Fading::RayleighUnitMean;
    const auto curve = udn::throughput_curve(config, densities, g.threads);

    const json resolved{{"model", model_to_json(nm.model)},
                        {"densities_per_km2", densities},
                        {"tau_db", tau_db},
                        {"trials", trials},
                        {"fading", no_fading ? "none" : "rayleigh"}};
    const std::string file_name = "throughput_" + nm.name + ".csv";
    auto out = open_output(g, file_name);
    write_metadata(out, "throughput", resolved, g.seed);
    out << "density_per_km2,coverage,std_err,spatial_throughput_bits_per_s_hz_m2\n";
    for (const auto& p : curve)
      out << udn::format_g9(p.density_per_km2) << ',' << udn::format_g9(p.coverage.p_hat) << ','
          << udn::format_g9(p.coverage.std_err) << ',' << udn::format_g9(p.st) << '\n';
    note_written(fs::path(g.out_dir) / file_name);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// critical

int cmd_critical(const Global& g, const std::vector<double>& taus,
                 const std::vector<double>& alpha1s, double alpha0, double breakpoint_m,
                 std::uint64_t trials, double mu_min, double mu_max,
                 const std::string& file_name) {
  udn::SimConfig base;
  base.model = udn::PathlossModel::make(udn::PathlossFamily::BoundedMultiSlope, {breakpoint_m},
                                        {alpha0, alpha0 + 1.0});
  base.trials = trials;
  base.seed = g.seed;
  udn::SearchOptions options;
  options.threads = g.threads;
  const auto cells = udn::critical_density_table(taus, alpha1s, base, mu_min, mu_max, options);

  const json resolved{{"tau_db", taus},          {"alpha1", alpha1s},
                      {"alpha0", alpha0},        {"breakpoint_m", breakpoint_m},
                      {"trials", trials},        {"mu_min_per_km2", mu_min},
                      {"mu_max_per_km2", mu_max}};
  auto out = open_output(g, file_name);
  write_metadata(out, "critical", resolved, g.seed);
  out << "# breakpoint_m: " << udn::format_g9(breakpoint_m) << '\n';
  out << "# trials: " << trials << '\n';
  out << "# bracket_rel_tol: " << udn::format_g9(options.bracket_rel_tol) << '\n';
  for (const auto& cell : cells)
    if (!cell.note.empty())
      out << "# note: tau_db=" << udn::format_g9(cell.tau_db)
          << " alpha1=" << udn::format_g9(cell.alpha1) << ": " << cell.note << '\n';
  out << "tau_db";
  for (double a1 : alpha1s) out << ",mu_star_per_km2_alpha1_" << udn::format_g9(a1);
  out << '\n';
  std::size_t k = 0;
  for (double tau : taus) {
    out << udn::format_g9(tau);
    for (std::size_t j = 0; j < alpha1s.size(); ++j, ++k)
      out << ',' << (cells[k].failed ? "nan" : udn::format_g9(cells[k].mu_star_per_km2));
    out << '\n';
  }
  note_written(fs::path(g.out_dir) / file_name);
  return 0;
}

// ---------------------------------------------------------------------------
// heatmap

int cmd_heatmap(const Global& g, const udn::PathlossModel& model, double density,
                double side_m, int resolution, double tx_power_dbm, bool fading) {
  udn::HeatmapConfig config;
  config.model = model;
  config.tx_density_per_km2 = density;
  config.side_m = side_m;
  config.resolution = resolution;
  config.tx_power_dbm = tx_power_dbm;
  config.fading = fading ? udn::Fading::RayleighUnitMean : udn::Fading::None;
  config.seed = g.seed;

  const udn::Raster raster = udn::interference_field(config, g.threads);
  const udn::FieldStats stats = udn::field_stats(raster);

  const json resolved{{"model", model_to_json(model)},
                      {"tx_density_per_km2", density},
                      {"side_m", side_m},
                      {"resolution", resolution},
                      {"tx_power_dbm", tx_power_dbm},
                      {"fading", fading ? "rayleigh" : "none"}};

  auto lines = metadata_lines("heatmap", resolved, g.seed);
  lines.push_back("tx_count: " + std::to_string(raster.tx_positions.size()));
  lines.push_back("scale_min_dbm: " + udn::format_g9(stats.min));
  lines.push_back("scale_max_dbm: " + udn::format_g9(stats.max));
  lines.push_back("p1_dbm: " + udn::format_g9(stats.p1) + " p50_dbm: " + udn::format_g9(stats.p50) +
                  " p99_dbm: " + udn::format_g9(stats.p99));
  lines.push_back("dynamic_range_db: " + udn::format_g9(stats.dynamic_range_db));

  {
    auto out = open_output(g, "heatmap.csv");
    for (const auto& l : lines) out << "# " << l << '\n';
    udn::write_raster_csv(raster, out);
    note_written(fs::path(g.out_dir) / "heatmap.csv");
  }
  {
    auto out = open_output(g, "heatmap.pgm", /*binary=*/true);
    udn::write_raster_pgm16(raster, out, lines);
    note_written(fs::path(g.out_dir) / "heatmap.pgm");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// mitigation

json outcome_to_json(const udn::SignalProfile& profile, const udn::DecodingOutcome& out) {
  json steps = json::array();
  for (const auto& s : out.steps) {
    const char* action = s.action == udn::DecodeAction::Sic ? "sic"
                         : s.action == udn::DecodeAction::Ia ? "ia"
                                                             : "stop";
    steps.push_back(json{{"interferer", s.interferer},
                         {"power", profile.interferers[s.interferer]},
                         {"action", action}});
  }
  const bool free_of_interference = std::isinf(out.residual_sinr);
  json j{{"steps", steps},
         {"cancelled", out.cancelled},
         {"ia_assigned", out.ia_assigned},
         {"interference_free", free_of_interference}};
  if (free_of_interference) {
    j["residual_sinr"] = nullptr;
    j["residual_sinr_db"] = nullptr;
  } else {
    j["residual_sinr"] = out.residual_sinr;
    j["residual_sinr_db"] = udn::linear_to_db(out.residual_sinr);
  }
  return j;
}

int cmd_mitigation_example(const Global& g, double desired, const std::vector<double>& interferers,
                           double tau_dec, int budget, const std::string& file_name) {
  const udn::SignalProfile profile{desired, interferers};
  const json resolved{{"desired", desired},
                      {"interferers", interferers},
                      {"decode_threshold", tau_dec},
                      {"budget", budget}};
  json j{{"metadata", run_metadata("mitigation --example", resolved, g.seed)},
         {"profile", json{{"desired", desired}, {"interferers", interferers}}},
         {"sic", outcome_to_json(profile, udn::sic_decode(profile, tau_dec))},
         {"ia", outcome_to_json(profile, udn::ia_decode(profile, budget))},
         {"ica", outcome_to_json(profile, udn::ica_decode(profile, tau_dec, budget))}};
  auto out = open_output(g, file_name);
  out << j.dump(2) << '\n';
  note_written(fs::path(g.out_dir) / file_name);
  return 0;
}

int cmd_mitigation_curves(const Global& g, const std::vector<std::string>& strategies,
                          const std::vector<double>& densities, double tau_db, int budget,
                          std::optional<double> decode_threshold_db, std::uint64_t trials,
                          const std::string& file_name) {
  udn::SimConfig config;
  config.model = udn::PathlossModel::make(udn::PathlossFamily::BoundedMultiSlope, {1.0}, {2.0, 4.0});
  config.sinr_threshold_db = tau_db;
  config.trials = trials;
  config.seed = g.seed;

  std::optional<double> tau_dec;
  if (decode_threshold_db) tau_dec = udn::db_to_linear(*decode_threshold_db);

  json resolved{{"strategies", strategies}, {"densities_per_km2", densities},
                {"tau_db", tau_db},         {"budget", budget},
                {"trials", trials},         {"model", model_to_json(config.model)}};
  if (decode_threshold_db) resolved["decode_threshold_db"] = *decode_threshold_db;

  auto out = open_output(g, file_name);
  write_metadata(out, "mitigation", resolved, g.seed);
  out << "density_per_km2,strategy,coverage,std_err,spatial_throughput_bits_per_s_hz_m2\n";
  for (const std::string& name : strategies) {
    const udn::Strategy strategy = strategy_from_name(name, budget, tau_dec);
    const auto curve = udn::strategy_throughput_curve(config, strategy, densities, g.threads);
    for (const auto& p : curve)
      out << udn::format_g9(p.density_per_km2) << ',' << name << ','
          << udn::format_g9(p.coverage.p_hat) << ',' << udn::format_g9(p.coverage.std_err) << ','
          << udn::format_g9(p.st) << '\n';
  }
  note_written(fs::path(g.out_dir) / file_name);
  return 0;
}

// ---------------------------------------------------------------------------
// fit

int cmd_fit(const Global& g, const std::string& input, const std::string& family, int slopes,
            const std::vector<double>& fixed_breakpoints, double tx_power_dbm, int multistart,
            double exp_lo, double exp_hi, const std::string& file_name) {
  std::ifstream in(input);
  if (!in) throw std::invalid_argument("cannot open measurement CSV: " + input);
  const auto measurements = udn::read_measurements_csv(in);

  udn::FitSpec spec;
  if (family != "bpm" && family != "upm")
    throw std::invalid_argument("family must be \"bpm\" or \"upm\"");
  spec.family = family == "bpm" ? udn::PathlossFamily::BoundedMultiSlope
                                : udn::PathlossFamily::UnboundedMultiSlope;
  spec.slopes = slopes;
  if (!fixed_breakpoints.empty()) spec.fixed_breakpoints_m = fixed_breakpoints;
  spec.tx_power_dbm = tx_power_dbm;
  spec.multistart = multistart;
  spec.exponent_bounds = {exp_lo, exp_hi};

  const udn::FitResult fit = udn::fit_pathloss(measurements, spec);

  json resolved{{"input", input},
                {"family", family},
                {"slopes", slopes},
                {"tx_power_dbm", tx_power_dbm},
                {"multistart", multistart},
                {"exponent_bounds", json::array({exp_lo, exp_hi})}};
  if (!fixed_breakpoints.empty()) resolved["fixed_breakpoints_m"] = fixed_breakpoints;

  json j{{"metadata", run_metadata("fit", resolved, g.seed)},
         {"model", model_to_json(fit.model)},
         {"continuity_factors", fit.model.continuity_factors()},
         {"rmse_db", fit.rmse_db},
         {"residuals_db", fit.residuals_db},
         {"warnings", fit.warnings},
         {"n_measurements", measurements.size()}};
  auto out = open_output(g, file_name);
  out << j.dump(2) << '\n';
  note_written(fs::path(g.out_dir) / file_name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network densification simulator and numerical toolkit"};
  app.require_subcommand(1);

  Global g;
  auto* config_opt = app.add_option("--config", g.config_path, "JSON config file; flags override it");
  auto* seed_opt = app.add_option("--seed", g.seed, "master seed (64-bit)");
  auto* threads_opt = app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  auto* out_opt = app.add_option("--out", g.out_dir, "output directory");
  (void)config_opt;

  int exit_code = 0;
  const auto run = [&](auto&& fn) {
    try {
      g.config = load_config_file(g.config_path);
      const Section global_sec(g.config, "global");
      global_sec.apply(seed_opt, "seed", g.seed);
      global_sec.apply(threads_opt, "threads", g.threads);
      global_sec.apply(out_opt, "out", g.out_dir);
      exit_code = fn();
    } catch (const json::exception& e) {
      std::cerr << "udnsim: invalid config: " << e.what() << '\n';
      exit_code = 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "udnsim: invalid config: " << e.what() << '\n';
      exit_code = 2;
    } catch (const std::exception& e) {
      std::cerr << "udnsim: numeric error: " << e.what() << '\n';
      exit_code = 3;
    }
  };

  // regions ------------------------------------------------------------
  auto* regions = app.add_subcommand("regions", "print propagation region boundaries");
  double frequency_hz = 0.0, antenna_m = 0.0, tx_h = 10.0, rx_h = 1.5;
  double reference_rf = 0.0;
  auto* freq_opt = regions->add_option("--frequency-hz", frequency_hz, "carrier frequency (Hz)");
  auto* ant_opt = regions->add_option("--antenna-dimension-m", antenna_m, "largest antenna dimension (m)");
  auto* txh_opt = regions->add_option("--tx-height-m", tx_h, "transmitter height (m)");
  auto* rxh_opt = regions->add_option("--rx-height-m", rx_h, "receiver height (m)");
  auto* ref_opt = regions->add_option("--reference-fraunhofer-m", reference_rf,
                                      "reference Fraunhofer distance to compare against (m)");
  regions->callback([&] {
    run([&] {
      const Section sec(g.config, "regions");
      sec.apply(freq_opt, "frequency_hz", frequency_hz);
      sec.apply(ant_opt, "antenna_dimension_m", antenna_m);
      sec.apply(txh_opt, "tx_height_m", tx_h);
      sec.apply(rxh_opt, "rx_height_m", rx_h);
      std::optional<double> ref;
      if (ref_opt->count() > 0 || sec.has("reference_fraunhofer_m")) {
        sec.apply(ref_opt, "reference_fraunhofer_m", reference_rf);
        ref = reference_rf;
      }
      return cmd_regions(g, frequency_hz, antenna_m, tx_h, rx_h, ref);
    });
  });

  // table1 ---------------------------------------------------------------
  auto* table1 = app.add_subcommand("table1", "analytic link-distance statistics CSV");
  std::vector<double> t1_densities{1.0, 25.0, 100.0, 2500.0, 1e4, 2.5e5};
  std::vector<double> t1_thresholds{1.0, 29.45, 13.1, 3.25};
  std::string t1_file = "table1.csv";
  auto* t1_d = table1->add_option("--densities-per-km2", t1_densities)->delimiter(',');
  auto* t1_t = table1->add_option("--thresholds-m", t1_thresholds)->delimiter(',');
  auto* t1_f = table1->add_option("--out-file", t1_file);
  table1->callback([&] {
    run([&] {
      const Section sec(g.config, "table1");
      sec.apply(t1_d, "densities_per_km2", t1_densities);
      sec.apply(t1_t, "thresholds_m", t1_thresholds);
      sec.apply(t1_f, "out_file", t1_file);
      return cmd_table1(g, t1_densities, t1_thresholds, t1_file);
    });
  });

  // throughput -----------------------------------------------------------
  auto* throughput = app.add_subcommand("throughput", "spatial-throughput curve CSVs");
  std::vector<double> tp_densities = log_spaced(1e3, 3e6, 15);
  double tp_tau = 0.0;
  std::uint64_t tp_trials = 10000;
  bool tp_no_fading = false;
  auto* tp_d = throughput->add_option("--densities-per-km2", tp_densities)->delimiter(',');
  auto* tp_tau_opt = throughput->add_option("--tau-db", tp_tau);
  auto* tp_tr = throughput->add_option("--trials", tp_trials);
  throughput->add_flag("--no-fading", tp_no_fading, "disable Rayleigh fading");
  throughput->callback([&] {
    run([&] {
      const Section sec(g.config, "throughput");
      sec.apply(tp_d, "densities_per_km2", tp_densities);
      sec.apply(tp_tau_opt, "tau_db", tp_tau);
      sec.apply(tp_tr, "trials", tp_trials);
      std::vector<NamedModel> models;
      if (sec.has("models")) {
        for (const json& jm : sec.at("models"))
          models.push_back({jm.at("name").get<std::string>(), model_from_json(jm)});
      } else {
        models.push_back({"bpm2", udn::PathlossModel::make(
                                      udn::PathlossFamily::BoundedMultiSlope, {1.0}, {2.0, 4.0})});
        models.push_back({"upm2", udn::PathlossModel::make(
                                      udn::PathlossFamily::UnboundedMultiSlope, {1.0}, {2.0, 4.0})});
      }
      return cmd_throughput(g, models, tp_densities, tp_tau, tp_trials, tp_no_fading);
    });
  });

  // critical ---------------------------------------------------------------
  auto* critical = app.add_subcommand("critical", "critical-density table CSV");
  std::vector<double> cr_taus{0.0, 5.0, 10.0, 15.0, 20.0};
  std::vector<double> cr_alpha1{3.0, 3.5, 4.0};
  double cr_alpha0 = 2.0, cr_bp = 1.0, cr_mu_min = 1e3, cr_mu_max = 1e7;
  std::uint64_t cr_trials = 10000;
  std::string cr_file = "table2.csv";
  auto* cr_t = critical->add_option("--tau-db", cr_taus)->delimiter(',');
  auto* cr_a1 = critical->add_option("--alpha1", cr_alpha1)->delimiter(',');
  auto* cr_a0 = critical->add_option("--alpha0", cr_alpha0);
  auto* cr_b = critical->add_option("--breakpoint-m", cr_bp);
  auto* cr_tr = critical->add_option("--trials", cr_trials);
  auto* cr_lo = critical->add_option("--mu-min-per-km2", cr_mu_min);
  auto* cr_hi = critical->add_option("--mu-max-per-km2", cr_mu_max);
  auto* cr_f = critical->add_option("--out-file", cr_file);
  critical->callback([&] {
    run([&] {
      const Section sec(g.config, "critical");
      sec.apply(cr_t, "tau_db", cr_taus);
      sec.apply(cr_a1, "alpha1", cr_alpha1);
      sec.apply(cr_a0, "alpha0", cr_alpha0);
      sec.apply(cr_b, "breakpoint_m", cr_bp);
      sec.apply(cr_tr, "trials", cr_trials);
      sec.apply(cr_lo, "mu_min_per_km2", cr_mu_min);
      sec.apply(cr_hi, "mu_max_per_km2", cr_mu_max);
      sec.apply(cr_f, "out_file", cr_file);
      return cmd_critical(g, cr_taus, cr_alpha1, cr_alpha0, cr_bp, cr_trials, cr_mu_min,
                          cr_mu_max, cr_file);
    });
  });

  // heatmap ------------------------------------------------------------------
  auto* heatmap = app.add_subcommand("heatmap", "interference raster CSV + PGM");
  double hm_density = 3.6e3, hm_side = 50.0, hm_power = 20.0;
  int hm_res = 500;
  bool hm_fading = false;
  std::string hm_model_json;
  auto* hm_d = heatmap->add_option("--density-per-km2", hm_density);
  auto* hm_s = heatmap->add_option("--side-m", hm_side);
  auto* hm_r = heatmap->add_option("--resolution", hm_res);
  auto* hm_p = heatmap->add_option("--tx-power-dbm", hm_power);
  heatmap->add_flag("--fading", hm_fading, "draw per-pixel Rayleigh fading");
  heatmap->add_option("--model", hm_model_json,
                      "pathloss model as inline JSON {\"family\",\"breakpoints_m\",\"exponents\"}");
  heatmap->callback([&] {
    run([&] {
      const Section sec(g.config, "heatmap");
      sec.apply(hm_d, "tx_density_per_km2", hm_density);
      sec.apply(hm_s, "side_m", hm_side);
      sec.apply(hm_r, "resolution", hm_res);
      sec.apply(hm_p, "tx_power_dbm", hm_power);
      udn::PathlossModel model = udn::PathlossModel::make(
          udn::PathlossFamily::BoundedMultiSlope, {12.5}, {2.0, 4.0});
      if (!hm_model_json.empty())
        model = model_from_json(json::parse(hm_model_json));
      else if (sec.has("model"))
        model = model_from_json(sec.at("model"));
      bool fading = hm_fading;
      if (!hm_fading && sec.has("fading")) fading = sec.at("fading").get<std::string>() == "rayleigh";
      return cmd_heatmap(g, model, hm_density, hm_side, hm_res, hm_power, fading);
    });
  });

  // mitigation --------------------------------------------------------------
  auto* mitigation = app.add_subcommand("mitigation", "strategy curves and decode traces");
  bool mi_example = false;
  std::vector<std::string> mi_strategies{"none", "sic", "ia", "ica"};
  std::vector<double> mi_densities = log_spaced(1e2, 1e6, 9);
  double mi_tau = 0.0, mi_desired = 1.0, mi_tau_dec = 1.0;
  double mi_decode_db = 0.0;
  int mi_budget = 2;
  std::uint64_t mi_trials = 10000;
  std::vector<double> mi_interferers{20.0, 6.0, 4.0, 1.5, 1.2};
  std::string mi_curve_file = "mitigation_curves.csv";
  std::string mi_trace_file = "mitigation_trace.json";
  mitigation->add_flag("--example", mi_example, "emit the worked decode trace as JSON");
  auto* mi_st = mitigation->add_option("--strategies", mi_strategies)->delimiter(',');
  auto* mi_d = mitigation->add_option("--densities-per-km2", mi_densities)->delimiter(',');
  auto* mi_t = mitigation->add_option("--tau-db", mi_tau);
  auto* mi_b = mitigation->add_option("--budget", mi_budget, "alignment budget (antennas)");
  auto* mi_dec = mitigation->add_option("--decode-threshold-db", mi_decode_db,
                                        "SIC decode threshold; default is tau");
  auto* mi_tr = mitigation->add_option("--trials", mi_trials);
  auto* mi_des = mitigation->add_option("--desired", mi_desired, "worked-example desired power");
  auto* mi_int = mitigation->add_option("--interferers", mi_interferers)->delimiter(',');
  auto* mi_tdl = mitigation->add_option("--decode-threshold", mi_tau_dec,
                                        "worked-example decode threshold (linear)");
  mitigation->callback([&] {
    run([&] {
      const Section sec(g.config, "mitigation");
      if (mi_example) {
        sec.apply(mi_des, "desired", mi_desired);
        sec.apply(mi_int, "interferers", mi_interferers);
        sec.apply(mi_tdl, "decode_threshold", mi_tau_dec);
        sec.apply(mi_b, "budget", mi_budget);
        return cmd_mitigation_example(g, mi_desired, mi_interferers, mi_tau_dec, mi_budget,
                                      mi_trace_file);
      }
      sec.apply(mi_st, "strategies", mi_strategies);
      sec.apply(mi_d, "densities_per_km2", mi_densities);
      sec.apply(mi_t, "tau_db", mi_tau);
      sec.apply(mi_b, "budget", mi_budget);
      sec.apply(mi_tr, "trials", mi_trials);
      std::optional<double> decode_db;
      if (mi_dec->count() > 0 || sec.has("decode_threshold_db")) {
        sec.apply(mi_dec, "decode_threshold_db", mi_decode_db);
        decode_db = mi_decode_db;
      }
      return cmd_mitigation_curves(g, mi_strategies, mi_densities, mi_tau, mi_budget, decode_db,
                                   mi_trials, mi_curve_file);
    });
  });

  // fit ---------------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "fit a pathloss model to measurement CSV");
  std::string fit_input, fit_family = "bpm", fit_file = "fit.json";
  int fit_slopes = 1, fit_multistart = 16;
  std::vector<double> fit_fixed_bp;
  double fit_tx = 0.0, fit_exp_lo = 0.5, fit_exp_hi = 8.0;
  auto* fit_in = fit->add_option("--input", fit_input, "measurement CSV path");
  auto* fit_fam = fit->add_option("--family", fit_family, "bpm or upm");
  auto* fit_n = fit->add_option("--slopes", fit_slopes);
  auto* fit_bp = fit->add_option("--fixed-breakpoints-m", fit_fixed_bp)->delimiter(',');
  auto* fit_txp = fit->add_option("--tx-power-dbm", fit_tx);
  auto* fit_ms = fit->add_option("--multistart", fit_multistart);
  auto* fit_lo = fit->add_option("--exponent-lo", fit_exp_lo);
  auto* fit_hi = fit->add_option("--exponent-hi", fit_exp_hi);
  auto* fit_out = fit->add_option("--out-file", fit_file);
  fit->callback([&] {
    run([&] {
      const Section sec(g.config, "fit");
      sec.apply(fit_in, "input", fit_input);
      sec.apply(fit_fam, "family", fit_family);
      sec.apply(fit_n, "slopes", fit_slopes);
      sec.apply(fit_bp, "fixed_breakpoints_m", fit_fixed_bp);
      sec.apply(fit_txp, "tx_power_dbm", fit_tx);
      sec.apply(fit_ms, "multistart", fit_multistart);
      sec.apply(fit_lo, "exponent_lo", fit_exp_lo);
      sec.apply(fit_hi, "exponent_hi", fit_exp_hi);
      sec.apply(fit_out, "out_file", fit_file);
      if (fit_input.empty()) throw std::invalid_argument("fit: --input is required");
      return cmd_fit(g, fit_input, fit_family, fit_slopes, fit_fixed_bp, fit_tx, fit_multistart,
                     fit_exp_lo, fit_exp_hi, fit_file);
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return exit_code;
}
