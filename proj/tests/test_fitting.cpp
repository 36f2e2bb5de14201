#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "udn/errors.hpp"
#include "udn/fitting.hpp"

using namespace udn;

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i)
    d[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return d;
}

}  // namespace

TEST_CASE("noiseless single-slope round trip") {
  RandomStream rng(1, "test.fit", 0);
  const auto truth = PathlossModel::single_slope(PathlossFamily::BoundedMultiSlope, 2.0);
  const auto data = synth_measurements(truth, log_spaced(0.1, 100.0, 25), 0.0, 0.0, rng);

  FitSpec spec;
  spec.family = PathlossFamily::BoundedMultiSlope;
  spec.slopes = 1;
  const FitResult fit = fit_pathloss(data, spec);
  CHECK(std::abs(fit.model.exponents()[0] - 2.0) < 1e-4);
  CHECK(fit.rmse_db < 1e-4);
}

TEST_CASE("noiseless dual-slope round trip recovers all free parameters") {
  RandomStream rng(2, "test.fit", 1);
  const auto truth = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {3.3}, {1.5, 3.5});
  const auto data = synth_measurements(truth, log_spaced(0.1, 30.0, 40), 0.0, 0.0, rng);

  FitSpec spec;
  spec.family = PathlossFamily::BoundedMultiSlope;
  spec.slopes = 2;
  const FitResult fit = fit_pathloss(data, spec);
  CHECK(std::abs(fit.model.exponents()[0] - 1.5) < 1e-3 * 1.5);
  CHECK(std::abs(fit.model.exponents()[1] - 3.5) < 1e-3 * 3.5);
  CHECK(std::abs(fit.model.breakpoints_m()[0] - 3.3) < 1e-3 * 3.3);
}

TEST_CASE("bounded law fits near-field-shaped data better than unbounded") {
  RandomStream rng(3, "test.fit", 2);
  const auto truth = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {3.3}, {1.5, 3.5});
  const auto data = synth_measurements(truth, log_spaced(0.1, 30.0, 40), 0.0, 0.0, rng);

  FitSpec upm;
  upm.family = PathlossFamily::UnboundedMultiSlope;
  upm.slopes = 1;
  FitSpec bpm = upm;
  bpm.family = PathlossFamily::BoundedMultiSlope;
  const FitResult fit_upm = fit_pathloss(data, upm);
  const FitResult fit_bpm = fit_pathloss(data, bpm);
  CHECK(fit_upm.rmse_db > fit_bpm.rmse_db);

  const auto ranked = compare_families(data, std::vector<FitSpec>{upm, bpm});
  CHECK(ranked[0].rmse_db <= ranked[1].rmse_db);
  CHECK(ranked[0].model.bounded());
}

TEST_CASE("single measurement interpolates exactly with a warning") {
  const std::vector<Measurement> one{{10.0, -20.04, std::nullopt}};
  FitSpec spec;
  spec.slopes = 1;
  const FitResult fit = fit_pathloss(one, spec);
  CHECK(fit.rmse_db < 1e-5);
  CHECK_FALSE(fit.warnings.empty());
}

TEST_CASE("noise level is reflected in the residual rms") {
  RandomStream rng(5, "test.fit", 3);
  const auto truth = PathlossModel::single_slope(PathlossFamily::BoundedMultiSlope, 3.0);
  const auto data = synth_measurements(truth, log_spaced(0.5, 200.0, 200), 0.0, 1.0, rng);
  FitSpec spec;
  spec.slopes = 1;
  const FitResult fit = fit_pathloss(data, spec);
  CHECK(fit.rmse_db > 0.8);
  CHECK(fit.rmse_db < 1.2);
}

TEST_CASE("synthetic generator determinism and exactness") {
  const auto model = PathlossModel::single_slope(PathlossFamily::BoundedMultiSlope, 2.5);
  const auto distances = log_spaced(1.0, 50.0, 10);
  RandomStream a(7, "test.fit", 4), b(7, "test.fit", 4);
  const auto ma = synth_measurements(model, distances, 10.0, 0.5, a);
  const auto mb = synth_measurements(model, distances, 10.0, 0.5, b);
  for (std::size_t i = 0; i < ma.size(); ++i)
    CHECK(ma[i].rx_power_dbm == mb[i].rx_power_dbm);

  RandomStream c(9, "test.fit", 5);
  for (const Measurement& m : synth_measurements(model, distances, 10.0, 0.0, c))
    CHECK(m.rx_power_dbm == doctest::Approx(10.0 + model.gain_db(m.distance_m)));
}

TEST_CASE("adding a slope never hurts the optimum") {
  RandomStream rng(11, "test.fit", 6);
  const auto truth = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {5.0}, {2.0, 4.0});
  const auto data = synth_measurements(truth, log_spaced(0.2, 100.0, 30), 0.0, 0.5, rng);
  FitSpec one;
  one.slopes = 1;
  FitSpec two;
  two.slopes = 2;
  const double rmse1 = fit_pathloss(data, one).rmse_db;
  const double rmse2 = fit_pathloss(data, two).rmse_db;
  CHECK(rmse2 <= rmse1 * 1.01);
}

TEST_CASE("rmse does not depend on measurement order") {
  RandomStream rng(13, "test.fit", 7);
  const auto truth = PathlossModel::single_slope(PathlossFamily::BoundedMultiSlope, 3.0);
  auto data = synth_measurements(truth, log_spaced(0.5, 80.0, 20), 0.0, 1.0, rng);
  FitSpec spec;
  spec.slopes = 1;
  const double forward = fit_pathloss(data, spec).rmse_db;
  std::reverse(data.begin(), data.end());
  const double backward = fit_pathloss(data, spec).rmse_db;
  CHECK(forward == doctest::Approx(backward).epsilon(1e-9));
}

TEST_CASE("fixed breakpoints are honored") {
  RandomStream rng(15, "test.fit", 8);
  const auto truth = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {4.0}, {1.8, 3.6});
  const auto data = synth_measurements(truth, log_spaced(0.2, 60.0, 30), 0.0, 0.0, rng);
  FitSpec spec;
  spec.slopes = 2;
  spec.fixed_breakpoints_m = std::vector<double>{4.0};
  const FitResult fit = fit_pathloss(data, spec);
  CHECK(fit.model.breakpoints_m()[0] == 4.0);
  CHECK(std::abs(fit.model.exponents()[0] - 1.8) < 1e-3);
  CHECK(std::abs(fit.model.exponents()[1] - 3.6) < 1e-3);
}

TEST_CASE("input validation") {
  FitSpec spec;
  CHECK_THROWS_AS(fit_pathloss({}, spec), insufficient_data_error);

  const std::vector<Measurement> same{{5.0, -10.0, std::nullopt}, {5.0, -11.0, std::nullopt}};
  CHECK_THROWS_AS(fit_pathloss(same, spec), degenerate_design_error);

  const std::vector<Measurement> ok{{1.0, -1.0, std::nullopt}, {20.0, -30.0, std::nullopt}};
  CHECK_THROWS_AS(compare_families(ok, {}), std::invalid_argument);
}

TEST_CASE("measurement csv round trip") {
  std::istringstream in(
      "distance_m,rx_power_dbm,frequency_hz\n"
      "0.5,-3.25,2.0e9\n"
      "10,-40.5,2.0e9\n");
  const auto rows = read_measurements_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].distance_m == 0.5);
  CHECK(rows[0].rx_power_dbm == -3.25);
  CHECK(rows[0].frequency_hz.value() == 2.0e9);

  std::istringstream no_freq("distance_m,rx_power_dbm\n1,-2\n");
  CHECK(read_measurements_csv(no_freq).size() == 1);

  std::istringstream bad_header("meters,dbm\n1,-2\n");
  CHECK_THROWS_AS(read_measurements_csv(bad_header), std::invalid_argument);

  std::istringstream bad_row("distance_m,rx_power_dbm\n1,abc\n");
  CHECK_THROWS_AS(read_measurements_csv(bad_row), std::invalid_argument);
}
