#include <doctest.h>

#include <cmath>
#include <sstream>

#include "udn/interference_field.hpp"
#include "udn/units.hpp"

using namespace udn;

namespace {

HeatmapConfig sparse_config(PathlossModel model) {
  HeatmapConfig c;
  c.tx_density_per_km2 = 3.6e3;
  c.model = std::move(model);
  c.resolution = 200;
  return c;
}

const PathlossModel kUpmSingle =
    PathlossModel::single_slope(PathlossFamily::UnboundedMultiSlope, 4.0);
const PathlossModel kUpmDual =
    PathlossModel::make(PathlossFamily::UnboundedMultiSlope, {12.5}, {2.0, 4.0});
const PathlossModel kBpmDual =
    PathlossModel::make(PathlossFamily::BoundedMultiSlope, {12.5}, {2.0, 4.0});

}  // namespace

TEST_CASE("single transmitter pixel value composes power and gain") {
  // Geometry chosen so one pixel center sits exactly 12.5 m from the only
  // transmitter: side 52.5 m, 21 pixels of 2.5 m, transmitter at origin.
  HeatmapConfig config;
  config.side_m = 52.5;
  config.resolution = 21;
  config.tx_density_per_km2 = 1e6 / (52.5 * 52.5);
  config.model = kBpmDual;
  const Raster raster = interference_field(config);
  REQUIRE(raster.tx_positions.size() == 1);
  CHECK(raster.tx_positions[0].x == doctest::Approx(0.0));
  CHECK(raster.pixel_x(15) == doctest::Approx(12.5));
  CHECK(raster.pixel_y(10) == doctest::Approx(0.0));
  // 20 dBm - 10 log10(1 + 12.5^2) = -1.96607 dBm.
  CHECK(raster.at(10, 15) == doctest::Approx(20.0 - 10.0 * std::log10(157.25)).epsilon(1e-12));
}

TEST_CASE("pixel on a transmitter under the bounded family sees unit gain") {
  HeatmapConfig config;
  config.side_m = 50.0;
  config.resolution = 5;  // centers at -20,-10,0,10,20
  config.tx_density_per_km2 = 1e6 / 2500.0;  // one transmitter at the center
  config.model = kBpmDual;
  const Raster raster = interference_field(config);
  CHECK(raster.at(2, 2) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("bounded raster respects the transmit-power bound") {
  HeatmapConfig config;
  config.tx_density_per_km2 = 2.5e5;
  config.model = kBpmDual;
  config.resolution = 100;
  const Raster raster = interference_field(config, 4);
  const double bound =
      20.0 + 10.0 * std::log10(static_cast<double>(raster.tx_positions.size()));
  for (double v : raster.values_dbm) CHECK(v <= bound);
}

TEST_CASE("field stats on a known raster") {
  Raster r;
  r.side_m = 4.0;
  r.resolution = 2;
  r.values_dbm = {1.0, 1.0, 1.0, 1.0};
  const FieldStats flat = field_stats(r);
  CHECK(flat.dynamic_range_db == 0.0);
  CHECK(flat.p50 == 1.0);

  r.values_dbm = {4.0, 2.0, 1.0, 3.0};
  const FieldStats s = field_stats(r);
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.p1 == 1.0);
  CHECK(s.p99 == 4.0);
  CHECK(s.dynamic_range_db == 3.0);
}

TEST_CASE("dense grids spread far wider under unbounded single-slope") {
  HeatmapConfig upm;
  upm.tx_density_per_km2 = 2.5e5;
  upm.model = kUpmSingle;
  upm.resolution = 200;
  HeatmapConfig bpm = upm;
  bpm.model = kBpmDual;
  const FieldStats u = field_stats(interference_field(upm, 4));
  const FieldStats b = field_stats(interference_field(bpm, 4));
  CHECK(u.dynamic_range_db > b.dynamic_range_db);
}

TEST_CASE("sparse grids rank-correlate across bounded and unbounded duals") {
  const Raster u = interference_field(sparse_config(kUpmDual), 4);
  const Raster b = interference_field(sparse_config(kBpmDual), 4);
  CHECK(spearman_rank_correlation(u.values_dbm, b.values_dbm) > 0.95);
}

TEST_CASE("unbounded dominates bounded at every pixel for matched parameters") {
  const Raster u = interference_field(sparse_config(kUpmDual), 4);
  const Raster b = interference_field(sparse_config(kBpmDual), 4);
  for (std::size_t i = 0; i < u.values_dbm.size(); ++i)
    CHECK(u.values_dbm[i] >= b.values_dbm[i]);
}

TEST_CASE("raster inherits lattice symmetry pixel-exactly without fading") {
  HeatmapConfig config;
  config.tx_density_per_km2 = 3.6e3;
  config.model = kBpmDual;
  config.resolution = 51;
  const Raster r = interference_field(config, 4);
  const int n = config.resolution;
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col) {
      CHECK(r.at(row, col) == r.at(row, n - 1 - col));  // mirror x
      CHECK(r.at(row, col) == r.at(n - 1 - row, col));  // mirror y
      CHECK(r.at(row, col) == r.at(col, row));          // transpose
    }
}

TEST_CASE("fading draws are keyed, so rasters reproduce across threads") {
  HeatmapConfig config;
  config.tx_density_per_km2 = 3.6e3;
  config.model = kBpmDual;
  config.resolution = 64;
  config.fading = Fading::RayleighUnitMean;
  config.seed = 77;
  const Raster a = interference_field(config, 1);
  const Raster b = interference_field(config, 4);
  CHECK(a.values_dbm == b.values_dbm);
  config.seed = 78;
  const Raster c = interference_field(config, 4);
  CHECK(a.values_dbm != c.values_dbm);
}

TEST_CASE("spearman correlation basics") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> inc{10.0, 20.0, 30.0, 40.0};
  const std::vector<double> dec{4.0, 3.0, 2.0, 1.0};
  CHECK(spearman_rank_correlation(x, inc) == doctest::Approx(1.0));
  CHECK(spearman_rank_correlation(x, dec) == doctest::Approx(-1.0));
}

TEST_CASE("csv and pgm emissions are stable") {
  Raster r;
  r.side_m = 2.0;
  r.resolution = 2;
  r.values_dbm = {-10.0, 0.0, 5.0, 10.0};

  std::ostringstream csv;
  write_raster_csv(r, csv);
  CHECK(csv.str() == "-10,0\n5,10\n");

  std::ostringstream pgm;
  write_raster_pgm16(r, pgm);
  const std::string bytes = pgm.str();
  // Header, then 4 big-endian 16-bit samples: 0, 32768, 49151, 65535.
  CHECK(bytes.substr(0, 13) == "P5\n2 2\n65535\n");
  REQUIRE(bytes.size() == 13 + 8);
  const auto sample = [&](int i) {
    return (static_cast<unsigned char>(bytes[13 + 2 * i]) << 8) |
           static_cast<unsigned char>(bytes[13 + 2 * i + 1]);
  };
  CHECK(sample(0) == 0);
  CHECK(sample(1) == 32768);
  CHECK(sample(2) == 49151);
  CHECK(sample(3) == 65535);
}
