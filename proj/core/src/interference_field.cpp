#include "udn/interference_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "udn/format.hpp"
#include "udn/parallel.hpp"
#include "udn/units.hpp"

namespace udn {

Raster interference_field(const HeatmapConfig& config, int threads) {
  if (config.resolution < 2)
    throw std::invalid_argument("interference_field: resolution must be >= 2");
  if (!(config.tx_density_per_km2 > 0.0))
    throw std::invalid_argument("interference_field: density must be > 0");

  const Deployment grid =
      grid_deployment(config.tx_density_per_km2 * kPerKm2ToPerM2, config.side_m);
  const std::size_t n_tx = grid.positions.size();
  const double tx_mw = dbm_to_mw(config.tx_power_dbm);
  const int res = config.resolution;

  Raster raster;
  raster.side_m = config.side_m;
  raster.resolution = res;
  raster.tx_positions = grid.positions;
  raster.values_dbm.resize(static_cast<std::size_t>(res) * res);

  const bool faded = config.fading == Fading::RayleighUnitMean;
  parallel_chunks<int>(
      static_cast<std::uint64_t>(res), threads,
      [&](std::uint64_t row_begin, std::uint64_t row_end) {
        std::vector<double> terms(n_tx);
        for (std::uint64_t row = row_begin; row < row_end; ++row) {
          const double py = raster.pixel_y(static_cast<int>(row));
          for (int col = 0; col < res; ++col) {
            const double px = raster.pixel_x(col);
            const std::uint64_t pixel = row * static_cast<std::uint64_t>(res) + col;
            for (std::size_t k = 0; k < n_tx; ++k) {
              const double d = std::hypot(px - grid.positions[k].x, py - grid.positions[k].y);
              double term = tx_mw * config.model.gain(d);
              if (faded) {
                RandomStream fade_stream(config.seed, "heatmap.fade",
                                         pixel * n_tx + static_cast<std::uint64_t>(k));
                term *= fade_stream.exponential();
              }
              terms[k] = term;
            }
            // Ascending-order summation: symmetric pixels see identical
            // multisets, hence identical sums, bit for bit.
            std::sort(terms.begin(), terms.end());
            double total = 0.0;
            for (double t : terms) total += t;
            raster.values_dbm[pixel] = mw_to_dbm(total);
          }
        }
        return 0;
      });
  return raster;
}

namespace {

double nearest_rank(const std::vector<double>& sorted, double percentile) {
  const double pos = percentile / 100.0 * static_cast<double>(sorted.size() - 1);
  const std::size_t idx = static_cast<std::size_t>(std::llround(pos));
  return sorted[std::min(idx, sorted.size() - 1)];
}

}  // namespace

FieldStats field_stats(const Raster& raster) {
  if (raster.values_dbm.empty())
    throw std::invalid_argument("field_stats: empty raster");
  std::vector<double> sorted = raster.values_dbm;
  std::sort(sorted.begin(), sorted.end());
  FieldStats s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.p1 = nearest_rank(sorted, 1.0);
  s.p50 = nearest_rank(sorted, 50.0);
  s.p99 = nearest_rank(sorted, 99.0);
  s.dynamic_range_db = s.p99 - s.p1;
  return s;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman_rank_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman_rank_correlation: need equal-size inputs, n >= 2");
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += ra[i];
    sb += rb[i];
  }
  const double ma = sa / n, mb = sb / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = ra[i] - ma;
    const double db = rb[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

void write_raster_csv(const Raster& raster, std::ostream& out) {
  for (int row = 0; row < raster.resolution; ++row) {
    for (int col = 0; col < raster.resolution; ++col) {
      if (col) out << ',';
      out << format_g9(raster.at(row, col));
    }
    out << '\n';
  }
}

void write_raster_pgm16(const Raster& raster, std::ostream& out,
                        std::span<const std::string> header_comments) {
  const FieldStats stats = field_stats(raster);
  const double span = stats.max - stats.min;
  out << "P5\n";
  for (const std::string& line : header_comments) out << "# " << line << '\n';
  out << raster.resolution << ' ' << raster.resolution << "\n65535\n";
  for (double v : raster.values_dbm) {
    const double unit = span > 0.0 ? (v - stats.min) / span : 0.0;
    const auto q = static_cast<std::uint16_t>(std::llround(unit * 65535.0));
    const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xFF)};
    out.write(bytes, 2);
  }
}

}  // namespace udn
