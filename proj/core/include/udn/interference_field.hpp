#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "udn/geometry.hpp"
#include "udn/linklevel.hpp"
#include "udn/propagation.hpp"

namespace udn {

struct HeatmapConfig {
  double side_m = 50.0;
  int resolution = 500;  // pixels per side
  double tx_density_per_km2 = 3.6e3;
  double tx_power_dbm = 20.0;
  PathlossModel model =
      PathlossModel::make(PathlossFamily::BoundedMultiSlope, {12.5}, {2.0, 4.0});
  Fading fading = Fading::None;  // default renders the expected field
  std::uint64_t seed = 1;
};

/// Aggregate received power (dBm) over a pixel grid. Row 0 is the top edge
/// (largest y); pixel (r, c) is sampled at its center.
struct Raster {
  double side_m = 0.0;
  int resolution = 0;
  std::vector<double> values_dbm;  // row-major
  std::vector<Point> tx_positions;

  double at(int row, int col) const {
    return values_dbm[static_cast<std::size_t>(row) * resolution + col];
  }
  // Centered pixel coordinates ((k - (res-1)/2) * p): algebraically the
  // usual (k + 0.5) * p - side/2, but mirror-exact in floating point.
  double pixel_x(int col) const {
    return (col - static_cast<double>(resolution - 1) / 2.0) * (side_m / resolution);
  }
  double pixel_y(int row) const {
    return (static_cast<double>(resolution - 1) / 2.0 - row) * (side_m / resolution);
  }
};

/// Rasterizes the total interference field of a grid deployment. Per-pixel
/// contributions are sorted before summation, so the raster inherits the
/// lattice's dihedral symmetries pixel-exactly when fading is off. Fading
/// draws are keyed by (pixel, transmitter), making rendering order (and
/// thread count) irrelevant.
Raster interference_field(const HeatmapConfig& config, int threads = 1);

struct FieldStats {
  double min = 0.0;
  double max = 0.0;
  double p1 = 0.0;
  double p50 = 0.0;
  double p99 = 0.0;
  double dynamic_range_db = 0.0;  // p99 - p1
};

/// Exact order statistics over the pixel values.
FieldStats field_stats(const Raster& raster);

/// Spearman rank correlation (average ranks on ties).
double spearman_rank_correlation(std::span<const double> a, std::span<const double> b);

/// CSV matrix of dBm values, one raster row per line, 9 significant digits.
void write_raster_csv(const Raster& raster, std::ostream& out);

/// Binary 16-bit PGM (maxval 65535, big-endian samples), linear map from
/// [min, max] dBm to [0, 65535]. `header_comments` lines are embedded as
/// PGM comments after the magic number.
void write_raster_pgm16(const Raster& raster, std::ostream& out,
                        std::span<const std::string> header_comments = {});

}  // namespace udn
