#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "udn/random.hpp"

namespace udn {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

/// Origin-centered observation window.
class Window {
 public:
  enum class Shape { Disk, Square };

  static Window disk(double radius_m);
  static Window square(double side_m);

  Shape shape() const { return shape_; }
  double radius_m() const { return size_; }  // Disk
  double side_m() const { return size_; }    // Square
  double area_m2() const;
  bool contains(Point p) const;

 private:
  Window(Shape shape, double size) : shape_(shape), size_(size) {}
  Shape shape_;
  double size_;
};

/// A finite set of transmitter positions plus the intensity it was
/// generated with (Poisson: the generating intensity; grid: 1/spacing^2).
struct Deployment {
  std::vector<Point> positions;
  Window window;
  double density_per_m2 = 0.0;
};

/// Homogeneous PPP sample: count ~ Poisson(density * area), points i.i.d.
/// uniform. Zero-count realizations are resampled when the expected count
/// is >= 1 (the typed-user window design keeps it >= 500); below that an
/// empty deployment may be returned. Expected counts above 1e8 raise
/// resource_limit_error.
Deployment sample_ppp(double density_per_m2, const Window& window, RandomStream& stream);

/// Square lattice of interval s = 1/sqrt(density), offset half a spacing
/// from the window corner. Spacing wider than the side degenerates to a
/// single point at the center.
Deployment grid_deployment(double density_per_m2, double square_side_m);

/// Index and distance of the closest point to `query`; ties go to the
/// lowest index. Throws std::invalid_argument on an empty deployment.
std::pair<std::size_t, double> nearest_point(const Deployment& deployment, Point query);

/// Nearest-transmitter link distance CDF under a homogeneous PPP
/// (void probability): P(d < r) = 1 - exp(-pi * density * r^2).
double nearest_distance_cdf(double density_per_m2, double r_m);

/// Mean nearest-transmitter link length, 1 / (2 sqrt(density)).
double mean_link_length_m(double density_per_m2);

/// Observation-disk radius for typed-user experiments: large enough for an
/// expected 500 points, 20 mean link lengths and 10 model breakpoints, which
/// bounds the truncation error of aggregate interference.
double typed_user_window_radius_m(double density_per_m2, double max_breakpoint_m);

struct CdfEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t trials = 0;
};

/// Monte Carlo check of nearest_distance_cdf: fraction of trials whose
/// nearest-point distance from the origin is below r.
CdfEstimate empirical_link_cdf(double density_per_m2, double r_m, std::uint64_t trials,
                               std::uint64_t seed);

struct LinkStatsRow {
  double density_per_km2 = 0.0;
  double mean_link_m = 0.0;
  std::vector<double> thresholds_m;
  std::vector<double> probabilities;
};

/// Analytic link-distance statistics: one row per density, one probability
/// column per threshold.
std::vector<LinkStatsRow> link_stats_table(std::span<const double> densities_per_km2,
                                           std::span<const double> thresholds_m);

}  // namespace udn
