#include "udn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "udn/errors.hpp"
#include "udn/units.hpp"

namespace udn {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Window Window::disk(double radius_m) {
  if (!(radius_m > 0.0)) throw std::invalid_argument("Window::disk: radius must be > 0");
  return Window(Shape::Disk, radius_m);
}

Window Window::square(double side_m) {
  if (!(side_m > 0.0)) throw std::invalid_argument("Window::square: side must be > 0");
  return Window(Shape::Square, side_m);
}

double Window::area_m2() const {
  return shape_ == Shape::Disk ? M_PI * size_ * size_ : size_ * size_;
}

bool Window::contains(Point p) const {
  if (shape_ == Shape::Disk) return p.x * p.x + p.y * p.y <= size_ * size_;
  const double half = size_ / 2.0;
  return std::abs(p.x) <= half && std::abs(p.y) <= half;
}

Deployment sample_ppp(double density_per_m2, const Window& window, RandomStream& stream) {
  if (!(density_per_m2 > 0.0))
    throw std::invalid_argument("sample_ppp: density must be > 0");
  const double expected = density_per_m2 * window.area_m2();
  if (expected > 1e8)
    throw resource_limit_error("sample_ppp: expected point count exceeds 1e8");

  Deployment d{{}, window, density_per_m2};
  const bool resample_empty = expected >= 1.0;
  do {
    const std::uint64_t n = stream.poisson(expected);
    d.positions.clear();
    d.positions.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      Point p;
      if (window.shape() == Window::Shape::Disk) {
        const double r = window.radius_m() * std::sqrt(stream.next_unit());
        const double theta = 2.0 * M_PI * stream.next_unit();
        p = {r * std::cos(theta), r * std::sin(theta)};
      } else {
        const double half = window.side_m() / 2.0;
        p = {stream.uniform(-half, half), stream.uniform(-half, half)};
      }
      d.positions.push_back(p);
    }
  } while (resample_empty && d.positions.empty());
  return d;
}

Deployment grid_deployment(double density_per_m2, double square_side_m) {
  if (!(density_per_m2 > 0.0))
    throw std::invalid_argument("grid_deployment: density must be > 0");
  if (!(square_side_m > 0.0))
    throw std::invalid_argument("grid_deployment: side must be > 0");
  const double spacing = 1.0 / std::sqrt(density_per_m2);
  // Tolerant floor: 1/sqrt(density) is one ulp off for exact ratios like
  // 50 m / 16.67 m, and the point count must be floor(side/spacing)^2 exactly.
  std::int64_t n = static_cast<std::int64_t>(std::floor(square_side_m / spacing + 1e-9));
  if (n < 1) n = 1;

  Deployment d{{}, Window::square(square_side_m), density_per_m2};
  d.positions.reserve(static_cast<std::size_t>(n * n));
  // Centered form (i - (n-1)/2) * s: equal to the half-spacing corner offset
  // when n*s == side, mirror-exact in floating point, and the degenerate
  // single-point grid lands on the window center.
  const double mid = static_cast<double>(n - 1) / 2.0;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      d.positions.push_back({(static_cast<double>(i) - mid) * spacing,
                             (static_cast<double>(j) - mid) * spacing});
  return d;
}

std::pair<std::size_t, double> nearest_point(const Deployment& deployment, Point query) {
  if (deployment.positions.empty())
    throw std::invalid_argument("nearest_point: empty deployment");
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < deployment.positions.size(); ++i) {
    const double dx = deployment.positions[i].x - query.x;
    const double dy = deployment.positions[i].y - query.y;
    const double sq = dx * dx + dy * dy;
    if (sq < best_sq) {  // strict: ties keep the lowest index
      best_sq = sq;
      best = i;
    }
  }
  return {best, std::sqrt(best_sq)};
}

double nearest_distance_cdf(double density_per_m2, double r_m) {
  if (!(density_per_m2 > 0.0))
    throw std::invalid_argument("nearest_distance_cdf: density must be > 0");
  if (!(r_m >= 0.0)) throw std::invalid_argument("nearest_distance_cdf: r must be >= 0");
  return -std::expm1(-M_PI * density_per_m2 * r_m * r_m);
}

double mean_link_length_m(double density_per_m2) {
  if (!(density_per_m2 > 0.0))
    throw std::invalid_argument("mean_link_length_m: density must be > 0");
  return 1.0 / (2.0 * std::sqrt(density_per_m2));
}

double typed_user_window_radius_m(double density_per_m2, double max_breakpoint_m) {
  const double for_count = std::sqrt(500.0 / (M_PI * density_per_m2));
  const double for_links = 20.0 * mean_link_length_m(density_per_m2);
  const double for_model = 10.0 * max_breakpoint_m;
  return std::max({for_count, for_links, for_model});
}

CdfEstimate empirical_link_cdf(double density_per_m2, double r_m, std::uint64_t trials,
                               std::uint64_t seed) {
  if (trials < 100)
    throw std::invalid_argument("empirical_link_cdf: need at least 100 trials");
  const Window window = Window::disk(typed_user_window_radius_m(density_per_m2, 0.0));
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream stream(seed, "geometry.linkcdf", t);
    const Deployment d = sample_ppp(density_per_m2, window, stream);
    const auto [idx, dist] = nearest_point(d, Point{0.0, 0.0});
    (void)idx;
    if (dist < r_m) ++hits;
  }
  CdfEstimate e;
  e.trials = trials;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

std::vector<LinkStatsRow> link_stats_table(std::span<const double> densities_per_km2,
                                           std::span<const double> thresholds_m) {
  if (densities_per_km2.empty() || thresholds_m.empty())
    throw std::invalid_argument("link_stats_table: empty density or threshold list");
  std::vector<LinkStatsRow> rows;
  rows.reserve(densities_per_km2.size());
  for (double mu_km2 : densities_per_km2) {
    const double mu = mu_km2 * kPerKm2ToPerM2;
    LinkStatsRow row;
    row.density_per_km2 = mu_km2;
    row.mean_link_m = mean_link_length_m(mu);
    row.thresholds_m.assign(thresholds_m.begin(), thresholds_m.end());
    for (double r : thresholds_m) row.probabilities.push_back(nearest_distance_cdf(mu, r));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace udn
