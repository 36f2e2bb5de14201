#pragma once

#include <stdexcept>
#include <string>

namespace udn {

/// Unbounded pathloss evaluated at zero distance. Never clamped: the
/// divergence is a property of the model, not a numeric accident.
class singularity_error : public std::domain_error {
 public:
  explicit singularity_error(const std::string& what) : std::domain_error(what) {}
};

/// Field-region boundaries out of order (R_B < R_F < R_C violated), so the
/// region partition is not jointly meaningful.
class inconsistent_regions_error : public std::domain_error {
 public:
  explicit inconsistent_regions_error(const std::string& what) : std::domain_error(what) {}
};

/// Search argmax landed on an interval endpoint; the interval is too narrow.
class boundary_error : public std::runtime_error {
 public:
  explicit boundary_error(const std::string& what) : std::runtime_error(what) {}
};

/// Not enough data points to carry out a fit or estimate.
class insufficient_data_error : public std::invalid_argument {
 public:
  explicit insufficient_data_error(const std::string& what) : std::invalid_argument(what) {}
};

/// All measurements at a single abscissa; the design matrix is rank-deficient.
class degenerate_design_error : public std::invalid_argument {
 public:
  explicit degenerate_design_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A request would allocate or iterate beyond the configured resource cap.
class resource_limit_error : public std::runtime_error {
 public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace udn
