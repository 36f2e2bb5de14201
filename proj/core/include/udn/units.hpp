#pragma once

#include <cmath>

namespace udn {

/// External interfaces use per-km^2 densities, internals use per-m^2.
inline constexpr double kPerKm2ToPerM2 = 1e-6;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// Powers are dBm at external interfaces, linear milliwatts internally.
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace udn
