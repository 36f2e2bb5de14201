#pragma once

#include <cstdio>
#include <string>

namespace udn {

/// Fixed 9-significant-digit decimal rendering ('.' separator, C locale),
/// the float format of every CSV surface. Keeps reruns byte-identical.
inline std::string format_g9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

}  // namespace udn
