#pragma once

namespace udn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace udn
