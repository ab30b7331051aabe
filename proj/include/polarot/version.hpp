#pragma once

#include <string_view>

namespace ot {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kWireVersion = 1;

}  // namespace ot
