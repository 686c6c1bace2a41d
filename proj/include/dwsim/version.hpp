#pragma once

#include <string_view>

namespace dwsim {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kVersionString = "dwsim 0.1.0";

}  // namespace dwsim
