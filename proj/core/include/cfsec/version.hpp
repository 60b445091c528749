#pragma once

#include <string_view>

namespace cfsec {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace cfsec
