#pragma once

namespace waf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace waf
