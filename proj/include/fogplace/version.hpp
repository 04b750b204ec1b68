#pragma once

namespace fogplace {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fogplace
