#pragma once

namespace actmap {

inline constexpr const char* kVersion = "0.1.0";

} // namespace actmap
