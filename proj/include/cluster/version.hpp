#pragma once

namespace cluster {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cluster
