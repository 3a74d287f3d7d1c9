#pragma once

namespace lindiv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lindiv
