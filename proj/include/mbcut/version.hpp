#pragma once

namespace mbcut {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mbcut
