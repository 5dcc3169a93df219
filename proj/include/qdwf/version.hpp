#pragma once

namespace qdwf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qdwf
