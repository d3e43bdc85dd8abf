#pragma once

namespace ea {

inline constexpr const char* kToolName = "ea-bounds";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "ea-bounds/1";

}  // namespace ea
