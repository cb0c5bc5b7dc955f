#pragma once

namespace apsum {

inline constexpr const char* kEngineVersion = "apsum 0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace apsum
