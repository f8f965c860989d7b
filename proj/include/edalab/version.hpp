#pragma once

namespace edalab {

inline constexpr const char* kToolName = "eda_lab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace edalab
