#pragma once

namespace czcap {

inline constexpr const char* kProjectName = "czcap";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace czcap
