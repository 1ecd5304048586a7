#pragma once

namespace zenolab {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "zeno-lab";

}  // namespace zenolab
