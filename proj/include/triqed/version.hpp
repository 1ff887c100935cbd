#pragma once

namespace triqed {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace triqed
