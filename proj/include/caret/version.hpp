#pragma once

namespace caret {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace caret
