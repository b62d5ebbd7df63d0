#pragma once

#include <string_view>

namespace caret {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Active log level, read once from the CARET_LOG environment variable
/// ("error" | "warn" | "info" | "debug" or 0..3). Defaults to warn.
LogLevel log_level();

void log(LogLevel level, std::string_view message);

inline void log_error(std::string_view m) { log(LogLevel::kError, m); }
inline void log_warn(std::string_view m) { log(LogLevel::kWarn, m); }
inline void log_info(std::string_view m) { log(LogLevel::kInfo, m); }
inline void log_debug(std::string_view m) { log(LogLevel::kDebug, m); }

}  // namespace caret
