#include "caret/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace caret {

namespace {

LogLevel parse_level(const char* value) {
  if (value == nullptr) return LogLevel::kWarn;
  const std::string v(value);
  if (v == "error" || v == "0") return LogLevel::kError;
  if (v == "warn" || v == "1") return LogLevel::kWarn;
  if (v == "info" || v == "2") return LogLevel::kInfo;
  if (v == "debug" || v == "3") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::kError: return "error";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kInfo: return "info";
    case LogLevel::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level(std::getenv("CARET_LOG"));
  return level;
}

void log(LogLevel level, std::string_view message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::cerr << "caret [" << level_tag(level) << "] " << message << "\n";
}

}  // namespace caret
