#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace caret {

std::string_view trim(std::string_view s);

/// Splits on a delimiter, keeping empty fields ("a,,b" -> {"a","","b"}).
std::vector<std::string> split(std::string_view s, char delim);

/// Splits on runs of spaces/tabs, dropping empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

// Strict numeric parsers: the whole string must be consumed, no sign or
// whitespace slack. Return nullopt on any mismatch.
std::optional<std::uint64_t> to_u64(std::string_view s);
std::optional<std::int64_t> to_i64(std::string_view s);
std::optional<int> to_int(std::string_view s);
std::optional<double> to_double(std::string_view s);

/// Lengths in text artifacts: fixed two decimal places.
std::string format_fixed2(double value);
/// Fractions in text artifacts: 12 significant digits.
std::string format_sig12(double value);
/// Shortest representation that round-trips exactly.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);

/// Splits content into lines. LF is canonical; a CR before LF is stripped.
/// A trailing newline does not produce an empty final line.
std::vector<std::string> split_lines(std::string_view content);

/// Writes bytes exactly as given (no newline translation). Creates parent
/// directories as needed.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// FNV-1a 64-bit. Fingerprint for run manifests, not cryptographic.
class Fnv1a {
 public:
  void update(std::string_view bytes);
  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 14695981039346656037ull;
};

}  // namespace caret
