#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <string>

namespace ttalab::io {

/// Shortest round-trip decimal rendering of a double. Locale-independent,
/// '.' decimal separator, stable across runs of the same binary.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_int(std::int64_t v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_uint(std::uint64_t v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

/// Writes text to a file verbatim (LF endings assumed in `text`).
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Reads a whole file into a string. Throws BadParamsError on failure.
std::string read_text_file(const std::filesystem::path& path);

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace ttalab::io
