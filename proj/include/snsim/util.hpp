#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace snsim {

/// Shortest decimal representation that parses back to the same double.
std::string fmt_double(double value);

/// FNV-1a 64-bit digest of a byte sequence.
std::uint64_t fnv1a64(std::string_view bytes);

/// fnv1a64 rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

/// Split on a single-character separator; keeps empty fields.
std::vector<std::string> split(std::string_view text, char sep);

/// Strip leading/trailing spaces, tabs and carriage returns.
std::string_view trim(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

} // namespace snsim
