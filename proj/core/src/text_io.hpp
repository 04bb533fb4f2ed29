#pragma once

// Internal helpers shared by the CSV/JSON readers and writers.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tacbench::detail {

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);

std::vector<std::string_view> split_fields(std::string_view line, char delim = ',');
std::string_view trim(std::string_view text);

/// Reads all lines, stripping a trailing '\r'. Throws IoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
/// Writes atomically enough for our purposes: truncates then writes. Throws IoError.
void write_text(const std::filesystem::path& path, std::string_view text);

/// Header lookup helper: index of `name` in `header`, or -1.
int column_index(const std::vector<std::string_view>& header, std::string_view name);

}  // namespace tacbench::detail
