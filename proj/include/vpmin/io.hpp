#pragma once

#include <filesystem>
#include <string>

namespace vpmin::io {

/// Every artifact written by this project carries this schema version,
/// as a "schema_version" JSON field or a "# schema_version=N" CSV comment.
inline constexpr int schema_version = 1;

/// Format a double with 17 significant digits (round-trip exact).
std::string fmt17(double x);

/// JSON string literal: s in quotes, with `"`, `\` and control characters
/// escaped.
std::string json_string(const std::string& s);

/// Write `content` to `path` atomically: write to a temporary file in the
/// same directory, then rename over the target.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Read a whole file; throws std::runtime_error when missing/unreadable.
std::string read_file(const std::filesystem::path& path);

} // namespace vpmin::io
