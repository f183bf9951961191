#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace feeder {

/// Whole-file read; a missing or unreadable file throws InputNotFound.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file. Throws Io.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace feeder
