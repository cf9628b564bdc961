#pragma once

#include <filesystem>
#include <string>

namespace znlgt::cli {

// "# znlgt <version> config=<hash>"
std::string provenance_line(const std::string& hash);

// Writes via a temp file and renames into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string format_number(double v);  // 12 significant digits

}  // namespace znlgt::cli
