#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace triqed {

// Shortest round-trip decimal form of a double ("%.17g" semantics, normalized
// so output is byte-deterministic across runs).
std::string format_g17(double v);

// Write rows as CSV with a header line; creates parent directories.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace triqed
