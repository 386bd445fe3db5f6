#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sqw {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestEntry {
    std::string path; ///< relative to the output directory, '/' separated
    std::string sha256;
    std::uintmax_t bytes = 0;
};

/// Hashes the given files (relative to root) and returns canonical JSON:
/// entries sorted by path, no timestamps or host data.
std::string build_manifest(const std::filesystem::path& root, const std::vector<std::string>& files,
                           const std::string& scenario);

/// Writes the canonical bytes to path, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

} // namespace sqw
