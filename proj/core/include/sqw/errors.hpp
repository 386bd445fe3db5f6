#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sqw {

// Precondition violations (bad indices, odd grid counts, zero transform
// scale, ...) are reported with std::invalid_argument.

/// A numerical guard refused to produce a result that would be wrong:
/// a grid too small to hold a mode, aliasing, arms leaving the grid, etc.
class NumericalGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or incomplete scenario configuration. `path` names the offending
/// JSON field ("grid.nx", "mode.family", ...).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sqw
