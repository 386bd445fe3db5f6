#pragma once

// SQWF1 field snapshots:
//   "SQWF1\n"
//   one line of JSON metadata + "\n"
//   nx * ny interleaved (re, im) float64 values, little-endian, x slow.

#include "sqw/analytic.hpp"
#include "sqw/errors.hpp"
#include "sqw/physics.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace sqw {

enum class SnapshotErrorCode { io, bad_magic, truncated, schema, endianness, dimension_mismatch };

const char* to_string(SnapshotErrorCode code) noexcept;

class SnapshotError : public IoError {
public:
    SnapshotError(SnapshotErrorCode code, const std::string& what) : IoError(what), code_(code) {}
    SnapshotErrorCode code() const noexcept { return code_; }

private:
    SnapshotErrorCode code_;
};

struct SnapshotMeta {
    double A = 0.0;
    std::optional<ModeSpec> mode;
    bool normalized = false;
};

struct Snapshot {
    ComplexField2D field;
    SnapshotMeta meta;
};

std::string encode_snapshot(const ComplexField2D& field, const SnapshotMeta& meta = {});
Snapshot decode_snapshot(const std::string& bytes);

void write_snapshot(const ComplexField2D& field, const std::filesystem::path& path, const SnapshotMeta& meta = {});
Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace sqw
