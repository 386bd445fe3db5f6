#include "sqw/snapshot.hpp"

#include "sqw/manifest.hpp"

#include "json.hpp"

#include <bit>
#include <cstdint>
#include <cstring>

namespace sqw {

namespace {

using nlohmann::json;

constexpr const char* kMagic = "SQWF1\n";
constexpr std::size_t kMagicLen = 6;

void put_le(std::string& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

double get_le(const char* p) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
    return std::bit_cast<double>(bits);
}

json mode_json(const ModeSpec& m) {
    if (m.family == ModeFamily::HG)
        return {{"family", "HG"}, {"m", m.first}, {"n", m.second}, {"offset_x", m.offset_x}, {"offset_y", m.offset_y}};
    return {{"family", "LG"}, {"ell", m.first}, {"p", m.second}, {"offset_x", m.offset_x}, {"offset_y", m.offset_y}};
}

[[noreturn]] void schema_error(const std::string& what) {
    throw SnapshotError(SnapshotErrorCode::schema, "snapshot metadata: " + what);
}

template <class T>
T field_of(const json& j, const char* key) {
    if (!j.contains(key)) schema_error(std::string("missing '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        schema_error(std::string("bad type for '") + key + "'");
    }
}

ModeSpec mode_from_json(const json& j) {
    if (!j.is_object()) schema_error("'mode' must be an object or null");
    const auto fam = field_of<std::string>(j, "family");
    ModeSpec m;
    if (fam == "HG") {
        m = ModeSpec::hg(field_of<int>(j, "m"), field_of<int>(j, "n"));
    } else if (fam == "LG") {
        m = ModeSpec::lg(field_of<int>(j, "ell"), field_of<int>(j, "p"));
    } else {
        schema_error("unknown mode family '" + fam + "'");
    }
    m.offset_x = field_of<double>(j, "offset_x");
    m.offset_y = field_of<double>(j, "offset_y");
    return m;
}

} // namespace

const char* to_string(SnapshotErrorCode code) noexcept {
    switch (code) {
    case SnapshotErrorCode::io: return "io";
    case SnapshotErrorCode::bad_magic: return "bad_magic";
    case SnapshotErrorCode::truncated: return "truncated";
    case SnapshotErrorCode::schema: return "schema";
    case SnapshotErrorCode::endianness: return "endianness";
    case SnapshotErrorCode::dimension_mismatch: return "dimension_mismatch";
    }
    return "unknown";
}

std::string encode_snapshot(const ComplexField2D& field, const SnapshotMeta& meta) {
    const auto& g = field.grid();
    json j = {{"nx", g.nx()},
              {"ny", g.ny()},
              {"extent_x", g.extent_x()},
              {"extent_y", g.extent_y()},
              {"zeta", field.zeta()},
              {"A", meta.A},
              {"mode", meta.mode ? mode_json(*meta.mode) : json(nullptr)},
              {"normalized", meta.normalized},
              {"endianness", "little"},
              {"dtype", "complex128"}};
    std::string out = kMagic;
    out += j.dump();
    out += '\n';
    out.reserve(out.size() + 16 * g.size());
    for (const auto& v : field.values()) {
        put_le(out, v.real());
        put_le(out, v.imag());
    }
    return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
    if (bytes.size() < kMagicLen || bytes.compare(0, kMagicLen, kMagic) != 0)
        throw SnapshotError(SnapshotErrorCode::bad_magic, "snapshot: bad magic (expected SQWF1)");
    const auto eol = bytes.find('\n', kMagicLen);
    if (eol == std::string::npos) throw SnapshotError(SnapshotErrorCode::truncated, "snapshot: metadata line is truncated");
    json j;
    try {
        j = json::parse(bytes.begin() + static_cast<long>(kMagicLen), bytes.begin() + static_cast<long>(eol));
    } catch (const json::exception& e) {
        schema_error(std::string("not valid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) schema_error("metadata must be a JSON object");
    const auto endian = field_of<std::string>(j, "endianness");
    if (endian != "little") {
        throw SnapshotError(SnapshotErrorCode::endianness,
                            "snapshot: unsupported endianness '" + endian + "' (only little-endian payloads are read)");
    }
    if (field_of<std::string>(j, "dtype") != "complex128") schema_error("dtype must be complex128");
    const auto nx = field_of<std::size_t>(j, "nx");
    const auto ny = field_of<std::size_t>(j, "ny");
    const auto ex = field_of<double>(j, "extent_x");
    const auto ey = field_of<double>(j, "extent_y");
    std::optional<Grid2D> grid;
    try {
        grid.emplace(nx, ny, ex, ey);
    } catch (const std::invalid_argument& e) {
        schema_error(e.what());
    }
    SnapshotMeta meta;
    meta.A = field_of<double>(j, "A");
    meta.normalized = field_of<bool>(j, "normalized");
    if (!j.contains("mode")) schema_error("missing 'mode'");
    if (!j["mode"].is_null()) meta.mode = mode_from_json(j["mode"]);
    const double zeta = field_of<double>(j, "zeta");

    const std::size_t expect = 16 * nx * ny;
    const std::size_t have = bytes.size() - eol - 1;
    if (have < expect) {
        throw SnapshotError(SnapshotErrorCode::truncated, "snapshot: payload truncated (" + std::to_string(have) + " of " +
                                                              std::to_string(expect) + " bytes)");
    }
    if (have > expect) {
        throw SnapshotError(SnapshotErrorCode::dimension_mismatch, "snapshot: payload has " + std::to_string(have) +
                                                                       " bytes, header dimensions imply " +
                                                                       std::to_string(expect));
    }
    std::vector<cplx> values(nx * ny);
    const char* p = bytes.data() + eol + 1;
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = {get_le(p + 16 * k), get_le(p + 16 * k + 8)};
    return {ComplexField2D(*grid, std::move(values), zeta), meta};
}

void write_snapshot(const ComplexField2D& field, const std::filesystem::path& path, const SnapshotMeta& meta) {
    write_file(path, encode_snapshot(field, meta));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::string bytes;
    try {
        bytes = read_file(path);
    } catch (const IoError& e) {
        throw SnapshotError(SnapshotErrorCode::io, e.what());
    }
    return decode_snapshot(bytes);
}

} // namespace sqw
