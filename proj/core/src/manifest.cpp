#include "sqw/manifest.hpp"

#include "sqw/errors.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>

namespace sqw {

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw IoError("sha256: digest computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string build_manifest(const std::filesystem::path& root, const std::vector<std::string>& files,
                           const std::string& scenario) {
    std::vector<std::string> sorted = files;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& f : sorted) {
        const std::string bytes = read_file(root / f);
        entries.push_back({{"path", f}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
    }
    nlohmann::ordered_json j = {{"format", "sqw-manifest-1"}, {"scenario", scenario}, {"files", entries}};
    return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.close();
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string out((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (is.bad()) throw IoError("failed reading '" + path.string() + "'");
    return out;
}

} // namespace sqw
