#include "sqw/render.hpp"

#include "sqw/errors.hpp"
#include "sqw/manifest.hpp"

#include <cmath>
#include <numbers>

namespace sqw {

std::string render_heatmap(const ComplexField2D& field, HeatmapKind kind) {
    const auto& g = field.grid();
    double peak = 0.0;
    for (const auto& v : field.values()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalGuardError("render_heatmap: field has non-finite values");
        peak = std::max(peak, std::norm(v));
    }
    const bool wide = kind == HeatmapKind::density;
    std::string out = "P5\n" + std::to_string(g.nx()) + " " + std::to_string(g.ny()) + "\n" + (wide ? "65535" : "255") + "\n";
    out.reserve(out.size() + g.size() * (wide ? 2 : 1));
    for (std::size_t row = 0; row < g.ny(); ++row) {
        const std::size_t j = g.ny() - 1 - row; // top row is the largest y
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const cplx v = field(i, j);
            if (wide) {
                const double s = peak > 0.0 ? std::norm(v) / peak : 0.0;
                const auto q = static_cast<unsigned>(std::lround(s * 65535.0));
                out.push_back(static_cast<char>((q >> 8) & 0xffu));
                out.push_back(static_cast<char>(q & 0xffu));
            } else {
                const double s = (std::arg(v) + std::numbers::pi) / (2.0 * std::numbers::pi);
                out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(s * 255.0))));
            }
        }
    }
    return out;
}

void render_heatmap(const ComplexField2D& field, HeatmapKind kind, const std::filesystem::path& path) {
    write_file(path, render_heatmap(field, kind));
}

} // namespace sqw
