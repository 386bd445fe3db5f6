#pragma once

#include "sqw/physics.hpp"

#include <filesystem>
#include <string>

namespace sqw {

enum class HeatmapKind { density, phase };

/// Binary PGM (P5), one pixel per grid node, x to the right and y up.
/// density: 16-bit, linear over [0, max |psi|^2]; phase: 8-bit, [-pi, pi]
/// mapped to [0, 255]. Non-finite values throw NumericalGuardError.
std::string render_heatmap(const ComplexField2D& field, HeatmapKind kind);
void render_heatmap(const ComplexField2D& field, HeatmapKind kind, const std::filesystem::path& path);

} // namespace sqw
