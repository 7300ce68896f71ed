#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "magscissor/evolution.hpp"
#include "magscissor/scissor_model.hpp"

namespace magscissor {

/// Top view of a design: blade regions, pivot, magnet centers (dots),
/// moment directions (arrows) and min-separation circles. Deterministic
/// output; y points up in device coordinates.
std::string render_layout(const ScissorDesign& design, const ScissorGeometry& geometry,
                          const MagnetLayout& layout);

struct SeedHistory {
    std::uint64_t seed = 0;
    std::vector<GenerationStats> history;
};

/// Max fitness and best-so-far versus generation, one pair of curves per seed.
std::string render_convergence(std::span<const SeedHistory> runs);

}  // namespace magscissor
