#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "magscissor/design_io.hpp"
#include "magscissor/evolution.hpp"
#include "magscissor/render.hpp"

namespace magscissor {

struct SeedSummary {
    std::uint64_t seed = 0;
    double best_fitness = 0.0;  // N*m
    bool feasible = false;
    double tau_final = 0.0;     // N*m
    double cutting_force = 0.0; // N
    double improvement = 0.0;   // cutting_force / baseline
};

/// Everything one optimization seed produces, already serialized.
struct SeedArtifacts {
    EvolutionResult result;
    SeedSummary summary;
    std::string convergence_csv;
    std::string design_json;
    std::string layout_svg;
};

SeedArtifacts run_seed(const RunConfig& config, std::uint64_t seed);

std::string summary_csv(const std::vector<SeedSummary>& rows);

/// Writes convergence_<seed>.csv, best_<seed>.json, layout_<seed>.svg per
/// seed plus convergence.svg and summary.csv into config.output_dir.
std::vector<SeedSummary> run_optimize(const RunConfig& config, std::ostream& log);

}  // namespace magscissor
