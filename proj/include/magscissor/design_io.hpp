#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "magscissor/evolution.hpp"
#include "magscissor/scissor_model.hpp"

namespace magscissor {

// File formats are JSON with human units at the boundary (mm, degrees, mT,
// mN*m); everything is converted to SI once on ingestion.

struct RunConfig {
    Problem problem = default_problem();
    EvolutionConfig evolution;
    double lever_arm = kDefaultLeverArm;            // m
    double baseline_force = kBaselineCuttingForce;  // N
    std::filesystem::path output_dir = "out";
    std::vector<std::uint64_t> seeds{42};

    void validate() const;
};

/// Parses a config document. Missing fields keep their defaults; bad fields
/// raise ConfigError naming the field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);
std::string run_config_to_string(const RunConfig& config);

struct DesignFile {
    Problem problem = default_problem();
    double lever_arm = kDefaultLeverArm;
    Genome genome;
};

/// Each gene carries its exact SI value next to the mm/degree one, so a
/// written genome reads back bit-exactly. Hand edits to the mm/degree
/// fields win over a stale SI value.
std::string design_to_string(const DesignFile& design);
DesignFile parse_design(const std::string& json_text);

DesignFile load_design(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace magscissor
