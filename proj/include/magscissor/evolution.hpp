#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "magscissor/scissor_model.hpp"

namespace magscissor {

/// Single random stream for a whole run. Draw order: initialization, then per
/// generation the offspring variation followed by survivor selection.
using Rng = std::mt19937_64;

enum class SurvivorSelection { Tournament, Truncation };

std::string to_string(SurvivorSelection s);
SurvivorSelection selection_from_string(const std::string& s);

struct EvolutionConfig {
    std::size_t population_size = 70;   // mu
    std::size_t offspring_count = 140;  // lambda
    std::size_t generations = 100;
    double crossover_prob = 0.7;
    double mutation_prob = 0.2;
    double blend_alpha = 0.5;
    double mutation_mean = 0.0;
    double sigma_position = 1e-3;  // m
    double sigma_angle = 0.1;      // rad
    std::optional<double> gene_mutation_prob;  // per-gene; 1/len when unset
    std::size_t tournament_size = 3;
    SurvivorSelection selection = SurvivorSelection::Tournament;
    std::uint64_t seed = 42;
    unsigned threads = 1;  // fitness evaluation only; results do not depend on it

    void validate() const;
};

struct Individual {
    Genome genome;
    std::optional<FitnessReport> report;

    bool evaluated() const { return report.has_value(); }
    /// Throws std::logic_error when unevaluated.
    double fitness() const;
};

struct GenerationStats {
    std::size_t generation = 0;
    double max_fitness = 0.0;
    double mean_fitness = 0.0;
    double min_fitness = 0.0;
    double best_so_far = 0.0;
    Genome best_genome;  // best of this generation's population
};

struct EvolutionResult {
    std::vector<GenerationStats> history;
    Individual best;  // best individual evaluated over the whole run
};

/// Uniform rejection sampling of feasible individuals (all constraints,
/// including the zero-field equilibrium). Throws ConfigError after 10,000
/// consecutive rejections for one individual.
std::vector<Individual> init_population(const EvolutionConfig& config, const Problem& problem, Rng& rng);

inline constexpr std::size_t kMaxInitAttempts = 10'000;

/// BLX-alpha: each child gene uniform on [lo - alpha d, hi + alpha d].
std::pair<Genome, Genome> blend_crossover(std::span<const double> a, std::span<const double> b,
                                          double alpha, Rng& rng);

/// Per-gene Gaussian perturbation. Genes with index % 3 == 2 are angles:
/// they use sigma_angle and are wrapped into [0, 2 pi). Positions are not clamped.
Genome gaussian_mutate(std::span<const double> genome, const EvolutionConfig& config, Rng& rng);

/// Index of the tournament winner among `pool`.
std::size_t tournament_pick(std::span<const Individual> pool, std::size_t tournament_size, Rng& rng);

/// Chooses mu survivors from the offspring only.
std::vector<Individual> select_survivors(std::span<const Individual> offspring, std::size_t mu,
                                         std::size_t tournament_size, Rng& rng,
                                         SurvivorSelection mode = SurvivorSelection::Tournament);

/// Evaluates every unevaluated individual, optionally on several threads.
void evaluate_all(std::span<Individual> individuals, const Problem& problem, unsigned threads);

EvolutionResult evolve(const EvolutionConfig& config, const Problem& problem);

// Convergence record: generation,max_fitness,mean_fitness,min_fitness,best_so_far
std::string convergence_csv(std::span<const GenerationStats> history);
/// Parses the numeric columns back (best_genome is not part of the CSV).
std::vector<GenerationStats> parse_convergence_csv(const std::string& text);

}  // namespace magscissor
