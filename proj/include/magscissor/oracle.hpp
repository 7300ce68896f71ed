#pragma once

#include <cstdint>

#include "magscissor/scissor_model.hpp"

namespace magscissor {

// Exhaustive lattice search over magnet positions and angles. Deliberately
// naive; used to check the evolutionary optimizer on small layouts.

enum class LatticeOrder { Forward, Reverse };

struct GridSpec {
    double position_step = 1.5e-3;   // m
    double angle_step = 0.7853981633974483;  // rad (45 degrees)
    std::size_t max_magnets = 2;
    std::uint64_t budget = 100'000'000;  // max lattice points
    LatticeOrder order = LatticeOrder::Forward;
    unsigned threads = 1;
};

struct OracleResult {
    Genome best_genome;
    FitnessReport best_report;
    std::uint64_t lattice_size = 0;
    std::uint64_t evaluated_count = 0;  // lattice points that passed the separation filter
    bool found = false;  // false when every lattice point violates min separation

    double best_fitness() const { return best_report.fitness; }
};

/// Number of lattice points (product over magnets of positions x angles).
std::uint64_t lattice_size(const Problem& problem, const GridSpec& grid);

/// Positions are the multiples of position_step (device frame) inside each
/// blade polygon; angles are the multiples of angle_step in [0, 2 pi).
/// Exact maximizer of fitness over the lattice. Points closer than the
/// minimum separation are skipped. Ties go to the lexicographically smallest
/// lattice coordinates, so the result does not depend on order or threads.
OracleResult grid_search(const Problem& problem, const GridSpec& grid);

}  // namespace magscissor
