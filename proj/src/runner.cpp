#include "magscissor/runner.hpp"

#include <ostream>

#include <fmt/format.h>

namespace magscissor {

SeedArtifacts run_seed(const RunConfig& config, std::uint64_t seed) {
    EvolutionConfig evo = config.evolution;
    evo.seed = seed;

    SeedArtifacts a;
    a.result = evolve(evo, config.problem);
    const Individual& best = a.result.best;

    SeedSummary& s = a.summary;
    s.seed = seed;
    s.best_fitness = best.fitness();
    s.feasible = best.report->feasible();
    const CuttingForce cf = cutting_force(s.best_fitness, config.problem.env.spring_threshold, config.lever_arm);
    s.tau_final = cf.tau_final;
    s.cutting_force = cf.force;
    s.improvement = cf.force / config.baseline_force;

    a.convergence_csv = convergence_csv(a.result.history);
    a.design_json = design_to_string({config.problem, config.lever_arm, best.genome});
    a.layout_svg = render_layout(decode_genome(best.genome, config.problem.layout), config.problem.geometry,
                                 config.problem.layout);
    return a;
}

std::string summary_csv(const std::vector<SeedSummary>& rows) {
    std::string out = "seed,best_fitness_Nm,feasible,tau_final_Nm,cutting_force_N,improvement\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{}\n", r.seed, r.best_fitness, r.feasible ? 1 : 0, r.tau_final,
                           r.cutting_force, r.improvement);
    }
    return out;
}

std::vector<SeedSummary> run_optimize(const RunConfig& config, std::ostream& log) {
    config.validate();
    const auto& dir = config.output_dir;
    std::filesystem::create_directories(dir);

    std::vector<SeedSummary> rows;
    std::vector<SeedHistory> curves;
    for (std::uint64_t seed : config.seeds) {
        SeedArtifacts a = run_seed(config, seed);
        save_text(dir / fmt::format("convergence_{}.csv", seed), a.convergence_csv);
        save_text(dir / fmt::format("best_{}.json", seed), a.design_json);
        save_text(dir / fmt::format("layout_{}.svg", seed), a.layout_svg);
        log << fmt::format("seed {:>6}: best {:.6e} N*m  tau_final {:.4f} mN*m  force {:.2f} mN  x{:.3f}{}\n",
                           seed, a.summary.best_fitness, a.summary.tau_final * 1e3, a.summary.cutting_force * 1e3,
                           a.summary.improvement, a.summary.feasible ? "" : "  (infeasible)");
        rows.push_back(a.summary);
        curves.push_back({seed, std::move(a.result.history)});
    }
    save_text(dir / "convergence.svg", render_convergence(curves));
    save_text(dir / "summary.csv", summary_csv(rows));
    return rows;
}

}  // namespace magscissor
