// magscissor: optimize, evaluate, grid-search and render scissor magnet layouts.

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "magscissor/design_io.hpp"
#include "magscissor/oracle.hpp"
#include "magscissor/render.hpp"
#include "magscissor/runner.hpp"

using namespace magscissor;

namespace {

int cmd_optimize(const std::string& config_path, const std::vector<std::uint64_t>& seeds,
                 std::optional<std::size_t> generations, const std::string& out_dir, std::optional<unsigned> threads) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (!seeds.empty()) cfg.seeds = seeds;
    if (generations) cfg.evolution.generations = *generations;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads) cfg.evolution.threads = *threads;
    cfg.validate();

    std::cout << fmt::format("optimizing {} magnets, mu={} lambda={} generations={} (pair kernel: {})\n",
                             cfg.problem.layout.count(), cfg.evolution.population_size, cfg.evolution.offspring_count,
                             cfg.evolution.generations, to_string(active_kernel()));
    const auto rows = run_optimize(cfg, std::cout);
    std::cout << fmt::format("wrote {} seed(s) to {}\n", rows.size(), cfg.output_dir.string());
    return 0;
}

int cmd_evaluate(const std::string& design_path) {
    const DesignFile d = load_design(design_path);
    const FitnessReport r = fitness(d.genome, d.problem);
    const ScissorDesign design = decode_genome(d.genome, d.problem.layout);

    std::cout << fmt::format("fitness            {:.9e} N*m\n", r.fitness);
    std::cout << fmt::format("net torque (z, A)  {:.9e} N*m\n", r.net_torque);
    std::cout << fmt::format("zero-field torque  {:.9e} N*m (spring {:.4f} mN*m)\n", r.zero_field_torque,
                             d.problem.env.spring_threshold * 1e3);
    std::cout << "magnet blade    x_mm    y_mm  theta_deg      lever_Nm  interaction_Nm      field_Nm\n";
    for (std::size_t i = 0; i < design.magnets.size(); ++i) {
        const auto& m = design.magnets[i];
        std::string terms = "             -               -             -";
        for (const auto& t : r.terms) {
            if (t.magnet == i) terms = fmt::format("{:>14.6e}  {:>14.6e}  {:>12.6e}", t.lever, t.interaction, t.field);
        }
        std::cout << fmt::format("{:>6} {:>5} {:>7.3f} {:>7.3f} {:>10.3f} {}\n", i, to_string(m.blade),
                                 m.dipole.position.x * 1e3, m.dipole.position.y * 1e3,
                                 wrap_angle(m.angle) * 180.0 / std::numbers::pi, terms);
    }
    if (r.violations.empty()) {
        std::cout << "violations         none\n";
    } else {
        std::cout << fmt::format("violations         {} (penalty {:.6g})\n", r.violations.size(), r.penalty);
        for (const auto& v : r.violations) std::cout << "  " << to_string(v) << "\n";
    }
    const double tau_max = d.problem.geometry.a.closing_sign * r.net_torque;
    const CuttingForce cf = cutting_force(tau_max, d.problem.env.spring_threshold, d.lever_arm);
    std::cout << fmt::format("tau_final          {:.6f} mN*m\n", cf.tau_final * 1e3);
    std::cout << fmt::format("cutting force      {:.4f} mN (lever arm {:.2f} mm)\n", cf.force * 1e3, d.lever_arm * 1e3);
    return 0;
}

int cmd_oracle(const std::string& config_path, double pos_step_mm, double angle_step_deg, const std::string& out,
               std::size_t max_magnets, unsigned threads) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    GridSpec grid;
    grid.position_step = pos_step_mm * 1e-3;
    grid.angle_step = angle_step_deg * std::numbers::pi / 180.0;
    grid.max_magnets = max_magnets;
    grid.threads = threads;
    const OracleResult res = grid_search(cfg.problem, grid);
    std::cout << fmt::format("lattice points     {}\n", res.lattice_size);
    std::cout << fmt::format("evaluated          {}\n", res.evaluated_count);
    if (!res.found) {
        std::cout << "no lattice point satisfies the separation constraint\n";
        return 0;
    }
    std::cout << fmt::format("best fitness       {:.9e} N*m{}\n", res.best_fitness(),
                             res.best_report.feasible() ? "" : " (infeasible)");
    const std::filesystem::path path = out.empty() ? cfg.output_dir / "oracle_best.json" : std::filesystem::path(out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    save_text(path, design_to_string({cfg.problem, cfg.lever_arm, res.best_genome}));
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_render(const std::string& design_path, const std::string& out) {
    const DesignFile d = load_design(design_path);
    save_text(out, render_layout(decode_genome(d.genome, d.problem.layout), d.problem.geometry, d.problem.layout));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magnet placement optimizer for magnetically actuated scissors"};
    app.require_subcommand(1);

    std::string config_path, design_path, out;
    std::vector<std::uint64_t> seeds;
    std::optional<std::size_t> generations;
    std::optional<unsigned> threads;

    auto* opt = app.add_subcommand("optimize", "run the evolutionary optimizer for each seed");
    opt->add_option("--config", config_path, "config JSON (defaults used when omitted)")->check(CLI::ExistingFile);
    opt->add_option("--seed", seeds, "seed(s); overrides the config seed list");
    opt->add_option("--generations", generations, "number of generations");
    opt->add_option("--out", out, "output directory");
    opt->add_option("--threads", threads, "fitness evaluation threads");

    auto* eval = app.add_subcommand("evaluate", "print the fitness report of a design file");
    eval->add_option("--design", design_path, "design JSON")->required()->check(CLI::ExistingFile);

    double pos_step = 1.5, angle_step = 45.0;
    std::size_t max_magnets = 2;
    unsigned oracle_threads = 1;
    auto* orc = app.add_subcommand("oracle", "exhaustive grid search (small layouts)");
    orc->add_option("--config", config_path, "config JSON")->check(CLI::ExistingFile);
    orc->add_option("--pos-step", pos_step, "position step, mm")->required()->check(CLI::PositiveNumber);
    orc->add_option("--angle-step", angle_step, "angle step, degrees")->required()->check(CLI::PositiveNumber);
    orc->add_option("--out", out, "design file to write");
    orc->add_option("--max-magnets", max_magnets, "refuse layouts with more magnets than this");
    orc->add_option("--threads", oracle_threads, "worker threads");

    auto* rnd = app.add_subcommand("render", "render a design file as SVG");
    rnd->add_option("--design", design_path, "design JSON")->required()->check(CLI::ExistingFile);
    rnd->add_option("--out", out, "SVG file")->required();

    auto* defaults = app.add_subcommand("defaults", "print the default config JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*opt) return cmd_optimize(config_path, seeds, generations, out, threads);
        if (*eval) return cmd_evaluate(design_path);
        if (*orc) return cmd_oracle(config_path, pos_step, angle_step, out, max_magnets, oracle_threads);
        if (*rnd) return cmd_render(design_path, out);
        if (*defaults) {
            std::cout << run_config_to_string(RunConfig{});
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
