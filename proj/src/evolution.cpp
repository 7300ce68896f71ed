#include "magscissor/evolution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace magscissor {

namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool is_angle_gene(std::size_t index) { return index % 3 == 2; }

void record_best(Individual& best, const Individual& candidate) {
    if (!best.evaluated() || candidate.fitness() > best.fitness()) best = candidate;
}

}  // namespace

std::string to_string(SurvivorSelection s) {
    return s == SurvivorSelection::Tournament ? "tournament" : "truncation";
}

SurvivorSelection selection_from_string(const std::string& s) {
    if (s == "tournament") return SurvivorSelection::Tournament;
    if (s == "truncation") return SurvivorSelection::Truncation;
    throw ConfigError("evolution.selection must be 'tournament' or 'truncation', got '" + s + "'");
}

void EvolutionConfig::validate() const {
    if (population_size == 0) throw ConfigError("evolution.mu must be positive");
    if (offspring_count < population_size) throw ConfigError("evolution.lambda must be >= evolution.mu");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) throw ConfigError("evolution.cx_prob must be in [0,1]");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) throw ConfigError("evolution.mut_prob must be in [0,1]");
    if (crossover_prob + mutation_prob > 1.0) {
        throw ConfigError("evolution.cx_prob + evolution.mut_prob must be <= 1");
    }
    if (!(blend_alpha >= 0.0)) throw ConfigError("evolution.blend_alpha must be >= 0");
    if (!std::isfinite(mutation_mean)) throw ConfigError("evolution.mutation_mean must be finite");
    if (!(sigma_position >= 0.0)) throw ConfigError("evolution.sigma_pos_mm must be >= 0");
    if (!(sigma_angle >= 0.0)) throw ConfigError("evolution.sigma_angle_rad must be >= 0");
    if (gene_mutation_prob && !(*gene_mutation_prob >= 0.0 && *gene_mutation_prob <= 1.0)) {
        throw ConfigError("evolution.gene_mut_prob must be in [0,1]");
    }
    if (tournament_size == 0) throw ConfigError("evolution.tournament must be positive");
    if (tournament_size > offspring_count) throw ConfigError("evolution.tournament must be <= evolution.lambda");
    if (threads == 0) throw ConfigError("evolution.threads must be positive");
}

double Individual::fitness() const {
    if (!report) throw std::logic_error("individual has not been evaluated");
    return report->fitness;
}

std::vector<Individual> init_population(const EvolutionConfig& config, const Problem& problem, Rng& rng) {
    const auto& layout = problem.layout;
    std::vector<Individual> pop;
    pop.reserve(config.population_size);
    Genome g(layout.genome_length());
    for (std::size_t k = 0; k < config.population_size; ++k) {
        std::size_t attempts = 0;
        for (;;) {
            if (attempts++ == kMaxInitAttempts) {
                throw ConfigError(fmt::format(
                    "infeasible layout: no feasible individual after {} attempts "
                    "(blade regions too small for {} magnets?)",
                    kMaxInitAttempts, layout.count()));
            }
            for (std::size_t i = 0; i < layout.count(); ++i) {
                const Box2 box = problem.geometry.blade(layout.blade_assignment[i]).region.bounds();
                g[3 * i] = uniform(rng, box.xmin, box.xmax);
                g[3 * i + 1] = uniform(rng, box.ymin, box.ymax);
                g[3 * i + 2] = uniform(rng, 0.0, 2.0 * std::numbers::pi);
            }
            FitnessReport r = fitness(g, problem);
            if (r.feasible()) {
                pop.push_back({g, std::move(r)});
                break;
            }
        }
    }
    return pop;
}

std::pair<Genome, Genome> blend_crossover(std::span<const double> a, std::span<const double> b,
                                          double alpha, Rng& rng) {
    if (a.size() != b.size()) throw std::invalid_argument("blend_crossover: parent lengths differ");
    std::pair<Genome, Genome> children{Genome(a.size()), Genome(a.size())};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double lo = std::min(a[i], b[i]);
        const double hi = std::max(a[i], b[i]);
        const double d = hi - lo;
        if (d == 0.0) {
            children.first[i] = children.second[i] = lo;
            continue;
        }
        const double from = lo - alpha * d;
        const double to = hi + alpha * d;
        // uniform_real_distribution is half-open; clamp guards the rounding edge
        children.first[i] = std::clamp(uniform(rng, from, to), from, to);
        children.second[i] = std::clamp(uniform(rng, from, to), from, to);
    }
    return children;
}

Genome gaussian_mutate(std::span<const double> genome, const EvolutionConfig& config, Rng& rng) {
    Genome out(genome.begin(), genome.end());
    if (out.empty()) return out;
    const double indpb = config.gene_mutation_prob.value_or(1.0 / static_cast<double>(out.size()));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (coin(rng) >= indpb) continue;
        const bool angle = is_angle_gene(i);
        const double sigma = angle ? config.sigma_angle : config.sigma_position;
        double delta = config.mutation_mean;
        if (sigma > 0.0) delta = std::normal_distribution<double>(config.mutation_mean, sigma)(rng);
        out[i] += delta;
        if (angle) out[i] = wrap_angle(out[i]);
    }
    return out;
}

std::size_t tournament_pick(std::span<const Individual> pool, std::size_t tournament_size, Rng& rng) {
    if (pool.empty()) throw std::invalid_argument("tournament over an empty pool");
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::size_t best = pick(rng);
    for (std::size_t k = 1; k < tournament_size; ++k) {
        const std::size_t c = pick(rng);
        if (pool[c].fitness() > pool[best].fitness()) best = c;
    }
    return best;
}

std::vector<Individual> select_survivors(std::span<const Individual> offspring, std::size_t mu,
                                         std::size_t tournament_size, Rng& rng, SurvivorSelection mode) {
    if (offspring.size() < mu) throw std::invalid_argument("select_survivors: lambda < mu");
    for (const auto& ind : offspring) {
        if (!ind.evaluated()) throw std::logic_error("select_survivors: unevaluated offspring");
    }
    std::vector<Individual> out;
    out.reserve(mu);
    if (mode == SurvivorSelection::Truncation) {
        std::vector<std::size_t> order(offspring.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return offspring[l].fitness() > offspring[r].fitness();
        });
        for (std::size_t i = 0; i < mu; ++i) out.push_back(offspring[order[i]]);
        return out;
    }
    for (std::size_t i = 0; i < mu; ++i) out.push_back(offspring[tournament_pick(offspring, tournament_size, rng)]);
    return out;
}

void evaluate_all(std::span<Individual> individuals, const Problem& problem, unsigned threads) {
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& ind = individuals[i];
            if (!ind.evaluated()) ind.report = fitness(ind.genome, problem);
        }
    };
    const std::size_t n = individuals.size();
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        work(0, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
    }
}

EvolutionResult evolve(const EvolutionConfig& config, const Problem& problem) {
    config.validate();
    validate_problem(problem);

    Rng rng(config.seed);
    std::vector<Individual> population = init_population(config, problem, rng);

    EvolutionResult result;
    for (const auto& ind : population) record_best(result.best, ind);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Individual> offspring;
    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        offspring.clear();
        offspring.reserve(config.offspring_count);
        for (std::size_t k = 0; k < config.offspring_count; ++k) {
            const double op = coin(rng);
            if (op < config.crossover_prob) {
                const auto& p1 = population[tournament_pick(population, config.tournament_size, rng)];
                const auto& p2 = population[tournament_pick(population, config.tournament_size, rng)];
                auto children = blend_crossover(p1.genome, p2.genome, config.blend_alpha, rng);
                offspring.push_back({std::move(children.first), std::nullopt});
            } else if (op < config.crossover_prob + config.mutation_prob) {
                const auto& p = population[tournament_pick(population, config.tournament_size, rng)];
                offspring.push_back({gaussian_mutate(p.genome, config, rng), std::nullopt});
            } else {
                offspring.push_back(population[tournament_pick(population, config.tournament_size, rng)]);
            }
        }
        evaluate_all(offspring, problem, config.threads);
        for (const auto& ind : offspring) record_best(result.best, ind);

        population = select_survivors(offspring, config.population_size, config.tournament_size, rng,
                                      config.selection);

        GenerationStats s;
        s.generation = gen;
        std::size_t best_idx = 0;
        double sum = 0.0;
        s.min_fitness = population.front().fitness();
        for (std::size_t i = 0; i < population.size(); ++i) {
            const double f = population[i].fitness();
            sum += f;
            s.min_fitness = std::min(s.min_fitness, f);
            if (f > population[best_idx].fitness()) best_idx = i;
        }
        s.max_fitness = population[best_idx].fitness();
        s.mean_fitness = std::clamp(sum / static_cast<double>(population.size()), s.min_fitness, s.max_fitness);
        s.best_so_far = result.best.fitness();
        s.best_genome = population[best_idx].genome;
        result.history.push_back(std::move(s));
    }
    return result;
}

std::string convergence_csv(std::span<const GenerationStats> history) {
    std::string out = "generation,max_fitness,mean_fitness,min_fitness,best_so_far\n";
    for (const auto& s : history) {
        out += fmt::format("{},{},{},{},{}\n", s.generation, s.max_fitness, s.mean_fitness, s.min_fitness,
                           s.best_so_far);
    }
    return out;
}

std::vector<GenerationStats> parse_convergence_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "generation,max_fitness,mean_fitness,min_fitness,best_so_far") {
        throw std::runtime_error("convergence CSV: unexpected header");
    }
    auto parse_double = [](const std::string& field) {
        double v = 0.0;
        const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
            throw std::runtime_error("convergence CSV: bad number '" + field + "'");
        }
        return v;
    };
    std::vector<GenerationStats> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) cols.push_back(field);
        if (cols.size() != 5) throw std::runtime_error("convergence CSV: expected 5 columns");
        GenerationStats s;
        s.generation = static_cast<std::size_t>(std::stoull(cols[0]));
        s.max_fitness = parse_double(cols[1]);
        s.mean_fitness = parse_double(cols[2]);
        s.min_fitness = parse_double(cols[3]);
        s.best_so_far = parse_double(cols[4]);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace magscissor
