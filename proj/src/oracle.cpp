#include "magscissor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <thread>

#include <fmt/format.h>

namespace magscissor {

namespace {

struct Candidates {
    std::vector<Point2> positions;
    std::vector<double> angles;
    std::uint64_t size() const { return positions.size() * angles.size(); }
};

// Multiples of `step` inside [lo, hi]; values within rounding of an end snap onto it.
std::vector<double> axis(double lo, double hi, double step) {
    const double tol = 1e-9 * step;
    std::vector<double> v;
    for (auto k = static_cast<long long>(std::ceil((lo - tol) / step)); static_cast<double>(k) * step <= hi + tol; ++k) {
        v.push_back(std::clamp(static_cast<double>(k) * step, lo, hi));
    }
    return v;
}

std::vector<double> angle_lattice(double step) {
    const double full = 2.0 * std::numbers::pi;
    const auto count = static_cast<std::size_t>(std::ceil(full / step - 1e-9));
    std::vector<double> v;
    for (std::size_t k = 0; k < count; ++k) v.push_back(static_cast<double>(k) * step);
    return v;
}

std::vector<Candidates> build_candidates(const Problem& problem, const GridSpec& grid) {
    if (!(grid.position_step > 0.0) || !(grid.angle_step > 0.0)) {
        throw ConfigError("grid steps must be > 0");
    }
    const auto& layout = problem.layout;
    if (layout.count() == 0) throw ConfigError("oracle needs at least one magnet");
    if (layout.count() > grid.max_magnets) {
        throw ConfigError(fmt::format("oracle limited to {} magnets (layout has {}); raise the limit explicitly",
                                      grid.max_magnets, layout.count()));
    }
    const std::vector<double> angles = angle_lattice(grid.angle_step);
    std::vector<Candidates> out;
    for (std::size_t i = 0; i < layout.count(); ++i) {
        const Polygon& region = problem.geometry.blade(layout.blade_assignment[i]).region;
        const Box2 box = region.bounds();
        Candidates c;
        for (double x : axis(box.xmin, box.xmax, grid.position_step)) {
            for (double y : axis(box.ymin, box.ymax, grid.position_step)) {
                if (region.contains({x, y})) c.positions.push_back({x, y});
            }
        }
        if (c.positions.empty()) {
            throw ConfigError(fmt::format("empty lattice: no grid point lies inside blade {} for magnet {}",
                                          to_string(layout.blade_assignment[i]), i));
        }
        c.angles = angles;
        out.push_back(std::move(c));
    }
    return out;
}

std::uint64_t product(const std::vector<Candidates>& cands) {
    std::uint64_t total = 1;
    for (const auto& c : cands) {
        if (c.size() != 0 && total > std::numeric_limits<std::uint64_t>::max() / c.size()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= c.size();
    }
    return total;
}

struct LocalBest {
    bool found = false;
    double fitness = 0.0;
    std::uint64_t index = 0;
    std::uint64_t evaluated = 0;
};

bool better(double f, std::uint64_t idx, const LocalBest& b) {
    return !b.found || f > b.fitness || (f == b.fitness && idx < b.index);
}

// Decodes flat lattice index into a genome (magnet 0 most significant).
void fill_genome(std::uint64_t idx, const std::vector<Candidates>& cands, Genome& g) {
    for (std::size_t i = cands.size(); i-- > 0;) {
        const std::uint64_t local = idx % cands[i].size();
        idx /= cands[i].size();
        const std::size_t na = cands[i].angles.size();
        const Point2 p = cands[i].positions[local / na];
        g[3 * i] = p.x;
        g[3 * i + 1] = p.y;
        g[3 * i + 2] = cands[i].angles[local % na];
    }
}

bool separated(const Genome& g, std::size_t n, double min_sep) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::hypot(g[3 * j] - g[3 * i], g[3 * j + 1] - g[3 * i + 1]) < min_sep) return false;
        }
    }
    return true;
}

}  // namespace

std::uint64_t lattice_size(const Problem& problem, const GridSpec& grid) {
    return product(build_candidates(problem, grid));
}

OracleResult grid_search(const Problem& problem, const GridSpec& grid) {
    problem.geometry.validate();
    problem.env.validate();
    const auto cands = build_candidates(problem, grid);
    const std::uint64_t total = product(cands);
    if (total > grid.budget) {
        throw ConfigError(fmt::format("lattice size {} exceeds the evaluation budget {}", total, grid.budget));
    }
    if (problem.layout.count() > 2) {
        std::cerr << fmt::format("warning: oracle over {} magnets; lattice grows exponentially\n",
                                 problem.layout.count());
    }
    const std::size_t n = problem.layout.count();

    auto scan = [&](std::uint64_t begin, std::uint64_t end, LocalBest& best) {
        Genome g(3 * n);
        for (std::uint64_t step = begin; step < end; ++step) {
            const std::uint64_t idx = grid.order == LatticeOrder::Forward ? step : total - 1 - step;
            fill_genome(idx, cands, g);
            if (!separated(g, n, problem.layout.min_separation)) continue;
            ++best.evaluated;
            const double f = fitness(g, problem).fitness;
            if (better(f, idx, best)) {
                best.found = true;
                best.fitness = f;
                best.index = idx;
            }
        }
    };

    const std::uint64_t workers = std::clamp<std::uint64_t>(grid.threads, 1, std::max<std::uint64_t>(total, 1));
    std::vector<LocalBest> partial(workers);
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min(total, w * chunk);
            const std::uint64_t end = std::min(total, begin + chunk);
            if (workers == 1) {
                scan(begin, end, partial[w]);
            } else {
                pool.emplace_back(scan, begin, end, std::ref(partial[w]));
            }
        }
    }

    OracleResult result;
    result.lattice_size = total;
    LocalBest best;
    for (const auto& p : partial) {
        result.evaluated_count += p.evaluated;
        if (p.found && better(p.fitness, p.index, best)) best = p;
    }
    if (!best.found) return result;
    result.found = true;
    result.best_genome.assign(3 * n, 0.0);
    fill_genome(best.index, cands, result.best_genome);
    result.best_report = fitness(result.best_genome, problem);
    return result;
}

}  // namespace magscissor
