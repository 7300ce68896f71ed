#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "magscissor/design_io.hpp"
#include "magscissor/evolution.hpp"

using namespace magscissor;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string output;
};

class Workdir {
public:
    Workdir() {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("magscissor_cli_" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    ~Workdir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    fs::path operator/(const std::string& name) const { return dir_ / name; }

    Run run(const std::string& args) const {
        const fs::path log = dir_ / "cli.log";
        const std::string cmd = std::string("\"") + MAGSCISSOR_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
        const int raw = std::system(cmd.c_str());
        Run r;
#ifdef WEXITSTATUS
        r.status = WEXITSTATUS(raw);
#else
        r.status = raw;
#endif
        r.output = read_text(log);
        return r;
    }

private:
    fs::path dir_;
};

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

void write_design(const fs::path& path, const Genome& genome, std::size_t n) {
    DesignFile d;
    d.problem = default_problem(n);
    d.genome = genome;
    save_text(path, design_to_string(d));
}

}  // namespace

TEST_CASE("optimize writes parseable artifacts") {
    Workdir w;
    const Run r = w.run("optimize --seed 42 --generations 15 --out " + quoted(w / "out"));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    const auto history = parse_convergence_csv(read_text(w / "out/convergence_42.csv"));
    CHECK(history.size() == 15);
    const DesignFile best = parse_design(read_text(w / "out/best_42.json"));
    CHECK(best.genome.size() == 12);
    CHECK(read_text(w / "out/layout_42.svg").find("</svg>") != std::string::npos);
    CHECK(read_text(w / "out/convergence.svg").find("data-seed=\"42\"") != std::string::npos);

    // The saved design re-evaluates to exactly the fitness reported in the summary.
    std::istringstream summary(read_text(w / "out/summary.csv"));
    std::string header, row;
    std::getline(summary, header);
    std::getline(summary, row);
    CHECK(header.rfind("seed,best_fitness_Nm", 0) == 0);
    const double reported = std::stod(row.substr(row.find(',') + 1));
    CHECK(fitness(best.genome, best.problem).fitness == reported);
    CHECK(history.back().best_so_far == reported);
}

TEST_CASE("optimize with zero generations still produces a design") {
    Workdir w;
    const Run r = w.run("optimize --seed 5 --generations 0 --out " + quoted(w / "out"));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    CHECK(parse_convergence_csv(read_text(w / "out/convergence_5.csv")).empty());
    CHECK(parse_design(read_text(w / "out/best_5.json")).genome.size() == 12);
}

TEST_CASE("evaluate reports feasible and infeasible designs") {
    Workdir w;
    write_design(w / "good.json", {6e-3, 3e-3, 0.5, 12e-3, -4e-3, 2.0}, 2);
    Run r = w.run("evaluate --design " + quoted(w / "good.json"));
    CHECK(r.status == 0);
    CHECK(r.output.find("violations         none") != std::string::npos);
    CHECK(r.output.find("cutting force") != std::string::npos);

    write_design(w / "overlap.json", {6e-3, 3e-3, 0.5, 7e-3, 3e-3, 2.0, 6e-3, -3e-3, 0.0, 12e-3, -4e-3, 1.0}, 4);
    r = w.run("evaluate --design " + quoted(w / "overlap.json"));
    CHECK(r.status == 0);
    CHECK(r.output.find("TooClose(0,1)") != std::string::npos);
}

TEST_CASE("oracle and render subcommands") {
    Workdir w;
    nlohmann::json cfg = nlohmann::json::parse(run_config_to_string(RunConfig{}));
    cfg["magnet"]["count"] = 2;
    cfg["magnet"].erase("blade_assignment");
    save_text(w / "cfg.json", cfg.dump());
    Run r = w.run("oracle --config " + quoted(w / "cfg.json") + " --pos-step 3 --angle-step 90 --out " +
                  quoted(w / "oracle.json"));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    const DesignFile best = parse_design(read_text(w / "oracle.json"));
    CHECK(best.genome.size() == 6);
    CHECK(fitness(best.genome, best.problem).feasible());

    r = w.run("render --design " + quoted(w / "oracle.json") + " --out " + quoted(w / "layout.svg"));
    CHECK(r.status == 0);
    CHECK(read_text(w / "layout.svg").find("class=\"magnet\"") != std::string::npos);

    r = w.run("oracle --pos-step 1.5 --angle-step 45 --out " + quoted(w / "big.json"));
    CHECK(r.status != 0);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("invalid inputs fail with a message") {
    Workdir w;
    save_text(w / "bad.json", R"({"evolution": {"mu": -1}})");
    Run r = w.run("optimize --config " + quoted(w / "bad.json") + " --out " + quoted(w / "out"));
    CHECK(r.status != 0);
    CHECK(r.output.find("evolution.mu") != std::string::npos);

    save_text(w / "blocker", "not a directory");
    r = w.run("optimize --generations 1 --out " + quoted(w / "blocker" / "sub"));
    CHECK(r.status != 0);
    CHECK(r.output.find("error:") != std::string::npos);

    save_text(w / "broken.json", "{\"genome\": [");
    r = w.run("evaluate --design " + quoted(w / "broken.json"));
    CHECK(r.status != 0);
    CHECK(r.output.find("error:") != std::string::npos);

    r = w.run("evaluate --design " + quoted(w / "missing.json"));
    CHECK(r.status != 0);
}
