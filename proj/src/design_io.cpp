#include "magscissor/design_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace magscissor {

using nlohmann::json;

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// Reads `j[key]` as T if present, naming the dotted field on failure.
template <typename T>
void read_opt(const json& j, const char* key, const std::string& path, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(fmt::format("{}{}: wrong type", path, key));
    }
}

double read_number(const json& j, const char* key, const std::string& path, double fallback) {
    double v = fallback;
    read_opt(j, key, path, v);
    if (!std::isfinite(v)) throw ConfigError(fmt::format("{}{}: must be finite", path, key));
    return v;
}

std::size_t read_count(const json& j, const char* key, const std::string& path, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > (1ull << 31)) {
        throw ConfigError(fmt::format("{}{}: expected a non-negative integer", path, key));
    }
    return static_cast<std::size_t>(v.get<std::uint64_t>());
}

const json& object_at(const json& j, const char* key, const std::string& path) {
    static const json empty = json::object();
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_object()) throw ConfigError(fmt::format("{}{}: expected an object", path, key));
    return j.at(key);
}

Vec3 parse_direction(const json& d, const std::string& field) {
    Vec3 v;
    if (d.is_string()) {
        const auto s = d.get<std::string>();
        if (s.size() != 2 || (s[0] != '+' && s[0] != '-')) {
            throw ConfigError(field + ": expected \"+x\", \"-y\", ... or [x, y, z]");
        }
        const double sign = s[0] == '+' ? 1.0 : -1.0;
        if (s[1] == 'x') v = {sign, 0, 0};
        else if (s[1] == 'y') v = {0, sign, 0};
        else if (s[1] == 'z') v = {0, 0, sign};
        else throw ConfigError(field + ": unknown axis");
    } else if (d.is_array() && d.size() == 3 && d[0].is_number() && d[1].is_number() && d[2].is_number()) {
        v = {d[0].get<double>(), d[1].get<double>(), d[2].get<double>()};
    } else {
        throw ConfigError(field + ": expected \"+x\", \"-y\", ... or [x, y, z]");
    }
    const double len = norm(v);
    if (!(len > 0.0) || !std::isfinite(len)) throw ConfigError(field + ": direction must be nonzero");
    return v * (1.0 / len);
}

Polygon parse_polygon_mm(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field + ": expected an array of [x, y] pairs");
    std::vector<Point2> pts;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ConfigError(field + ": expected an array of [x, y] pairs");
        }
        pts.push_back({p[0].get<double>() / 1e3, p[1].get<double>() / 1e3});
    }
    return Polygon(std::move(pts));
}

json polygon_to_json(const Polygon& poly) {
    json arr = json::array();
    for (const auto& v : poly.vertices()) arr.push_back({v.x * 1e3, v.y * 1e3});
    return arr;
}

ScissorGeometry parse_blades(const json& root, ScissorGeometry g) {
    if (!root.contains("blades")) return g;
    const json& blades = root.at("blades");
    if (!blades.is_array() || blades.size() != 2) {
        throw ConfigError("blades: expected exactly two blade entries (A and B)");
    }
    bool seen[2] = {false, false};
    for (std::size_t k = 0; k < blades.size(); ++k) {
        const std::string path = fmt::format("blades[{}].", k);
        const json& b = blades[k];
        if (!b.is_object()) throw ConfigError(path + ": expected an object");
        std::string id = k == 0 ? "A" : "B";
        read_opt(b, "id", path, id);
        const BladeId bid = blade_from_string(id);
        BladeGeometry& dst = bid == BladeId::A ? g.a : g.b;
        seen[bid == BladeId::A ? 0 : 1] = true;
        dst.id = bid;
        if (b.contains("polygon_mm")) dst.region = parse_polygon_mm(b.at("polygon_mm"), path + "polygon_mm");
        read_opt(b, "closing_sign", path, dst.closing_sign);
    }
    if (!seen[0] || !seen[1]) throw ConfigError("blades: both blade A and blade B must be given");
    return g;
}

json blades_to_json(const ScissorGeometry& g) {
    json arr = json::array();
    for (const auto* b : {&g.a, &g.b}) {
        arr.push_back({{"id", to_string(b->id)}, {"polygon_mm", polygon_to_json(b->region)},
                       {"closing_sign", b->closing_sign}});
    }
    return arr;
}

std::vector<BladeId> parse_assignment(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field + ": expected an array of \"A\"/\"B\"");
    std::vector<BladeId> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ConfigError(field + ": expected an array of \"A\"/\"B\"");
        try {
            out.push_back(blade_from_string(e.get<std::string>()));
        } catch (const ConfigError& err) {
            throw ConfigError(field + ": " + err.what());
        }
    }
    return out;
}

json assignment_to_json(const std::vector<BladeId>& a) {
    json arr = json::array();
    for (auto b : a) arr.push_back(to_string(b));
    return arr;
}

json parse_document(const std::string& text, const char* what) {
    try {
        json j = json::parse(text);
        if (!j.is_object()) throw ConfigError(fmt::format("{}: top level must be an object", what));
        return j;
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("{}: malformed JSON: {}", what, e.what()));
    }
}

}  // namespace

void RunConfig::validate() const {
    validate_problem(problem);
    evolution.validate();
    if (!(lever_arm > 0.0)) throw ConfigError("lever_arm_mm must be > 0");
    if (!(baseline_force > 0.0)) throw ConfigError("baseline_force_mN must be > 0");
    if (seeds.empty()) throw ConfigError("seeds must list at least one seed");
}

RunConfig parse_run_config(const std::string& text) {
    const json root = parse_document(text, "config");
    RunConfig c;
    auto& layout = c.problem.layout;
    auto& env = c.problem.env;

    const json& magnet = object_at(root, "magnet", "");
    std::size_t count = read_count(magnet, "count", "magnet.", layout.count());
    if (count < 1 || count > 64) throw ConfigError("magnet.count: must be in [1, 64]");
    if (magnet.contains("blade_assignment")) {
        layout.blade_assignment = parse_assignment(magnet.at("blade_assignment"), "magnet.blade_assignment");
        if (magnet.contains("count") && layout.count() != count) {
            throw ConfigError("magnet.blade_assignment: length differs from magnet.count");
        }
    } else if (count != layout.count()) {
        layout.blade_assignment = default_layout(count).blade_assignment;
    }
    layout.moment_magnitude = read_number(magnet, "moment_Am2", "magnet.", layout.moment_magnitude);
    layout.edge_length = read_number(magnet, "edge_mm", "magnet.", layout.edge_length * 1e3) / 1e3;

    const json& cons = object_at(root, "constraints", "");
    layout.min_separation =
        read_number(cons, "min_separation_mm", "constraints.", layout.min_separation * 1e3) / 1e3;

    const json& field = object_at(root, "field", "");
    if (field.contains("B_mT") || field.contains("direction")) {
        const double b_mT = read_number(field, "B_mT", "field.", 20.0);
        Vec3 dir{0.0, 1.0, 0.0};
        if (field.contains("direction")) dir = parse_direction(field.at("direction"), "field.direction");
        env.applied_field = dir * (b_mT / 1e3);
    }

    const json& spring = object_at(root, "spring", "");
    env.spring_threshold = read_number(spring, "threshold_mNm", "spring.", env.spring_threshold * 1e3) / 1e3;

    const json& penalty = object_at(root, "penalty", "");
    env.penalty_base = read_number(penalty, "base_Nm", "penalty.", env.penalty_base);

    c.lever_arm = read_number(root, "lever_arm_mm", "", c.lever_arm * 1e3) / 1e3;
    c.baseline_force = read_number(root, "baseline_force_mN", "", c.baseline_force * 1e3) / 1e3;
    c.problem.geometry = parse_blades(root, c.problem.geometry);

    const json& evo = object_at(root, "evolution", "");
    auto& e = c.evolution;
    e.population_size = read_count(evo, "mu", "evolution.", e.population_size);
    e.offspring_count = read_count(evo, "lambda", "evolution.", e.offspring_count);
    e.generations = read_count(evo, "generations", "evolution.", e.generations);
    e.crossover_prob = read_number(evo, "cx_prob", "evolution.", e.crossover_prob);
    e.mutation_prob = read_number(evo, "mut_prob", "evolution.", e.mutation_prob);
    e.blend_alpha = read_number(evo, "blend_alpha", "evolution.", e.blend_alpha);
    e.mutation_mean = read_number(evo, "mutation_mean", "evolution.", e.mutation_mean);
    e.sigma_position = read_number(evo, "sigma_pos_mm", "evolution.", e.sigma_position * 1e3) / 1e3;
    e.sigma_angle = read_number(evo, "sigma_angle_rad", "evolution.", e.sigma_angle);
    if (evo.contains("gene_mut_prob")) e.gene_mutation_prob = read_number(evo, "gene_mut_prob", "evolution.", 0.0);
    e.tournament_size = read_count(evo, "tournament", "evolution.", e.tournament_size);
    if (evo.contains("selection")) {
        std::string s;
        read_opt(evo, "selection", "evolution.", s);
        e.selection = selection_from_string(s);
    }
    e.threads = static_cast<unsigned>(read_count(evo, "threads", "evolution.", e.threads));

    if (root.contains("seeds")) {
        const json& seeds = root.at("seeds");
        if (!seeds.is_array()) throw ConfigError("seeds: expected an array of non-negative integers");
        c.seeds.clear();
        for (const auto& sd : seeds) {
            if (!sd.is_number_unsigned()) throw ConfigError("seeds: expected an array of non-negative integers");
            c.seeds.push_back(sd.get<std::uint64_t>());
        }
    }
    std::string out_dir;
    read_opt(root, "output_dir", "", out_dir);
    if (!out_dir.empty()) c.output_dir = out_dir;
    if (!c.seeds.empty()) e.seed = c.seeds.front();

    c.validate();
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(read_text(path)); }

std::string run_config_to_string(const RunConfig& c) {
    const auto& l = c.problem.layout;
    const auto& env = c.problem.env;
    const double b = norm(env.applied_field);
    const Vec3 dir = b > 0.0 ? env.applied_field * (1.0 / b) : Vec3{0, 1, 0};
    const auto& e = c.evolution;
    json evo = {{"mu", e.population_size},
                {"lambda", e.offspring_count},
                {"generations", e.generations},
                {"cx_prob", e.crossover_prob},
                {"mut_prob", e.mutation_prob},
                {"blend_alpha", e.blend_alpha},
                {"mutation_mean", e.mutation_mean},
                {"sigma_pos_mm", e.sigma_position * 1e3},
                {"sigma_angle_rad", e.sigma_angle},
                {"tournament", e.tournament_size},
                {"selection", to_string(e.selection)},
                {"threads", e.threads}};
    if (e.gene_mutation_prob) evo["gene_mut_prob"] = *e.gene_mutation_prob;
    json j = {
        {"magnet",
         {{"count", l.count()},
          {"moment_Am2", l.moment_magnitude},
          {"edge_mm", l.edge_length * 1e3},
          {"blade_assignment", assignment_to_json(l.blade_assignment)}}},
        {"constraints", {{"min_separation_mm", l.min_separation * 1e3}}},
        {"field", {{"B_mT", b * 1e3}, {"direction", {dir.x, dir.y, dir.z}}}},
        {"spring", {{"threshold_mNm", env.spring_threshold * 1e3}}},
        {"penalty", {{"base_Nm", env.penalty_base}}},
        {"lever_arm_mm", c.lever_arm * 1e3},
        {"baseline_force_mN", c.baseline_force * 1e3},
        {"blades", blades_to_json(c.problem.geometry)},
        {"evolution", evo},
        {"seeds", c.seeds},
        {"output_dir", c.output_dir.string()},
    };
    return j.dump(2) + "\n";
}

std::string design_to_string(const DesignFile& d) {
    const auto& l = d.problem.layout;
    const auto& env = d.problem.env;
    if (d.genome.size() != l.genome_length()) {
        throw std::invalid_argument("design genome length does not match the layout");
    }
    json genes = json::array();
    for (std::size_t i = 0; i < l.count(); ++i) {
        const double x = d.genome[3 * i];
        const double y = d.genome[3 * i + 1];
        const double t = d.genome[3 * i + 2];
        genes.push_back({{"blade", to_string(l.blade_assignment[i])},
                         {"x_mm", x * 1e3},
                         {"y_mm", y * 1e3},
                         {"theta_deg", t * kDegPerRad},
                         {"si", {x, y, t}}});
    }
    const Vec3& f = env.applied_field;
    json j = {
        {"layout",
         {{"moment_Am2", l.moment_magnitude},
          {"edge_mm", l.edge_length * 1e3},
          {"min_separation_mm", l.min_separation * 1e3},
          {"blade_assignment", assignment_to_json(l.blade_assignment)}}},
        {"geometry", {{"blades", blades_to_json(d.problem.geometry)}}},
        {"env",
         {{"field_mT", {f.x * 1e3, f.y * 1e3, f.z * 1e3}},
          {"threshold_mNm", env.spring_threshold * 1e3},
          {"penalty_base_Nm", env.penalty_base}}},
        {"lever_arm_mm", d.lever_arm * 1e3},
        {"genome", genes},
    };
    return j.dump(2) + "\n";
}

DesignFile parse_design(const std::string& text) {
    const json root = parse_document(text, "design");
    DesignFile d;
    auto& l = d.problem.layout;
    auto& env = d.problem.env;
    try {
        const json& lj = root.at("layout");
        l.moment_magnitude = lj.at("moment_Am2").get<double>();
        l.edge_length = lj.at("edge_mm").get<double>() / 1e3;
        l.min_separation = lj.at("min_separation_mm").get<double>() / 1e3;
        l.blade_assignment = parse_assignment(lj.at("blade_assignment"), "layout.blade_assignment");

        d.problem.geometry = parse_blades(root.at("geometry"), default_geometry());

        const json& ej = root.at("env");
        const json& fj = ej.at("field_mT");
        if (!fj.is_array() || fj.size() != 3) throw ConfigError("env.field_mT: expected [x, y, z]");
        env.applied_field = {fj[0].get<double>() / 1e3, fj[1].get<double>() / 1e3, fj[2].get<double>() / 1e3};
        env.spring_threshold = ej.at("threshold_mNm").get<double>() / 1e3;
        env.penalty_base = ej.value("penalty_base_Nm", 1.0);
        d.lever_arm = root.value("lever_arm_mm", kDefaultLeverArm * 1e3) / 1e3;

        const json& genes = root.at("genome");
        if (!genes.is_array() || genes.size() != l.count()) {
            throw ConfigError("genome: expected one entry per magnet in layout.blade_assignment");
        }
        for (const auto& gj : genes) {
            const double human[3] = {gj.at("x_mm").get<double>() / 1e3, gj.at("y_mm").get<double>() / 1e3,
                                     gj.at("theta_deg").get<double>() / kDegPerRad};
            for (int k = 0; k < 3; ++k) {
                double v = human[k];
                if (gj.contains("si")) {
                    const double exact = gj.at("si").at(k).get<double>();
                    if (std::abs(exact - v) <= 1e-9 * std::max(1.0, std::abs(exact))) v = exact;
                }
                d.genome.push_back(v);
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("design: missing or mistyped field: {}", e.what()));
    }
    for (double v : d.genome) {
        if (!std::isfinite(v)) throw ConfigError("design: genome values must be finite");
    }
    d.problem.geometry.validate();
    d.problem.env.validate();
    if (l.count() == 0) throw ConfigError("layout.blade_assignment: empty");
    if (!(l.min_separation > 0.0)) throw ConfigError("layout.min_separation_mm must be > 0");
    if (!(l.edge_length > 0.0)) throw ConfigError("layout.edge_mm must be > 0");
    if (!(d.lever_arm > 0.0)) throw ConfigError("lever_arm_mm must be > 0");
    return d;
}

DesignFile load_design(const std::filesystem::path& path) { return parse_design(read_text(path)); }

void save_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace magscissor
