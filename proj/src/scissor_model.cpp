#include "magscissor/scissor_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace magscissor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double severity(const std::vector<Violation>& violations, const MagnetLayout& layout,
                const PhysicsEnv& env) {
    // Equilibrium excess is measured against the spring torque; with a zero
    // spring fall back to the pair torque scale at minimum separation.
    const double torque_scale =
        env.spring_threshold > 0.0
            ? env.spring_threshold
            : kMu0Over4Pi * layout.moment_magnitude * layout.moment_magnitude /
                  std::pow(layout.min_separation, 3);
    double s = 0.0;
    for (const auto& v : violations) {
        switch (v.kind) {
            case Violation::Kind::OutOfRegion: s += v.magnitude / layout.edge_length; break;
            case Violation::Kind::TooClose: s += v.magnitude / layout.min_separation; break;
            case Violation::Kind::EquilibriumExceeded: s += v.magnitude / torque_scale; break;
        }
    }
    return s;
}

double torque_bound(const MagnetLayout& layout, const PhysicsEnv& env) {
    const auto& b = env.applied_field;
    const double in_plane = std::hypot(b.x, b.y);
    return env.spring_threshold +
           static_cast<double>(layout.count_on(BladeId::A)) * layout.moment_magnitude * in_plane;
}

}  // namespace

std::string to_string(BladeId b) { return b == BladeId::A ? "A" : "B"; }

BladeId blade_from_string(const std::string& s) {
    if (s == "A" || s == "a") return BladeId::A;
    if (s == "B" || s == "b") return BladeId::B;
    throw ConfigError("unknown blade id '" + s + "' (expected A or B)");
}

std::string to_string(const Violation& v) {
    switch (v.kind) {
        case Violation::Kind::OutOfRegion:
            return fmt::format("OutOfRegion({}) by {:.4g} mm", v.first, v.magnitude * 1e3);
        case Violation::Kind::TooClose:
            return fmt::format("TooClose({},{}) short by {:.4g} mm", v.first, v.second, v.magnitude * 1e3);
        case Violation::Kind::EquilibriumExceeded:
            return fmt::format("EquilibriumExceeded by {:.4g} mN*m", v.magnitude * 1e3);
    }
    return "unknown";
}

void ScissorGeometry::validate() const {
    for (const auto* g : {&a, &b}) {
        const std::string name = "blades[" + to_string(g->id) + "]";
        if (!g->region.is_simple()) {
            throw ConfigError(name + ".polygon_mm must be a simple polygon with >= 3 vertices and nonzero area");
        }
        if (g->closing_sign != 1 && g->closing_sign != -1) {
            throw ConfigError(name + ".closing_sign must be +1 or -1");
        }
    }
    if (a.id != BladeId::A || b.id != BladeId::B) {
        throw ConfigError("blades must list blade A and blade B");
    }
}

std::size_t MagnetLayout::count_on(BladeId b) const {
    return static_cast<std::size_t>(std::count(blade_assignment.begin(), blade_assignment.end(), b));
}

void MagnetLayout::validate() const {
    if (count() < 2) throw ConfigError("magnet.count must be >= 2");
    if (count_on(BladeId::A) == 0 || count_on(BladeId::B) == 0) {
        throw ConfigError("magnet.blade_assignment must place at least one magnet on each blade");
    }
    if (!(moment_magnitude >= 0.0) || !std::isfinite(moment_magnitude)) {
        throw ConfigError("magnet.moment_Am2 must be finite and >= 0");
    }
    if (!(edge_length > 0.0)) throw ConfigError("magnet.edge_mm must be > 0");
    if (!(min_separation >= edge_length)) {
        throw ConfigError("constraints.min_separation_mm must be >= magnet.edge_mm");
    }
}

void PhysicsEnv::validate() const {
    if (!is_finite(applied_field)) throw ConfigError("field must be finite");
    if (!(spring_threshold >= 0.0)) throw ConfigError("spring.threshold_mNm must be >= 0");
    if (!(penalty_base > 0.0)) throw ConfigError("penalty.base_Nm must be > 0");
}

MagnetLayout default_layout(std::size_t n) {
    MagnetLayout l;
    const std::size_t on_a = (n + 1) / 2;
    for (std::size_t i = 0; i < n; ++i) l.blade_assignment.push_back(i < on_a ? BladeId::A : BladeId::B);
    l.moment_magnitude = 3.34e-2;
    l.edge_length = 3.18e-3;
    l.min_separation = 4.77e-3;
    return l;
}

ScissorGeometry default_geometry() {
    ScissorGeometry g;
    g.a = {BladeId::A, make_rectangle(3.0e-3, 0.0, 15.0e-3, 7.5e-3), +1};
    g.b = {BladeId::B, make_rectangle(3.0e-3, -7.5e-3, 15.0e-3, 0.0), -1};
    return g;
}

PhysicsEnv default_env() { return {{0.0, 20e-3, 0.0}, 0.9e-3, 1.0}; }

Problem default_problem(std::size_t n) { return {default_layout(n), default_geometry(), default_env()}; }

double wrap_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

ScissorDesign decode_genome(std::span<const double> genome, const MagnetLayout& layout) {
    if (genome.size() != layout.genome_length()) {
        throw std::invalid_argument(fmt::format("genome length {} does not match 3 x {} magnets",
                                                genome.size(), layout.count()));
    }
    ScissorDesign d;
    d.magnets.reserve(layout.count());
    const double m = layout.moment_magnitude;
    for (std::size_t i = 0; i < layout.count(); ++i) {
        const double x = genome[3 * i];
        const double y = genome[3 * i + 1];
        const double theta = genome[3 * i + 2];
        const double w = wrap_angle(theta);
        Magnet mg;
        mg.dipole = {{x, y, 0.0}, {m * std::cos(w), m * std::sin(w), 0.0}};
        mg.blade = layout.blade_assignment[i];
        mg.angle = theta;
        d.magnets.push_back(mg);
    }
    return d;
}

Genome encode_design(const ScissorDesign& design) {
    Genome g;
    g.reserve(3 * design.magnets.size());
    for (const auto& m : design.magnets) {
        g.push_back(m.dipole.position.x);
        g.push_back(m.dipole.position.y);
        g.push_back(wrap_angle(m.angle));
    }
    return g;
}

std::vector<Violation> check_feasibility(const ScissorDesign& design, const ScissorGeometry& geometry,
                                         const MagnetLayout& layout) {
    std::vector<Violation> out;
    const auto& mags = design.magnets;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        const auto& p = mags[i].dipole.position;
        const double d = geometry.blade(mags[i].blade).region.outside_distance({p.x, p.y});
        if (d > 0.0) out.push_back({Violation::Kind::OutOfRegion, static_cast<int>(i), -1, d});
    }
    for (std::size_t i = 0; i < mags.size(); ++i) {
        for (std::size_t j = i + 1; j < mags.size(); ++j) {
            const double dist = norm(mags[j].dipole.position - mags[i].dipole.position);
            if (dist < layout.min_separation) {
                out.push_back({Violation::Kind::TooClose, static_cast<int>(i), static_cast<int>(j),
                               layout.min_separation - dist});
            }
        }
    }
    return out;
}

BladeTorque blade_net_torque(const ScissorDesign& design, const PhysicsEnv& env, BladeId blade) {
    const auto& mags = design.magnets;
    DipoleSoA sources;
    DipoleSoA targets;
    std::vector<std::size_t> on_blade;
    std::vector<std::size_t> across;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        (mags[i].blade == blade ? on_blade : across).push_back(i);
    }
    sources.reserve(on_blade.size() * across.size());
    targets.reserve(on_blade.size() * across.size());
    for (std::size_t i : on_blade) {
        for (std::size_t j : across) {
            sources.push_back(mags[j].dipole);
            targets.push_back(mags[i].dipole);
        }
    }
    PairResultSoA pairs;
    pair_interactions(sources, targets, pairs);

    BladeTorque out;
    out.terms.reserve(on_blade.size());
    std::size_t lane = 0;
    for (std::size_t i : on_blade) {
        Vec3 force;
        Vec3 torque;
        for (std::size_t k = 0; k < across.size(); ++k, ++lane) {
            force += pairs.force(lane);
            torque += pairs.torque(lane);
        }
        const Dipole& d = mags[i].dipole;
        TorqueTerms t;
        t.magnet = i;
        t.lever = lever_torque(d.position - design.pivot, force).z;
        t.interaction = torque.z;
        t.field = field_torque(d.moment, env.applied_field).z;
        out.zero_field += t.lever + t.interaction;
        out.net += t.lever + t.interaction + t.field;
        out.terms.push_back(t);
    }
    return out;
}

double zero_field_torque(const ScissorDesign& design, BladeId blade) {
    PhysicsEnv env;
    env.applied_field = {};
    return blade_net_torque(design, env, blade).zero_field;
}

double feasible_torque_bound(const Problem& p) { return torque_bound(p.layout, p.env); }

void validate_problem(const Problem& p) {
    p.layout.validate();
    p.geometry.validate();
    p.env.validate();
    const double bound = feasible_torque_bound(p);
    if (!(p.env.penalty_base > 2.0 * bound)) {
        throw ConfigError(fmt::format(
            "penalty.base_Nm = {} must exceed twice the feasible torque bound ({} N*m)",
            p.env.penalty_base, 2.0 * bound));
    }
}

FitnessReport fitness(std::span<const double> genome, const MagnetLayout& layout,
                      const ScissorGeometry& geometry, const PhysicsEnv& env) {
    const ScissorDesign design = decode_genome(genome, layout);
    const int sign = geometry.a.closing_sign;

    FitnessReport r;
    r.violations = check_feasibility(design, geometry, layout);

    bool torque_defined = true;
    try {
        BladeTorque bt = blade_net_torque(design, env, BladeId::A);
        r.net_torque = bt.net;
        r.zero_field_torque = bt.zero_field;
        r.terms = std::move(bt.terms);
        torque_defined = std::isfinite(r.net_torque) && std::isfinite(r.zero_field_torque);
    } catch (const DomainError&) {
        torque_defined = false;
    }
    if (!torque_defined) {
        // Coincident or near-coincident magnets; already flagged as TooClose
        // unless min_separation is degenerate.
        r.net_torque = 0.0;
        r.zero_field_torque = 0.0;
        r.terms.clear();
        if (std::none_of(r.violations.begin(), r.violations.end(),
                         [](const Violation& v) { return v.kind == Violation::Kind::TooClose; })) {
            r.violations.push_back({Violation::Kind::TooClose, -1, -1, layout.min_separation});
        }
    } else if (std::abs(r.zero_field_torque) > env.spring_threshold) {
        r.violations.push_back({Violation::Kind::EquilibriumExceeded, -1, -1,
                                std::abs(r.zero_field_torque) - env.spring_threshold});
    }

    const double raw = sign * r.net_torque;
    if (r.violations.empty()) {
        r.fitness = raw;
        return r;
    }
    // Clamp so a penalized design can never outrank a feasible one, however
    // large its (unphysical) interaction torque is.
    const double bound = torque_bound(layout, env);
    r.penalty = env.penalty_base + severity(r.violations, layout, env);
    r.fitness = std::clamp(raw, -bound, bound) - r.penalty;
    return r;
}

CuttingForce cutting_force(double tau_max, double spring_threshold, double lever_arm) {
    if (!(lever_arm > 0.0)) throw std::invalid_argument("cutting_force: lever_arm must be > 0");
    CuttingForce c;
    c.tau_final = tau_max - spring_threshold;
    c.force = c.tau_final / lever_arm;
    return c;
}

}  // namespace magscissor
