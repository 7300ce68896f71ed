#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "magscissor/geometry.hpp"
#include "magscissor/magnetics.hpp"

namespace magscissor {

/// Raised when a configuration cannot describe a usable problem.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BladeId { A, B };

inline BladeId other(BladeId b) { return b == BladeId::A ? BladeId::B : BladeId::A; }
std::string to_string(BladeId b);
BladeId blade_from_string(const std::string& s);

struct BladeGeometry {
    BladeId id = BladeId::A;
    Polygon region;     // device frame, m
    int closing_sign = 1;  // sign of the z-torque that closes this blade
};

struct ScissorGeometry {
    BladeGeometry a;
    BladeGeometry b;

    const BladeGeometry& blade(BladeId id) const { return id == BladeId::A ? a : b; }
    void validate() const;
};

struct MagnetLayout {
    std::vector<BladeId> blade_assignment;
    double moment_magnitude = 0.0;  // A*m^2
    double edge_length = 0.0;       // m
    double min_separation = 0.0;    // m

    std::size_t count() const { return blade_assignment.size(); }
    std::size_t count_on(BladeId b) const;
    std::size_t genome_length() const { return 3 * count(); }

    /// n >= 2, a magnet on each blade, min_separation >= edge_length > 0.
    void validate() const;
};

struct PhysicsEnv {
    Vec3 applied_field;             // T
    double spring_threshold = 0.0;  // |k p0|, N*m
    double penalty_base = 1.0;      // fitness units (N*m)

    void validate() const;
};

struct Problem {
    MagnetLayout layout;
    ScissorGeometry geometry;
    PhysicsEnv env;
};

/// Flat <x1, y1, theta1, ..., xn, yn, thetan>, metres and radians.
using Genome = std::vector<double>;

struct Magnet {
    Dipole dipole;
    BladeId blade = BladeId::A;
    double angle = 0.0;  // rad, as stored in the genome
};

struct ScissorDesign {
    std::vector<Magnet> magnets;
    Vec3 pivot;
};

struct Violation {
    enum class Kind { OutOfRegion, TooClose, EquilibriumExceeded };
    Kind kind;
    int first = -1;          // magnet index (OutOfRegion, TooClose)
    int second = -1;         // second magnet (TooClose)
    double magnitude = 0.0;  // distance outside (m), separation deficit (m) or torque excess (N*m)

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(const Violation& v);

/// z-components of the three torque contributions acting on one magnet.
struct TorqueTerms {
    std::size_t magnet = 0;
    double lever = 0.0;
    double interaction = 0.0;
    double field = 0.0;
};

struct BladeTorque {
    double net = 0.0;          // z, device frame (not closing-signed)
    double zero_field = 0.0;   // same sum without the field terms
    std::vector<TorqueTerms> terms;
};

struct FitnessReport {
    double fitness = 0.0;
    double net_torque = 0.0;   // z on the evaluated blade
    double zero_field_torque = 0.0;
    double penalty = 0.0;      // amount subtracted (0 when feasible)
    std::vector<TorqueTerms> terms;
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
};

struct CuttingForce {
    double tau_final = 0.0;  // N*m
    double force = 0.0;      // N
};

// Defaults: 4 magnets (2 per blade), 3.34e-2 A*m^2 moment, 3.18 mm cube,
// 4.77 mm minimum separation, 20 mT along +y, 0.9 mN*m spring torque.
MagnetLayout default_layout(std::size_t n = 4);
ScissorGeometry default_geometry();
PhysicsEnv default_env();
Problem default_problem(std::size_t n = 4);
inline constexpr double kDefaultLeverArm = 79.3e-3;  // m
inline constexpr double kBaselineCuttingForce = 35e-3;  // N, original two-magnet design

ScissorDesign decode_genome(std::span<const double> genome, const MagnetLayout& layout);

/// Inverse of decode_genome; angles wrapped into [0, 2 pi).
Genome encode_design(const ScissorDesign& design);

double wrap_angle(double theta);

std::vector<Violation> check_feasibility(const ScissorDesign& design, const ScissorGeometry& geometry,
                                         const MagnetLayout& layout);

/// Net z-torque on `blade` about the pivot. Only magnets on the other blade
/// contribute force and interaction torque. Throws DomainError on coincident
/// cross-blade magnets.
BladeTorque blade_net_torque(const ScissorDesign& design, const PhysicsEnv& env, BladeId blade);

double zero_field_torque(const ScissorDesign& design, BladeId blade);

/// Upper bound on |fitness| of any feasible design: spring threshold plus the
/// largest field torque the evaluated blade's magnets can produce.
double feasible_torque_bound(const Problem& problem);

/// Checks every sub-config plus penalty dominance (penalty_base > 2 * bound).
void validate_problem(const Problem& problem);

/// Penalized closing torque on blade A.
FitnessReport fitness(std::span<const double> genome, const MagnetLayout& layout,
                      const ScissorGeometry& geometry, const PhysicsEnv& env);

inline FitnessReport fitness(std::span<const double> genome, const Problem& p) {
    return fitness(genome, p.layout, p.geometry, p.env);
}

CuttingForce cutting_force(double tau_max, double spring_threshold, double lever_arm);

}  // namespace magscissor
