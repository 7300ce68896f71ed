#pragma once

#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "magscissor/vec3.hpp"

namespace magscissor {

/// Vacuum permeability, T*m/A.
inline constexpr double kMu0 = 4.0 * std::numbers::pi * 1e-7;
/// mu0 / (4 pi), the prefactor shared by every dipole expression.
inline constexpr double kMu0Over4Pi = kMu0 / (4.0 * std::numbers::pi);

/// Thrown for physically undefined inputs (e.g. coincident dipoles).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Point magnetic dipole. Position in m, moment in A*m^2.
struct Dipole {
    Vec3 position;
    Vec3 moment;
};

/// Force on `target` exerted by `source` (N). The separation vector runs
/// from source to target.
Vec3 dipole_force(const Dipole& source, const Dipole& target);

/// Torque on `target` about its own center due to the field of `source` (N*m).
Vec3 interaction_torque(const Dipole& source, const Dipole& target);

/// moment x field.
constexpr Vec3 field_torque(const Vec3& moment, const Vec3& field) { return cross(moment, field); }

/// arm x force, with `arm` running from the pivot to the point of application.
constexpr Vec3 lever_torque(const Vec3& arm, const Vec3& force) { return cross(arm, force); }

// ---------------------------------------------------------------------------
// Batched pair evaluation
//
// Structure-of-arrays layout: lane k pairs sources[k] with targets[k]. The
// scalar kernel is the reference; SIMD variants must reproduce it bit for bit
// (same operation order, no fused multiply-add).

struct DipoleSoA {
    std::vector<double> px, py, pz;
    std::vector<double> mx, my, mz;

    std::size_t size() const { return px.size(); }
    void reserve(std::size_t n);
    void clear();
    void push_back(const Dipole& d);
    Dipole at(std::size_t k) const;
};

struct PairResultSoA {
    std::vector<double> fx, fy, fz;  // force on target
    std::vector<double> tx, ty, tz;  // interaction torque on target

    std::size_t size() const { return fx.size(); }
    void resize(std::size_t n);
    Vec3 force(std::size_t k) const { return {fx[k], fy[k], fz[k]}; }
    Vec3 torque(std::size_t k) const { return {tx[k], ty[k], tz[k]}; }
};

enum class KernelIsa { Scalar, Avx2 };

std::string to_string(KernelIsa isa);

/// Kernels compiled into this build and usable on this CPU, scalar first.
std::vector<KernelIsa> available_kernels();

/// Best available kernel on this CPU. Honors MAGSCISSOR_FORCE_SCALAR=1.
KernelIsa active_kernel();

/// Evaluates every lane with the requested kernel. Throws DomainError if any
/// lane has coincident positions; `out` is resized to the batch size.
void pair_interactions(const DipoleSoA& sources, const DipoleSoA& targets, PairResultSoA& out,
                       KernelIsa isa);

/// Same, using active_kernel().
void pair_interactions(const DipoleSoA& sources, const DipoleSoA& targets, PairResultSoA& out);

}  // namespace magscissor
