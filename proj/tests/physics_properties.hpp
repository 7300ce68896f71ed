#pragma once

// Randomized invariant checks for the dipole kernel, shared by the unit
// tests and the acceptance suite. Each returns the worst relative error seen.
// Errors are measured against the natural magnitude of the pair
// (3 mu0 |m1||m2| / (4 pi r^4) for forces, mu0 |m1||m2| / (4 pi r^3) for
// torques) so near-cancelling samples do not inflate the ratio.

#include <algorithm>
#include <cstddef>
#include <random>

#include "magscissor/magnetics.hpp"
#include "physics_oracles.hpp"

namespace props {

using magscissor::cross;
using magscissor::Dipole;
using magscissor::norm;
using magscissor::Vec3;

struct Scales {
    double force;
    double torque;
};

inline Scales pair_scales(const Dipole& a, const Dipole& b) {
    const double r = norm(b.position - a.position);
    const double mm = norm(a.moment) * norm(b.moment);
    return {3.0 * magscissor::kMu0Over4Pi * mm / std::pow(r, 4), magscissor::kMu0Over4Pi * mm / std::pow(r, 3)};
}

inline std::pair<Dipole, Dipole> random_pair(std::mt19937_64& rng) {
    // mm-scale positions, moments near the scissor magnets
    for (;;) {
        auto a = oracle::random_dipole(rng, 10e-3, 5e-2);
        auto b = oracle::random_dipole(rng, 10e-3, 5e-2);
        if (norm(b.position - a.position) > 1e-4) return {a, b};
    }
}

inline double newton_third_law(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto [a, b] = random_pair(rng);
        const Vec3 sum = magscissor::dipole_force(a, b) + magscissor::dipole_force(b, a);
        worst = std::max(worst, norm(sum) / pair_scales(a, b).force);
    }
    return worst;
}

inline double angular_momentum_balance(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ref(-20e-3, 20e-3);
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto [a, b] = random_pair(rng);
        const Vec3 p{ref(rng), ref(rng), ref(rng)};
        const Vec3 fa = magscissor::dipole_force(b, a);
        const Vec3 fb = magscissor::dipole_force(a, b);
        const Vec3 ta = magscissor::interaction_torque(b, a);
        const Vec3 tb = magscissor::interaction_torque(a, b);
        const Vec3 la = cross(a.position - p, fa);
        const Vec3 lb = cross(b.position - p, fb);
        const double scale = norm(la) + norm(lb) + norm(ta) + norm(tb);
        if (scale == 0.0) continue;
        worst = std::max(worst, norm(la + lb + ta + tb) / scale);
    }
    return worst;
}

/// Worst error of F(s r) s^4 = F(r) and tau(s r) s^3 = tau(r).
inline double scaling_laws(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> sdist(0.25, 4.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto [a, b] = random_pair(rng);
        const double s = sdist(rng);
        const Dipole bs{a.position + (b.position - a.position) * s, b.moment};
        const Scales sc = pair_scales(a, b);
        const Vec3 f = magscissor::dipole_force(a, b);
        const Vec3 fs = magscissor::dipole_force(a, bs) * std::pow(s, 4);
        const Vec3 t = magscissor::interaction_torque(a, b);
        const Vec3 ts = magscissor::interaction_torque(a, bs) * std::pow(s, 3);
        worst = std::max({worst, norm(fs - f) / sc.force, norm(ts - t) / sc.torque});
    }
    return worst;
}

inline double rotation_equivariance(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto [a, b] = random_pair(rng);
        const auto rot = oracle::random_rotation(rng);
        const Dipole ra{rot.apply(a.position), rot.apply(a.moment)};
        const Dipole rb{rot.apply(b.position), rot.apply(b.moment)};
        const Scales sc = pair_scales(a, b);
        const Vec3 f = rot.apply(magscissor::dipole_force(a, b));
        const Vec3 t = rot.apply(magscissor::interaction_torque(a, b));
        worst = std::max({worst, norm(magscissor::dipole_force(ra, rb) - f) / sc.force,
                          norm(magscissor::interaction_torque(ra, rb) - t) / sc.torque});
    }
    return worst;
}

}  // namespace props
