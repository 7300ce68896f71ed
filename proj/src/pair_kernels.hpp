#pragma once

// Internal pair-kernel entry points. Each variant fills lanes [begin, end).

#include <cmath>
#include <cstddef>

#include "magscissor/magnetics.hpp"

namespace magscissor::detail {

inline constexpr double kForcePrefactor = 3.0 * kMu0Over4Pi;
inline constexpr double kTorquePrefactor = kMu0Over4Pi;

struct LaneOut {
    double fx, fy, fz, tx, ty, tz;
};

// Reference arithmetic for one pair. The AVX2 kernel performs exactly these
// operations in exactly this order; keep them in sync.
inline LaneOut pair_lane(double spx, double spy, double spz, double smx, double smy, double smz,
                         double tpx, double tpy, double tpz, double tmx, double tmy, double tmz) {
    const double rx = tpx - spx;
    const double ry = tpy - spy;
    const double rz = tpz - spz;
    const double r2 = rx * rx + ry * ry + rz * rz;
    const double r = std::sqrt(r2);
    const double r5 = r2 * r2 * r;

    const double mir = smx * rx + smy * ry + smz * rz;
    const double mjr = tmx * rx + tmy * ry + tmz * rz;
    const double mij = smx * tmx + smy * tmy + smz * tmz;

    const double cf = kForcePrefactor / r5;
    const double s = 5.0 * mir * mjr / r2;

    LaneOut o;
    o.fx = cf * (mir * tmx + mjr * smx + mij * rx - s * rx);
    o.fy = cf * (mir * tmy + mjr * smy + mij * ry - s * ry);
    o.fz = cf * (mir * tmz + mjr * smz + mij * rz - s * rz);

    // 3 (m_j x r)(m_i . r) - r^2 (m_j x m_i)
    const double ct = kTorquePrefactor / r5;
    const double a = 3.0 * mir;
    const double jrx = tmy * rz - tmz * ry;
    const double jry = tmz * rx - tmx * rz;
    const double jrz = tmx * ry - tmy * rx;
    const double jix = tmy * smz - tmz * smy;
    const double jiy = tmz * smx - tmx * smz;
    const double jiz = tmx * smy - tmy * smx;
    o.tx = ct * (a * jrx - r2 * jix);
    o.ty = ct * (a * jry - r2 * jiy);
    o.tz = ct * (a * jrz - r2 * jiz);
    return o;
}

void pair_kernel_scalar(const DipoleSoA& src, const DipoleSoA& tgt, PairResultSoA& out,
                        std::size_t begin, std::size_t end);

#if defined(MAGSCISSOR_HAVE_AVX2)
void pair_kernel_avx2(const DipoleSoA& src, const DipoleSoA& tgt, PairResultSoA& out,
                      std::size_t begin, std::size_t end);
#endif

}  // namespace magscissor::detail
