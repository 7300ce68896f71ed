// Compiled with -mavx2 only. Only reached after a runtime CPU check.

#include <immintrin.h>

#include "pair_kernels.hpp"

namespace magscissor::detail {

namespace {

inline __m256d dot3(__m256d ax, __m256d ay, __m256d az, __m256d bx, __m256d by, __m256d bz) {
    return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ax, bx), _mm256_mul_pd(ay, by)),
                         _mm256_mul_pd(az, bz));
}

// a*b - c*d
inline __m256d msub(__m256d a, __m256d b, __m256d c, __m256d d) {
    return _mm256_sub_pd(_mm256_mul_pd(a, b), _mm256_mul_pd(c, d));
}

// cf * (mir*tm + mjr*sm + mij*r - s*r), evaluated left to right
inline __m256d force_component(__m256d cf, __m256d mir, __m256d tm, __m256d mjr, __m256d sm,
                               __m256d mij, __m256d r, __m256d s) {
    __m256d acc = _mm256_add_pd(_mm256_mul_pd(mir, tm), _mm256_mul_pd(mjr, sm));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(mij, r));
    acc = _mm256_sub_pd(acc, _mm256_mul_pd(s, r));
    return _mm256_mul_pd(cf, acc);
}

}  // namespace

void pair_kernel_avx2(const DipoleSoA& src, const DipoleSoA& tgt, PairResultSoA& out,
                      std::size_t begin, std::size_t end) {
    const __m256d kf = _mm256_set1_pd(kForcePrefactor);
    const __m256d kt = _mm256_set1_pd(kTorquePrefactor);
    const __m256d three = _mm256_set1_pd(3.0);
    const __m256d five = _mm256_set1_pd(5.0);

    std::size_t k = begin;
    for (; k + 4 <= end; k += 4) {
        const __m256d spx = _mm256_loadu_pd(&src.px[k]);
        const __m256d spy = _mm256_loadu_pd(&src.py[k]);
        const __m256d spz = _mm256_loadu_pd(&src.pz[k]);
        const __m256d smx = _mm256_loadu_pd(&src.mx[k]);
        const __m256d smy = _mm256_loadu_pd(&src.my[k]);
        const __m256d smz = _mm256_loadu_pd(&src.mz[k]);
        const __m256d tpx = _mm256_loadu_pd(&tgt.px[k]);
        const __m256d tpy = _mm256_loadu_pd(&tgt.py[k]);
        const __m256d tpz = _mm256_loadu_pd(&tgt.pz[k]);
        const __m256d tmx = _mm256_loadu_pd(&tgt.mx[k]);
        const __m256d tmy = _mm256_loadu_pd(&tgt.my[k]);
        const __m256d tmz = _mm256_loadu_pd(&tgt.mz[k]);

        const __m256d rx = _mm256_sub_pd(tpx, spx);
        const __m256d ry = _mm256_sub_pd(tpy, spy);
        const __m256d rz = _mm256_sub_pd(tpz, spz);
        const __m256d r2 = dot3(rx, ry, rz, rx, ry, rz);
        const __m256d r = _mm256_sqrt_pd(r2);
        const __m256d r5 = _mm256_mul_pd(_mm256_mul_pd(r2, r2), r);

        const __m256d mir = dot3(smx, smy, smz, rx, ry, rz);
        const __m256d mjr = dot3(tmx, tmy, tmz, rx, ry, rz);
        const __m256d mij = dot3(smx, smy, smz, tmx, tmy, tmz);

        const __m256d cf = _mm256_div_pd(kf, r5);
        const __m256d s = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(five, mir), mjr), r2);

        _mm256_storeu_pd(&out.fx[k], force_component(cf, mir, tmx, mjr, smx, mij, rx, s));
        _mm256_storeu_pd(&out.fy[k], force_component(cf, mir, tmy, mjr, smy, mij, ry, s));
        _mm256_storeu_pd(&out.fz[k], force_component(cf, mir, tmz, mjr, smz, mij, rz, s));

        const __m256d ct = _mm256_div_pd(kt, r5);
        const __m256d a = _mm256_mul_pd(three, mir);
        const __m256d jrx = msub(tmy, rz, tmz, ry);
        const __m256d jry = msub(tmz, rx, tmx, rz);
        const __m256d jrz = msub(tmx, ry, tmy, rx);
        const __m256d jix = msub(tmy, smz, tmz, smy);
        const __m256d jiy = msub(tmz, smx, tmx, smz);
        const __m256d jiz = msub(tmx, smy, tmy, smx);
        _mm256_storeu_pd(&out.tx[k], _mm256_mul_pd(ct, msub(a, jrx, r2, jix)));
        _mm256_storeu_pd(&out.ty[k], _mm256_mul_pd(ct, msub(a, jry, r2, jiy)));
        _mm256_storeu_pd(&out.tz[k], _mm256_mul_pd(ct, msub(a, jrz, r2, jiz)));
    }
    pair_kernel_scalar(src, tgt, out, k, end);
}

}  // namespace magscissor::detail
