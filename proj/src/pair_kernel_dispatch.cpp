#include <cstdlib>
#include <string_view>

#include "magscissor/magnetics.hpp"
#include "pair_kernels.hpp"

namespace magscissor {

namespace {

bool cpu_has_avx2() {
#if defined(MAGSCISSOR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool force_scalar() {
    const char* v = std::getenv("MAGSCISSOR_FORCE_SCALAR");
    return v != nullptr && std::string_view(v) == "1";
}

KernelIsa detect() {
    if (!force_scalar() && cpu_has_avx2()) return KernelIsa::Avx2;
    return KernelIsa::Scalar;
}

}  // namespace

std::string to_string(KernelIsa isa) {
    switch (isa) {
        case KernelIsa::Scalar: return "scalar";
        case KernelIsa::Avx2: return "avx2";
    }
    return "unknown";
}

std::vector<KernelIsa> available_kernels() {
    std::vector<KernelIsa> out{KernelIsa::Scalar};
    if (cpu_has_avx2()) out.push_back(KernelIsa::Avx2);
    return out;
}

KernelIsa active_kernel() {
    static const KernelIsa isa = detect();
    return isa;
}

void pair_interactions(const DipoleSoA& sources, const DipoleSoA& targets, PairResultSoA& out,
                       KernelIsa isa) {
    const std::size_t n = sources.size();
    if (targets.size() != n) {
        throw std::invalid_argument("pair_interactions: source/target batch sizes differ");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (sources.px[k] == targets.px[k] && sources.py[k] == targets.py[k] &&
            sources.pz[k] == targets.pz[k]) {
            throw DomainError("coincident dipoles");
        }
    }
    out.resize(n);
    switch (isa) {
#if defined(MAGSCISSOR_HAVE_AVX2)
        case KernelIsa::Avx2:
            if (cpu_has_avx2()) {
                detail::pair_kernel_avx2(sources, targets, out, 0, n);
                return;
            }
            throw std::invalid_argument("pair_interactions: AVX2 kernel not supported on this CPU");
#endif
        case KernelIsa::Scalar:
            detail::pair_kernel_scalar(sources, targets, out, 0, n);
            return;
        default:
            throw std::invalid_argument("pair_interactions: kernel not built: " + to_string(isa));
    }
}

void pair_interactions(const DipoleSoA& sources, const DipoleSoA& targets, PairResultSoA& out) {
    pair_interactions(sources, targets, out, active_kernel());
}

}  // namespace magscissor
