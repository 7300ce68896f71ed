#include "pair_kernels.hpp"

namespace magscissor::detail {

void pair_kernel_scalar(const DipoleSoA& src, const DipoleSoA& tgt, PairResultSoA& out,
                        std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
        const LaneOut o = pair_lane(src.px[k], src.py[k], src.pz[k], src.mx[k], src.my[k], src.mz[k],
                                    tgt.px[k], tgt.py[k], tgt.pz[k], tgt.mx[k], tgt.my[k], tgt.mz[k]);
        out.fx[k] = o.fx;
        out.fy[k] = o.fy;
        out.fz[k] = o.fz;
        out.tx[k] = o.tx;
        out.ty[k] = o.ty;
        out.tz[k] = o.tz;
    }
}

}  // namespace magscissor::detail
