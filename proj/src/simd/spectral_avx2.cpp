#include <cstddef>
#include <experimental/simd>

#include "casimir/spectral.hpp"

namespace casimir::detail::avx2_lanes {
#include "lane_kernel.hpp"
}

namespace casimir::detail {

void spectral_avx2(const LaneInput& in, const double* omega, std::size_t n, const LaneOutput& out) {
  avx2_lanes::spectral_lanes<avx2_lanes::stdx::native_simd<double>>(in, omega, n, out);
}

}  // namespace casimir::detail
