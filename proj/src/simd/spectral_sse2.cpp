#include <cstddef>
#include <experimental/simd>

#include "casimir/spectral.hpp"

namespace casimir::detail::sse2_lanes {
#include "lane_kernel.hpp"
}

namespace casimir::detail {

void spectral_sse2(const LaneInput& in, const double* omega, std::size_t n, const LaneOutput& out) {
  sse2_lanes::spectral_lanes<sse2_lanes::stdx::native_simd<double>>(in, omega, n, out);
}

}  // namespace casimir::detail
