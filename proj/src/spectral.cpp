#include "casimir/spectral.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace casimir {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void check_cavity(const Cavity& c) {
  validate(c.geom);
  if (!c.geom.finite()) throw std::invalid_argument("spectral kernels need finite plates");
  validate(c.left);
  validate(c.right);
}

Backend resolve_default() {
  if (const char* env = std::getenv("CASIMIR_BACKEND")) {
    const std::string v(env);
    for (Backend b : {Backend::scalar, Backend::sse2, Backend::avx2})
      if (v == backend_name(b) && backend_available(b)) return b;
  }
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::sse2;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::sse2: return "sse2";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
    case Backend::sse2: return true;
    case Backend::avx2: {
      static const bool ok = cpu_has_avx2();
      return ok;
    }
  }
  return false;
}

Backend default_backend() {
  static const Backend b = resolve_default();
  return b;
}

void SpectralBatch::resize(std::size_t n) {
  for (auto* v : {&r2_L, &r2_R, &t2_L, &t2_R, &omt2_L, &omt2_R, &emis_L, &emis_R, &inv_den2, &re_rho}) v->resize(n);
}

SpectralPoint spectral_point(const Cavity& c, double omega) {
  const complex nL = refractive_index(c.left, omega);
  const complex nR = refractive_index(c.right, omega);
  const SlabCoefficients sL = slab_coefficients(nL, c.geom.d_L, omega);
  const SlabCoefficients sR = slab_coefficients(nR, c.geom.d_R, omega);
  const SlabTransmittance tL = slab_transmittance(nL, c.geom.d_L, omega);
  const SlabTransmittance tR = slab_transmittance(nR, c.geom.d_R, omega);
  const complex rho = sL.r * sR.r * unit_phase(2.0 * c.geom.a, omega);
  SpectralPoint p;
  p.r2_L = std::norm(sL.r);
  p.r2_R = std::norm(sR.r);
  p.t2_L = tL.t2;
  p.t2_R = tR.t2;
  p.omt2_L = tL.one_minus_t2;
  p.omt2_R = tR.one_minus_t2;
  p.emis_L = slab_emissivity(nL, c.geom.d_L, omega);
  p.emis_R = slab_emissivity(nR, c.geom.d_R, omega);
  p.inv_den2 = 1.0 / std::norm(1.0 - rho);
  p.re_rho = rho.real();
  return p;
}

void evaluate_spectral(const Cavity& c, std::span<const double> omega, SpectralBatch& out) {
  evaluate_spectral(c, omega, out, default_backend());
}

void evaluate_spectral(const Cavity& c, std::span<const double> omega, SpectralBatch& out, Backend b) {
  check_cavity(c);
  for (double w : omega)
    if (!(w >= 0.0)) throw std::domain_error("spectral kernels: negative frequency");
  out.resize(omega.size());
  if (b == Backend::scalar) {
    for (std::size_t i = 0; i < omega.size(); ++i) {
      const SpectralPoint p = spectral_point(c, omega[i]);
      out.r2_L[i] = p.r2_L;
      out.r2_R[i] = p.r2_R;
      out.t2_L[i] = p.t2_L;
      out.t2_R[i] = p.t2_R;
      out.omt2_L[i] = p.omt2_L;
      out.omt2_R[i] = p.omt2_R;
      out.emis_L[i] = p.emis_L;
      out.emis_R[i] = p.emis_R;
      out.inv_den2[i] = p.inv_den2;
      out.re_rho[i] = p.re_rho;
    }
    return;
  }
  if (!backend_available(b)) throw std::runtime_error("spectral backend not available on this CPU");
  const detail::LaneInput in{c.geom.a,
                             c.geom.d_L,
                             c.geom.d_R,
                             c.left.omega_pl * c.left.omega_pl,
                             c.left.omega_0 * c.left.omega_0,
                             c.left.gamma,
                             c.right.omega_pl * c.right.omega_pl,
                             c.right.omega_0 * c.right.omega_0,
                             c.right.gamma};
  const detail::LaneOutput o{out.r2_L.data(),   out.r2_R.data(),   out.t2_L.data(),   out.t2_R.data(),
                             out.omt2_L.data(), out.omt2_R.data(), out.emis_L.data(), out.emis_R.data(),
                             out.inv_den2.data(), out.re_rho.data()};
  if (b == Backend::avx2)
    detail::spectral_avx2(in, omega.data(), omega.size(), o);
  else
    detail::spectral_sse2(in, omega.data(), omega.size(), o);
}

}  // namespace casimir
