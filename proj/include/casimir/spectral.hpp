#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "casimir/material.hpp"
#include "casimir/slab_optics.hpp"

// Per-frequency optical kernels of the two-slab cavity, evaluated in batches.
// The scalar backend goes through the std::complex routines of slab_optics;
// the vector backends run a lane-parallel transcription of the same algebra.

namespace casimir {

enum class Backend { scalar, sse2, avx2 };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);
// Best available backend, unless CASIMIR_BACKEND=scalar|sse2|avx2 says otherwise.
Backend default_backend();

struct Cavity {
  Geometry geom;
  Material left;
  Material right;
};

// Real quantities at one frequency. x = |r_L|^2, y = |r_R|^2.
struct SpectralPoint {
  double r2_L, r2_R;
  double t2_L, t2_R;
  double omt2_L, omt2_R;  // 1 - |t|^2
  double emis_L, emis_R;  // slab emissivities
  double inv_den2;        // 1 / |1 - r_L r_R exp(2 i w a)|^2
  double re_rho;          // Re(r_L r_R exp(2 i w a))

  double heat_ic_L() const { return t2_L * (1.0 - r2_R) * inv_den2; }
  double heat_ic_R() const { return t2_R * (1.0 - r2_L) * inv_den2; }
  double heat_bath_L() const { return emis_L * (1.0 - r2_R) * inv_den2; }
  double heat_bath_R() const { return emis_R * (1.0 - r2_L) * inv_den2; }
  double force_ic_L() const { return t2_L * (1.0 + r2_R) * inv_den2; }
  double force_ic_R() const { return t2_R * (1.0 + r2_L) * inv_den2; }
  double force_bath_L() const { return emis_L * (1.0 + r2_R) * inv_den2; }
  double force_bath_R() const { return emis_R * (1.0 + r2_L) * inv_den2; }
  // 1 - force_ic_L, rearranged so that nothing cancels once the plates are transparent.
  double force_ic_deficit_L() const {
    return (r2_L * r2_R - 2.0 * re_rho - r2_R + omt2_L * (1.0 + r2_R)) * inv_den2;
  }
  double force_ic_deficit_R() const {
    return (r2_L * r2_R - 2.0 * re_rho - r2_L + omt2_R * (1.0 + r2_L)) * inv_den2;
  }
  // 1 - force_ic_L - force_bath_L with the same rearrangement.
  double force_vacuum_L() const {
    return (r2_L * r2_R - 2.0 * re_rho - r2_R + (omt2_L - emis_L) * (1.0 + r2_R)) * inv_den2;
  }
  double force_vacuum_R() const {
    return (r2_L * r2_R - 2.0 * re_rho - r2_L + (omt2_R - emis_R) * (1.0 + r2_L)) * inv_den2;
  }
  // Re[rho / (1 - rho)], rho = r_L r_R exp(2 i w a).
  double lifshitz_ratio() const { return (re_rho - r2_L * r2_R) * inv_den2; }
};

struct SpectralBatch {
  std::vector<double> r2_L, r2_R, t2_L, t2_R, omt2_L, omt2_R, emis_L, emis_R, inv_den2, re_rho;

  void resize(std::size_t n);
  std::size_t size() const { return r2_L.size(); }
  SpectralPoint at(std::size_t i) const {
    return {r2_L[i], r2_R[i], t2_L[i], t2_R[i], omt2_L[i], omt2_R[i], emis_L[i], emis_R[i], inv_den2[i], re_rho[i]};
  }
};

// Requires finite plates and omega >= 0.
SpectralPoint spectral_point(const Cavity& c, double omega);
void evaluate_spectral(const Cavity& c, std::span<const double> omega, SpectralBatch& out);
void evaluate_spectral(const Cavity& c, std::span<const double> omega, SpectralBatch& out, Backend b);

namespace detail {
struct LaneInput {
  double a, d_L, d_R;
  double wpl2_L, w02_L, g_L;
  double wpl2_R, w02_R, g_R;
};
struct LaneOutput {
  double *r2_L, *r2_R, *t2_L, *t2_R, *omt2_L, *omt2_R, *emis_L, *emis_R, *inv_den2, *re_rho;
};
void spectral_sse2(const LaneInput& in, const double* omega, std::size_t n, const LaneOutput& out);
void spectral_avx2(const LaneInput& in, const double* omega, std::size_t n, const LaneOutput& out);
}  // namespace detail

}  // namespace casimir
