#pragma once

#include <limits>

#include "casimir/material.hpp"

// Scattering coefficients of a single slab and of the two-slab cavity.
// Everything is evaluated on the real axis through s = -i omega, so that
// exp(-2 s n d) = exp(2 i omega n d) decays for Im(n) > 0.

namespace casimir {

inline constexpr double infinite_thickness = std::numeric_limits<double>::infinity();

struct Geometry {
  double a = 0.0;
  double d_L = 0.0;
  double d_R = 0.0;

  bool finite() const noexcept;
  bool operator==(const Geometry&) const = default;
};

// Throws std::invalid_argument unless a > 0 and d_L, d_R >= 0 (infinity allowed).
void validate(const Geometry& g);

// (1 - n) / (1 + n). Throws std::domain_error for n = -1.
complex interface_reflection(complex n);

// scale * omega reduced to [-pi, pi] with an absolute error of a few ulp of pi,
// independent of the size of the product.
double reduced_phase(double scale, double omega);
// exp(i scale omega) from the reduced phase.
complex unit_phase(double scale, double omega);

struct SlabCoefficients {
  complex r;
  complex t;
};

// Slab of index n and finite thickness d >= 0 in vacuum, at omega >= 0.
SlabCoefficients slab_coefficients(complex n, double d, double omega);

// Power transmission of a slab, split so that no factor overflows:
//   t2 = |t|^2, one_minus_t2 = 1 - |t|^2 (without cancellation),
//   tau2 = |t|^2 exp(2 omega Im(n) d), which stays O(1) for any d.
struct SlabTransmittance {
  double t2;
  double one_minus_t2;
  double tau2;
};
SlabTransmittance slab_transmittance(complex n, double d, double omega);

// Emissivity of the slab obtained from the internal mode amplitudes E, F
// (volume integral of the source over the slab). Equals 1 - |r|^2 - |t|^2.
double slab_emissivity(complex n, double d, double omega);

struct CoefficientSet {
  complex n_L, n_R;
  complex r_L, t_L, r_R, t_R;
  complex T_cav;
  complex C_gt, D_gt, E_gt, F_gt;
  complex C_lt, D_lt, E_lt, F_lt;
  complex denom;

  // tau2 of each slab, see SlabTransmittance.
  double tau2_L = 0.0, tau2_R = 0.0;

  // Bracket of the bath pressure kernel, already divided by |t| of the
  // opposite slab and multiplied by Re(n):
  //   Re(n_L)/|t_R|^2 (|E<|^2 e^{-k_L a}[1-e^{-2 k_L d_L}]
  //                    + |F<|^2 e^{k_L a}[e^{2 k_L d_L}-1]
  //                    + 2 Im(n_L)/Re(n_L) Im[E<* F< e^{-i w Re(n_L) a}(1-e^{-2i w Re(n_L) d_L})])
  // with k_L = omega Im(n_L). bath_weight_gt is the mirror image.
  // Zero when the slab is lossless.
  double bath_weight_lt = 0.0;
  double bath_weight_gt = 0.0;
};

// Requires finite thicknesses and omega >= 0. Throws std::invalid_argument for
// infinite plates and std::runtime_error naming the coefficient if anything
// non-finite appears.
CoefficientSet cavity_coefficients(const Geometry& g, complex n_L, complex n_R, double omega);

}  // namespace casimir
