#pragma once

#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/scenario.hpp"
#include "casimir/spectral.hpp"

// Casimir pressure and heat flux between two finite slabs.
//
// Force:  F = Free(T_phi) - IC - Bath, each term a frequency integral with
//         coth weights. Free and IC diverge separately; they are only ever
//         integrated as a difference.
// Heat:   Q = Q_ic + Q_b. The zero-point parts of the two contributions cancel
//         pointwise, so both are integrated with occupation numbers N only.
//
// The bath kernels carry unit prefactor in front of omega:
//   emitted force kernel  eps_L (1 + |r_R|^2) / |den|^2,
//   emitted heat kernel   eps_L (1 - |r_R|^2) / |den|^2,
// with eps_L the emissivity of the left slab built from the internal mode
// amplitudes. With this normalization the heat kernels satisfy
//   a_L - a_R + b_L - b_R = 0 at every frequency.

namespace casimir {

struct ForceResult {
  double total = 0.0;
  // Breakdown over the window [0, window]: free - ic and the bath term are
  // separately log divergent for lossy plates, so they are reported on the
  // same finite window. free_minus_ic - bath_term = total up to the tail.
  double free_minus_ic = 0.0;
  double bath_term = 0.0;
  double window = 0.0;
  double quad_error = 0.0;
};

struct HeatResult {
  double total = 0.0;
  double q_ic = 0.0;
  double q_b = 0.0;
  double quad_error = 0.0;
};

// Landauer-type rewriting of the total heat flux:
//   Q = int 2w [ (N_phiL - N_BR) a_L - (N_phiR - N_BR) a_R + (N_BL - N_BR) b_L ]
// with b_L from the Kirchhoff emissivity 1 - |r_L|^2 - |t_L|^2.
struct MixedHeatResult {
  double total = 0.0;
  double ic_left = 0.0;
  double ic_right = 0.0;
  double bath_left = 0.0;
  double quad_error = 0.0;
};

Cavity cavity_of(const Scenario& sc);

// Integrands as written, coth weights included.
double free_pressure_integrand(const Temperatures& t, double k);
double force_ic_integrand(const Scenario& sc, double k);
// Throws std::domain_error for a dissipationless plate: that term is zero.
double force_bath_integrand(const Scenario& sc, double omega);
double heat_ic_integrand(const Scenario& sc, double k);
double heat_bath_integrand(const Scenario& sc, double omega);

// Breakpoints resolving the slab and cavity oscillations on [lo, hi].
std::vector<double> oscillation_partition(const Cavity& c, double lo, double hi);

// Quadrature inputs shared by the observables (also used by the test oracles).
// r_L r_R exp(2 i omega a)
complex cavity_round_trip(const Cavity& c, double omega);
ScaleHints zero_point_hints(const Cavity& c, const QuadratureConfig& cfg);
ScaleHints thermal_hints(const Cavity& c, const Temperatures& t, const QuadratureConfig& cfg);
BatchIntegrand force_vacuum_kernel(const Cavity& c);
BatchIntegrand force_thermal_kernel(const Cavity& c, const Temperatures& t);
BatchIntegrand heat_kernel(const Cavity& c, const Temperatures& t, bool ic, bool bath);

ForceResult casimir_force(const Scenario& sc, const QuadratureConfig& cfg, bool breakdown = true);
HeatResult heat_flux(const Scenario& sc, const QuadratureConfig& cfg, bool breakdown = true);
MixedHeatResult heat_total_mixed(const Scenario& sc, const QuadratureConfig& cfg);

// Force of the Lifshitz form with finite-slab reflection coefficients,
//   -4 int_0^inf dk k coth(k/2T) Re[rho / (1 - rho)],
// i.e. the full-line integral -int dk k coth 2Re[...]. Equilibrium only.
double finite_width_lifshitz_force(const Geometry& g, const Material& L, const Material& R, double T,
                                   const QuadratureConfig& cfg, double* error = nullptr);

}  // namespace casimir
