#pragma once

#include <string_view>

#include "casimir/material.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/scenario.hpp"

// Closed forms for empty (d = 0) and semi-infinite plates, and the
// identical-plates Landauer form. Occupation-number prefactors are 2 omega,
// matching the heat engine in contributions.

namespace casimir {

enum class Regime { d_zero, d_infinite, equilibrium, identical_plates };
std::string_view regime_name(Regime r);

struct LimitReport {
  double finite_value = 0.0;
  double limit_value = 0.0;
  double relative_gap = 0.0;
  Regime regime = Regime::d_zero;
};

// relative_gap = |finite - limit| / max(|limit|, floor)
LimitReport make_report(double finite_value, double limit_value, Regime regime, double floor);

// pi^2/3 (T_L^2 - T_R^2)
double stefan_flux(double T_L, double T_R);

// Semi-infinite plates, local equilibrium on each side (T_phi = T_B per side).
double lifshitz_noneq_force(double a, const Material& L, const Material& R, double T_L, double T_R,
                            const QuadratureConfig& cfg, double* error = nullptr);
// -4 int_0^inf dk k coth(k/2T) Re[rho_n / (1 - rho_n)], rho_n = r_nL r_nR e^{2ika}.
double lifshitz_eq_force(double a, const Material& L, const Material& R, double T, const QuadratureConfig& cfg,
                         double* error = nullptr);

// Semi-infinite plates with arbitrary field temperatures: the free pressure
// difference adds pi^2/3 (T_phiL^2 + T_phiR^2 - T_BL^2 - T_BR^2).
double infinite_plates_force(double a, const Material& L, const Material& R, const Temperatures& t,
                             const QuadratureConfig& cfg, double* error = nullptr);

// Bath pressure of two half-spaces,
//   w [coth_BL (1-|r_nL|^2)(1+|r_nR|^2) + coth_BR (1-|r_nR|^2)(1+|r_nL|^2)] / |den|^2.
// It grows like 2w, so the integral is taken over [0, window].
double halfspace_bath_integrand(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                                double omega);
// The same kernel assembled from the half-space Green function amplitudes A>, B<
// (and their mirror images): w coth Re(n)(|A|^2+|B|^2) e^{-w Im(n) a} / |n|^2.
double halfspace_bath_integrand_green(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                                      double omega);
double halfspace_bath_pressure(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                               double window, const QuadratureConfig& cfg, double* error = nullptr);

// int 2w (N_BL - N_BR)(1-|r_nL|^2)(1-|r_nR|^2)/|den|^2
double landauer_heat_halfspace(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                               const QuadratureConfig& cfg, double* error = nullptr);

struct IdenticalPlatesHeat {
  double q_ic = 0.0;
  double q_b = 0.0;
  double total = 0.0;
};
// Two identical slabs, T_phi = T_B on each side:
//   total = int 2w (N_L - N_R) (1-|r|^2)/|den|^2 [|t|^2 (1 + |n+1|^2/(4|n|^2) G)]
//   G = Re n (e^{2 k d} - 1) + Re n |r_n|^2 (1 - e^{-2 k d}) + 2 Im n Im[r_n (1 - e^{2 i w Re(n) d})]
IdenticalPlatesHeat identical_plates_heat(double a, double d, const Material& m, double T_L, double T_R,
                                          const QuadratureConfig& cfg);

}  // namespace casimir
