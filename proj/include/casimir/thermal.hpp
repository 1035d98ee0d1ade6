#pragma once

// Thermal weights. Temperatures are in natural units (inverse length) and
// T = 0 denotes the vacuum state.

namespace casimir {

// coth(omega / 2T); 1 for T = 0. Throws std::domain_error for omega <= 0 with T > 0.
double coth_factor(double T, double omega);

// Bose occupation 1 / (exp(omega/T) - 1); 0 for T = 0. Same domain as coth_factor.
double occupation(double T, double omega);

// omega * coth(omega / 2T) with its omega -> 0 limit 2T.
double omega_coth(double T, double omega);

// omega * N(omega) with its omega -> 0 limit T.
double omega_occupation(double T, double omega);

}  // namespace casimir
