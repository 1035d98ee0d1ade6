#pragma once

#include <complex>

namespace casimir {

using complex = std::complex<double>;

// Single Lorentz oscillator: chi(w) = omega_pl^2 / (omega_0^2 - w^2 - i gamma w).
struct Material {
  double omega_pl = 0.0;
  double omega_0 = 0.0;
  double gamma = 0.0;

  bool dissipationless() const noexcept { return gamma == 0.0; }
  bool operator==(const Material&) const = default;
};

// Throws std::invalid_argument unless omega_pl > 0, omega_0 > 0, gamma >= 0.
void validate(const Material& m);

// omega >= 0 required.
complex susceptibility(const Material& m, double omega);

// n = sqrt(1 + chi) on the branch with Im(n) >= 0. omega >= 0 required.
complex refractive_index(const Material& m, double omega);

// Extension to negative frequency through n(-w) = conj(n(w)).
complex refractive_index_signed(const Material& m, double omega);

// Frequency above which |chi| < tol (exact inverse of |chi(w)| for w > omega_0).
double transparency_frequency(const Material& m, double tol);

}  // namespace casimir
