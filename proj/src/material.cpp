#include "casimir/material.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casimir {

void validate(const Material& m) {
  if (!(m.omega_pl > 0.0) || !std::isfinite(m.omega_pl))
    throw std::invalid_argument("omega_pl must be positive");
  if (!(m.omega_0 > 0.0) || !std::isfinite(m.omega_0))
    throw std::invalid_argument("omega_0 must be positive");
  if (!(m.gamma >= 0.0) || !std::isfinite(m.gamma))
    throw std::invalid_argument("gamma must be non-negative");
}

complex susceptibility(const Material& m, double omega) {
  if (!(omega >= 0.0)) throw std::domain_error("susceptibility: negative frequency");
  const double re = m.omega_0 * m.omega_0 - omega * omega;
  const double im = m.gamma * omega;
  const double w2 = m.omega_pl * m.omega_pl;
  const double mag2 = re * re + im * im;
  return {w2 * re / mag2, w2 * im / mag2};
}

complex refractive_index(const Material& m, double omega) {
  complex n = std::sqrt(1.0 + susceptibility(m, omega));
  if (n.imag() < 0.0) n = -n;
  return n;
}

complex refractive_index_signed(const Material& m, double omega) {
  return omega < 0.0 ? std::conj(refractive_index(m, -omega)) : refractive_index(m, omega);
}

double transparency_frequency(const Material& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("transparency tolerance must be positive");
  // |omega_0^2 - u|^2 + gamma^2 u = omega_pl^4 / tol^2 with u = omega^2.
  const double w02 = m.omega_0 * m.omega_0;
  const double g2 = m.gamma * m.gamma;
  const double p = m.omega_pl * m.omega_pl / tol;
  const double b = 2.0 * w02 - g2;
  const double c = w02 * w02 - p * p;
  const double u = 0.5 * (b + std::sqrt(b * b - 4.0 * c));
  return std::sqrt(std::max(u, w02));
}

}  // namespace casimir
