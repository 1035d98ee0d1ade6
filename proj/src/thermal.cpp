#include "casimir/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir {

double coth_factor(double T, double omega) {
  if (T == 0.0) return 1.0;
  if (!(omega > 0.0)) throw std::domain_error("coth_factor: omega must be positive for T > 0");
  return 1.0 / std::tanh(0.5 * omega / T);
}

double occupation(double T, double omega) {
  if (T == 0.0) return 0.0;
  if (!(omega > 0.0)) throw std::domain_error("occupation: omega must be positive for T > 0");
  return 1.0 / std::expm1(omega / T);
}

double omega_coth(double T, double omega) {
  if (T == 0.0) return omega;
  if (omega == 0.0) return 2.0 * T;
  return omega / std::tanh(0.5 * omega / T);
}

double omega_occupation(double T, double omega) {
  if (T == 0.0) return 0.0;
  const double x = omega / T;
  if (x == 0.0) return T;
  if (x > 745.0) return 0.0;
  return omega / std::expm1(x);
}

}  // namespace casimir
