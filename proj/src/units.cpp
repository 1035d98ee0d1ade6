#include "casimir/units.hpp"

#include <stdexcept>

namespace casimir::units {

double kelvin_to_natural(double kelvin) {
  if (!(kelvin >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  return kelvin / hbar_c_over_kB_nm_K;
}

double natural_to_kelvin(double inverse_nm) {
  if (!(inverse_nm >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  return inverse_nm * hbar_c_over_kB_nm_K;
}

}  // namespace casimir::units
