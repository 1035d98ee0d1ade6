#pragma once

// Natural units (hbar = c = k_B = 1) with lengths in nm. Frequencies and
// temperatures are both inverse lengths.

namespace casimir::units {

// hbar * c / k_B in nm K (CODATA 2018 exact-constant combination).
inline constexpr double hbar_c_over_kB_nm_K = 2.289884519207678e6;

// Throws std::invalid_argument for negative input.
double kelvin_to_natural(double kelvin);
double natural_to_kelvin(double inverse_nm);

}  // namespace casimir::units
