#include "casimir/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casimir {

double Temperatures::max() const { return std::max({T_phi_L, T_phi_R, T_B_L, T_B_R}); }

bool Temperatures::equilibrium() const {
  return T_phi_L == T_phi_R && T_phi_L == T_B_L && T_phi_L == T_B_R;
}

void validate(const Temperatures& t) {
  for (double T : {t.T_phi_L, t.T_phi_R, t.T_B_L, t.T_B_R})
    if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("temperatures must be finite and non-negative");
}

void validate(const Scenario& s) {
  validate(s.geom);
  validate(s.mat_L);
  validate(s.mat_R);
  validate(s.temps);
}

Scenario mirrored(const Scenario& s) {
  Scenario m = s;
  std::swap(m.mat_L, m.mat_R);
  std::swap(m.geom.d_L, m.geom.d_R);
  std::swap(m.temps.T_phi_L, m.temps.T_phi_R);
  std::swap(m.temps.T_B_L, m.temps.T_B_R);
  return m;
}

}  // namespace casimir
