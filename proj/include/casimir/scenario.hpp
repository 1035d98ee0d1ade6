#pragma once

#include "casimir/material.hpp"
#include "casimir/slab_optics.hpp"

namespace casimir {

// Field (oven wall) and bath temperatures, natural units. Zero is the vacuum.
struct Temperatures {
  double T_phi_L = 0.0;
  double T_phi_R = 0.0;
  double T_B_L = 0.0;
  double T_B_R = 0.0;

  double max() const;
  bool equilibrium() const;
  bool operator==(const Temperatures&) const = default;
};

struct Scenario {
  Geometry geom;
  Material mat_L;
  Material mat_R;
  Temperatures temps;

  bool operator==(const Scenario&) const = default;
};

void validate(const Temperatures& t);
// Materials may be dissipationless here; the bath paths reject that themselves.
void validate(const Scenario& s);

// Full mirror image: materials, thicknesses and both temperature pairs swapped.
Scenario mirrored(const Scenario& s);

}  // namespace casimir
