#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "casimir/quadrature.hpp"
#include "casimir/scenario.hpp"

// Scenario files: INI-style sections, lengths in nm, frequencies in nm^-1,
// temperatures in kelvin.
//
//   [material.left]   omega_pl, omega_0, gamma
//   [material.right]  omega_pl, omega_0, gamma
//   [geometry]        a, d_L, d_R     (d may be "inf")
//   [temperatures]    T_phi_L, T_phi_R, T_B_L, T_B_R
//   [quadrature]      rel_tol, abs_tol, max_subdivisions, cutoff_factor, resonance_splitting
//   [sweep]           parameter, min, max, finite_max, points, spacing, observables,
//                     normalization
//   [search]          d_min, d_max, grid_points

namespace casimir {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepParameter { thickness_d, gap_a, T_phi_L, T_phi_R, T_B_L, T_B_R, omega_pl };
enum class Spacing { linear, log };
enum class Observables { force, heat, both };
enum class Normalization { stefan, halfspace, none };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::thickness_d;
  double min = 1.0;
  double max = 1e3;
  // Upper end of the finite points when max is "inf".
  double finite_max = 1e8;
  std::size_t points = 2;
  Spacing spacing = Spacing::log;
  Observables observables = Observables::both;
  Normalization normalization = Normalization::stefan;

  bool operator==(const SweepSpec&) const = default;
};

struct SearchSpec {
  double d_min = 1.0;
  double d_max = 1e8;
  std::size_t grid_points = 41;

  bool operator==(const SearchSpec&) const = default;
};

// Temperatures in kelvin, everything else as in Scenario.
struct ScenarioConfig {
  Geometry geom;
  Material mat_L;
  Material mat_R;
  double T_phi_L_K = 0.0, T_phi_R_K = 0.0, T_B_L_K = 0.0, T_B_R_K = 0.0;
  QuadratureConfig quad;
  SweepSpec sweep;
  SearchSpec search;

  Scenario scenario() const;
  bool operator==(const ScenarioConfig&) const = default;
};

void validate(const SweepSpec& s);

// Throws ConfigError with the offending key.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);
void write_config(std::ostream& out, const ScenarioConfig& c);

std::string to_string(SweepParameter p);
std::string to_string(Spacing s);
std::string to_string(Observables o);
std::string to_string(Normalization n);
// Shortest text that parses back to the same double ("inf" for infinity).
std::string format_double(double x);

}  // namespace casimir
