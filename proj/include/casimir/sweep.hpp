#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/contributions.hpp"

// Parameter sweeps and the thickness searches built on them.

namespace casimir {

enum class RowStatus { ok, nonconverged, failed };
std::string to_string(RowStatus s);

// Forces in nm^-2, fluxes in nm^-2 (natural units), swept value in user units.
struct SweepRow {
  double swept_value = 0.0;
  double force_total = 0.0;
  double force_free_minus_ic = 0.0;  // over [0, force_window]
  double force_bath = 0.0;           // over [0, force_window]
  double force_window = 0.0;
  double q_total = 0.0;
  double q_ic = 0.0;
  double q_b = 0.0;
  double q_normalized = 0.0;
  double denominator = 0.0;
  double quad_error = 0.0;
  RowStatus status = RowStatus::ok;
  std::string message;
};

struct SweepTable {
  ScenarioConfig config;
  std::vector<SweepRow> rows;

  bool all_ok() const;
};

// Swept values in sweep order; an "inf" upper bound becomes the last point.
std::vector<double> sweep_values(const SweepSpec& s);

// Scenario at one sweep point (user units for the value).
ScenarioConfig at_point(const ScenarioConfig& base, SweepParameter p, double value);

// Denominator of q_normalized for a scenario.
double normalization_denominator(const Scenario& sc, Normalization n, const QuadratureConfig& cfg);

SweepRow evaluate_point(const ScenarioConfig& cfg, double swept_value);
// One row for the scenario as configured (swept_value left NaN).
SweepRow evaluate_scenario(const ScenarioConfig& cfg, Observables obs);

// Points are evaluated by up to `workers` threads (0: hardware concurrency).
SweepTable run_sweep(const ScenarioConfig& cfg, unsigned workers = 0);

enum class OutputFormat { csv, records };

// CSV: "# " preamble with version and full scenario, a header naming
// columns and units, then one line per row. Records: JSON lines, the first
// carrying the metadata.
void write_table(std::ostream& out, const SweepTable& t, OutputFormat f, const std::string& command = "sweep");

enum class SearchStatus { found, monotone, no_crossing, flat_zero };
std::string to_string(SearchStatus s);

struct HeatMinimum {
  SearchStatus status = SearchStatus::found;
  double d_min = 0.0;   // nm
  double q_min = 0.0;
  double q_d0 = 0.0;    // Stefan value of the fields
  double q_dinf = 0.0;  // half-space Landauer value of the baths
  double attenuation_vs_d0 = 0.0;    // 1 - Q_min / Q(0)
  double attenuation_vs_dinf = 0.0;  // 1 - Q_min / Q(inf)
  std::vector<std::pair<double, double>> grid;  // (d, Q) on the log grid
};

// Log grid over [search.d_min, search.d_max] then Brent refinement in log d
// around the grid minimum of Q(d) / Q(0).
HeatMinimum find_heat_minimum(const ScenarioConfig& cfg, unsigned workers = 0);

struct HeatZero {
  SearchStatus status = SearchStatus::found;
  double d_star = 0.0;  // nm
  double q_at_star = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double q_lo = 0.0, q_hi = 0.0;
  int evaluations = 0;
};

// Bisection in log d to relative width 1e-4, then the secant point of the
// final bracket. Needs Q(d_min) Q(d_max) < 0.
HeatZero find_heat_zero(const ScenarioConfig& cfg);

// Heat flux of a scenario config at thickness d (both slabs); d may be inf.
double heat_at_thickness(const ScenarioConfig& cfg, double d);

}  // namespace casimir
