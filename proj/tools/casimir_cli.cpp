// casimir: force, heat flux and thickness sweeps for two lossy slabs.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "casimir/config.hpp"
#include "casimir/limits.hpp"
#include "casimir/sweep.hpp"

namespace {

using namespace casimir;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNonConvergence = 3;
constexpr int kNotFound = 4;

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  double rel_tol = 0.0;
  unsigned workers = 0;
};

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? ordered_json(nullptr) : ordered_json(format_double(v));
}

// Key/value report: "key = value" lines for csv, one JSON object for records.
void emit(std::ostream& out, const std::string& format, const std::vector<std::pair<std::string, ordered_json>>& kv) {
  if (format == "records") {
    ordered_json j;
    for (const auto& [k, v] : kv) j[k] = v;
    out << j.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : kv) {
    if (v.is_number_float()) out << k << " = " << format_double(v.get<double>()) << "\n";
    else if (v.is_string()) out << k << " = " << v.get<std::string>() << "\n";
    else out << k << " = " << v.dump() << "\n";
  }
}

ScenarioConfig load(const Options& o) {
  ScenarioConfig c = load_config(o.config);
  if (o.rel_tol > 0.0) {
    c.quad.rel_tol = o.rel_tol;
    validate(c.quad);
  }
  return c;
}

int run_single(const Options& o, std::ostream& out, Observables obs, const std::string& command) {
  const ScenarioConfig c = load(o);
  SweepTable t;
  t.config = c;
  t.config.sweep.observables = obs;
  SweepRow row = evaluate_scenario(t.config, obs);
  row.swept_value = c.geom.d_L;
  t.rows.push_back(row);
  write_table(out, t, o.format == "records" ? OutputFormat::records : OutputFormat::csv, command);
  if (row.status == RowStatus::failed) throw std::invalid_argument(row.message);
  return row.status == RowStatus::ok ? kOk : kNonConvergence;
}

int run_sweep_cmd(const Options& o, std::ostream& out) {
  const SweepTable t = run_sweep(load(o), o.workers);
  write_table(out, t, o.format == "records" ? OutputFormat::records : OutputFormat::csv);
  for (const SweepRow& r : t.rows)
    if (r.status != RowStatus::ok) std::cerr << "point " << format_double(r.swept_value) << ": " << r.message << "\n";
  return t.all_ok() ? kOk : kNonConvergence;
}

int run_find_min(const Options& o, std::ostream& out) {
  const HeatMinimum m = find_heat_minimum(load(o), o.workers);
  emit(out, o.format,
       {{"status", to_string(m.status)},
        {"d_min_nm", num(m.d_min)},
        {"q_min", num(m.q_min)},
        {"q_d0", num(m.q_d0)},
        {"q_dinf", num(m.q_dinf)},
        {"attenuation_vs_d0", num(m.attenuation_vs_d0)},
        {"attenuation_vs_dinf", num(m.attenuation_vs_dinf)}});
  return m.status == SearchStatus::found ? kOk : kNotFound;
}

int run_find_zero(const Options& o, std::ostream& out) {
  const HeatZero z = find_heat_zero(load(o));
  emit(out, o.format,
       {{"status", to_string(z.status)},
        {"d_star_nm", num(z.d_star)},
        {"q_at_star", num(z.q_at_star)},
        {"bracket_lo_nm", num(z.bracket_lo)},
        {"bracket_hi_nm", num(z.bracket_hi)},
        {"q_lo", num(z.q_lo)},
        {"q_hi", num(z.q_hi)},
        {"evaluations", z.evaluations}});
  return z.status == SearchStatus::found ? kOk : kNotFound;
}

// Finite-thickness observables next to their closed-form limits.
int run_limits(const Options& o, std::ostream& out) {
  const ScenarioConfig c = load(o);
  const Scenario sc = c.scenario();
  validate(sc);
  const auto& t = sc.temps;
  const double a = sc.geom.a;
  const double floor = stefan_flux(t.max(), 0.0) * 1e-12;
  std::vector<std::pair<std::string, ordered_json>> kv;
  const auto add = [&](const std::string& name, const LimitReport& r) {
    kv.emplace_back(name + ".regime", std::string(regime_name(r.regime)));
    kv.emplace_back(name + ".finite", num(r.finite_value));
    kv.emplace_back(name + ".limit", num(r.limit_value));
    kv.emplace_back(name + ".relative_gap", num(r.relative_gap));
  };

  ScenarioConfig empty = at_point(c, SweepParameter::thickness_d, 0.0);
  add("heat_d0", make_report(heat_flux(empty.scenario(), c.quad, false).total, stefan_flux(t.T_phi_L, t.T_phi_R),
                             Regime::d_zero, floor));

  const double q_inf = landauer_heat_halfspace(a, sc.mat_L, sc.mat_R, t.T_B_L, t.T_B_R, c.quad);
  const double f_inf = infinite_plates_force(a, sc.mat_L, sc.mat_R, t, c.quad);
  if (sc.geom.finite()) {
    const ForceResult f = casimir_force(sc, c.quad, false);
    add("heat_dinf", make_report(heat_flux(sc, c.quad, false).total, q_inf, Regime::d_infinite, floor));
    add("force_dinf", make_report(f.total, f_inf, Regime::d_infinite, 1e-300));
    if (t.equilibrium())
      add("force_equilibrium",
          make_report(f.total, finite_width_lifshitz_force(sc.geom, sc.mat_L, sc.mat_R, t.T_phi_L, c.quad),
                      Regime::equilibrium, 1e-300));
    if (sc.mat_L == sc.mat_R && sc.geom.d_L == sc.geom.d_R && t.T_phi_L == t.T_B_L && t.T_phi_R == t.T_B_R) {
      const auto id = identical_plates_heat(a, sc.geom.d_L, sc.mat_L, t.T_phi_L, t.T_phi_R, c.quad);
      add("heat_identical", make_report(heat_flux(sc, c.quad, false).total, id.total, Regime::identical_plates,
                                        floor));
    }
  } else {
    kv.emplace_back("heat_dinf.limit", num(q_inf));
    kv.emplace_back("force_dinf.limit", num(f_inf));
  }
  emit(out, o.format, kv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir force and radiative heat flux between two finite lossy slabs (1+1 D)"};
  app.require_subcommand(1);
  Options o;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "records"}));
    sub->add_option("--rel-tol", o.rel_tol, "Override quadrature.rel_tol")->check(CLI::PositiveNumber);
    sub->add_option("--workers", o.workers, "Worker threads (0: all cores)");
  };
  auto* force = app.add_subcommand("force", "Casimir force for the configured scenario");
  auto* heat = app.add_subcommand("heat", "Heat flux for the configured scenario");
  auto* sweep = app.add_subcommand("sweep", "Sweep over the [sweep] section");
  auto* find_min = app.add_subcommand("find-min", "Thickness of minimal heat flux over [search]");
  auto* find_zero = app.add_subcommand("find-zero", "Thickness of vanishing heat flux over [search]");
  auto* limits = app.add_subcommand("limits", "Compare with the d = 0, d = inf and equilibrium limits");
  for (auto* s : {force, heat, sweep, find_min, find_zero, limits}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  std::unique_ptr<std::ofstream> file;
  if (!o.out.empty()) {
    file = std::make_unique<std::ofstream>(o.out);
    if (!*file) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return kConfigError;
    }
  }
  std::ostream& out = file ? *file : std::cout;
  try {
    if (force->parsed()) return run_single(o, out, Observables::force, "force");
    if (heat->parsed()) return run_single(o, out, Observables::heat, "heat");
    if (sweep->parsed()) return run_sweep_cmd(o, out);
    if (find_min->parsed()) return run_find_min(o, out);
    if (find_zero->parsed()) return run_find_zero(o, out);
    return run_limits(o, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const QuadratureError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonConvergence;
  }
}
