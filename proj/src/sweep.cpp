#include "casimir/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "json.hpp"

#include "casimir/limits.hpp"
#include "casimir/units.hpp"

#ifndef CASIMIR_VERSION
#define CASIMIR_VERSION "unknown"
#endif

namespace casimir {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> spaced(double lo, double hi, std::size_t n, Spacing s) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = s == Spacing::log ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo))) : lo + u * (hi - lo);
  }
  // Keep the end points exact.
  v.front() = lo;
  if (n > 1) v.back() = hi;
  return v;
}

// Runs f(i) for i in [0, n) on a bounded pool; results are stored by index.
template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& f) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
}

std::string swept_unit(SweepParameter p) {
  switch (p) {
    case SweepParameter::thickness_d:
    case SweepParameter::gap_a:
      return "nm";
    case SweepParameter::omega_pl:
      return "nm^-1";
    default:
      return "K";
  }
}

}  // namespace

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok:
      return "ok";
    case RowStatus::nonconverged:
      return "nonconverged";
    default:
      return "failed";
  }
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::monotone:
      return "monotone";
    case SearchStatus::no_crossing:
      return "no_crossing";
    default:
      return "flat_zero";
  }
}

bool SweepTable::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == RowStatus::ok; });
}

std::vector<double> sweep_values(const SweepSpec& s) {
  validate(s);
  if (std::isinf(s.max)) {
    auto v = spaced(s.min, s.finite_max, s.points - 1, s.spacing);
    v.push_back(kInf);
    return v;
  }
  return spaced(s.min, s.max, s.points, s.spacing);
}

ScenarioConfig at_point(const ScenarioConfig& base, SweepParameter p, double value) {
  ScenarioConfig c = base;
  switch (p) {
    case SweepParameter::thickness_d:
      c.geom.d_L = c.geom.d_R = value;
      break;
    case SweepParameter::gap_a:
      c.geom.a = value;
      break;
    case SweepParameter::T_phi_L:
      c.T_phi_L_K = value;
      break;
    case SweepParameter::T_phi_R:
      c.T_phi_R_K = value;
      break;
    case SweepParameter::T_B_L:
      c.T_B_L_K = value;
      break;
    case SweepParameter::T_B_R:
      c.T_B_R_K = value;
      break;
    case SweepParameter::omega_pl:
      c.mat_L.omega_pl = c.mat_R.omega_pl = value;
      break;
  }
  return c;
}

double normalization_denominator(const Scenario& sc, Normalization n, const QuadratureConfig& cfg) {
  switch (n) {
    case Normalization::stefan:
      return stefan_flux(sc.temps.T_phi_L, sc.temps.T_phi_R);
    case Normalization::halfspace:
      return landauer_heat_halfspace(sc.geom.a, sc.mat_L, sc.mat_R, sc.temps.T_B_L, sc.temps.T_B_R, cfg);
    default:
      return 1.0;
  }
}

SweepRow evaluate_point(const ScenarioConfig& cfg, double swept_value) {
  SweepRow row = evaluate_scenario(at_point(cfg, cfg.sweep.parameter, swept_value), cfg.sweep.observables);
  row.swept_value = swept_value;
  return row;
}

SweepRow evaluate_scenario(const ScenarioConfig& point, Observables obs) {
  SweepRow row;
  row.swept_value = kNaN;
  row.force_total = row.force_free_minus_ic = row.force_bath = row.force_window = kNaN;
  row.q_total = row.q_ic = row.q_b = row.q_normalized = row.denominator = kNaN;
  row.quad_error = 0.0;
  try {
    const Scenario sc = point.scenario();
    validate(sc);
    const bool infinite = std::isinf(sc.geom.d_L) && std::isinf(sc.geom.d_R);
    if (obs != Observables::heat) {
      if (infinite) {
        double err = 0.0;
        row.force_total = infinite_plates_force(sc.geom.a, sc.mat_L, sc.mat_R, sc.temps, point.quad, &err);
        row.quad_error += err;
      } else {
        const ForceResult f = casimir_force(sc, point.quad, true);
        row.force_total = f.total;
        row.force_free_minus_ic = f.free_minus_ic;
        row.force_bath = f.bath_term;
        row.force_window = f.window;
        row.quad_error += f.quad_error;
      }
    }
    if (obs != Observables::force) {
      if (infinite) {
        double err = 0.0;
        row.q_total = landauer_heat_halfspace(sc.geom.a, sc.mat_L, sc.mat_R, sc.temps.T_B_L, sc.temps.T_B_R,
                                              point.quad, &err);
        row.q_ic = 0.0;
        row.q_b = row.q_total;
        row.quad_error += err;
      } else {
        const HeatResult h = heat_flux(sc, point.quad, true);
        row.q_total = h.total;
        row.q_ic = h.q_ic;
        row.q_b = h.q_b;
        row.quad_error += h.quad_error;
      }
      row.denominator = normalization_denominator(sc, point.sweep.normalization, point.quad);
      row.q_normalized = row.denominator != 0.0 ? row.q_total / row.denominator : kNaN;
    }
  } catch (const QuadratureError& e) {
    row.status = RowStatus::nonconverged;
    row.message = e.what();
  } catch (const std::exception& e) {
    row.status = RowStatus::failed;
    row.message = e.what();
  }
  return row;
}

SweepTable run_sweep(const ScenarioConfig& cfg, unsigned workers) {
  SweepTable t;
  t.config = cfg;
  const auto values = sweep_values(cfg.sweep);
  t.rows.resize(values.size());
  parallel_for(values.size(), workers, [&](std::size_t i) { t.rows[i] = evaluate_point(cfg, values[i]); });
  return t;
}

void write_table(std::ostream& out, const SweepTable& t, OutputFormat f, const std::string& command) {
  const SweepSpec& s = t.config.sweep;
  const std::string param = to_string(s.parameter);
  if (f == OutputFormat::csv) {
    std::ostringstream cfg;
    write_config(cfg, t.config);
    out << "# casimir " << CASIMIR_VERSION << "\n# command = " << command << "\n";
    std::string line;
    std::istringstream lines(cfg.str());
    while (std::getline(lines, line))
      if (!line.empty()) out << "# " << line << "\n";
    out << "# force columns over [0, force_window]; q_normalized = q_total / denominator\n";
    out << param << "[" << swept_unit(s.parameter) << "],force_total[nm^-2],force_free_minus_ic[nm^-2],"
        << "force_bath[nm^-2],force_window[nm^-1],q_total[nm^-2],q_ic[nm^-2],q_b[nm^-2],q_normalized[1],"
        << "denominator[nm^-2],quad_error[nm^-2],status\n";
    for (const SweepRow& r : t.rows) {
      for (double v : {r.swept_value, r.force_total, r.force_free_minus_ic, r.force_bath, r.force_window, r.q_total,
                       r.q_ic, r.q_b, r.q_normalized, r.denominator, r.quad_error})
        out << format_double(v) << ",";
      out << to_string(r.status) << "\n";
    }
    return;
  }
  using nlohmann::ordered_json;
  const auto num = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? ordered_json(nullptr) : ordered_json(format_double(v));
  };
  std::ostringstream cfg;
  write_config(cfg, t.config);
  ordered_json meta;
  meta["version"] = CASIMIR_VERSION;
  meta["command"] = command;
  meta["parameter"] = param;
  meta["unit"] = swept_unit(s.parameter);
  meta["normalization"] = to_string(s.normalization);
  meta["config"] = cfg.str();
  out << ordered_json{{"meta", meta}}.dump() << "\n";
  for (const SweepRow& r : t.rows) {
    ordered_json j;
    j[param] = num(r.swept_value);
    j["force_total"] = num(r.force_total);
    j["force_free_minus_ic"] = num(r.force_free_minus_ic);
    j["force_bath"] = num(r.force_bath);
    j["force_window"] = num(r.force_window);
    j["q_total"] = num(r.q_total);
    j["q_ic"] = num(r.q_ic);
    j["q_b"] = num(r.q_b);
    j["q_normalized"] = num(r.q_normalized);
    j["denominator"] = num(r.denominator);
    j["quad_error"] = num(r.quad_error);
    j["status"] = to_string(r.status);
    if (!r.message.empty()) j["message"] = r.message;
    out << j.dump() << "\n";
  }
}

double heat_at_thickness(const ScenarioConfig& cfg, double d) {
  const Scenario sc = at_point(cfg, SweepParameter::thickness_d, d).scenario();
  if (std::isinf(d))
    return landauer_heat_halfspace(sc.geom.a, sc.mat_L, sc.mat_R, sc.temps.T_B_L, sc.temps.T_B_R, cfg.quad);
  return heat_flux(sc, cfg.quad, false).total;
}

HeatMinimum find_heat_minimum(const ScenarioConfig& cfg, unsigned workers) {
  HeatMinimum m;
  const Scenario sc = cfg.scenario();
  validate(sc);
  m.q_d0 = stefan_flux(sc.temps.T_phi_L, sc.temps.T_phi_R);
  if (sc.temps.equilibrium()) {
    m.status = SearchStatus::flat_zero;
    m.attenuation_vs_d0 = m.attenuation_vs_dinf = kNaN;
    return m;
  }
  m.q_dinf = landauer_heat_halfspace(sc.geom.a, sc.mat_L, sc.mat_R, sc.temps.T_B_L, sc.temps.T_B_R, cfg.quad);
  // Minimize the flux along the direction of the reference flux.
  const double ref = m.q_d0 != 0.0 ? m.q_d0 : m.q_dinf;
  const double sign = ref < 0.0 ? -1.0 : 1.0;

  const auto ds = spaced(cfg.search.d_min, cfg.search.d_max, cfg.search.grid_points, Spacing::log);
  m.grid.resize(ds.size());
  parallel_for(ds.size(), workers, [&](std::size_t i) { m.grid[i] = {ds[i], heat_at_thickness(cfg, ds[i])}; });
  std::size_t best = 0;
  for (std::size_t i = 1; i < ds.size(); ++i)
    if (sign * m.grid[i].second < sign * m.grid[best].second) best = i;
  m.d_min = ds[best];
  m.q_min = m.grid[best].second;

  if (best == 0 || best + 1 == ds.size()) {
    m.status = SearchStatus::monotone;
  } else {
    const auto objective = [&](double x) { return sign * heat_at_thickness(cfg, std::exp(x)); };
    std::uintmax_t iters = 80;
    const auto [x, fx] =
        boost::math::tools::brent_find_minima(objective, std::log(ds[best - 1]), std::log(ds[best + 1]), 24, iters);
    if (sign * fx < sign * m.q_min) {
      m.d_min = std::exp(x);
      m.q_min = sign * fx;
    }
  }
  m.attenuation_vs_d0 = m.q_d0 != 0.0 ? 1.0 - m.q_min / m.q_d0 : kNaN;
  m.attenuation_vs_dinf = m.q_dinf != 0.0 ? 1.0 - m.q_min / m.q_dinf : kNaN;
  return m;
}

HeatZero find_heat_zero(const ScenarioConfig& cfg) {
  HeatZero z;
  const Scenario sc = cfg.scenario();
  validate(sc);
  z.bracket_lo = cfg.search.d_min;
  z.bracket_hi = cfg.search.d_max;
  if (sc.temps.equilibrium()) {
    z.status = SearchStatus::flat_zero;
    z.d_star = kNaN;
    return z;
  }
  std::map<double, double> memo;
  const auto q = [&](double x) {
    auto it = memo.find(x);
    if (it == memo.end()) {
      it = memo.emplace(x, heat_at_thickness(cfg, std::exp(x))).first;
      ++z.evaluations;
    }
    return it->second;
  };
  double lo = std::log(cfg.search.d_min), hi = std::log(cfg.search.d_max);
  z.q_lo = q(lo);
  z.q_hi = q(hi);
  if (!(z.q_lo * z.q_hi < 0.0)) {
    z.status = SearchStatus::no_crossing;
    z.d_star = kNaN;
    return z;
  }
  const double width = std::log1p(1e-4);
  std::uintmax_t iters = 200;
  std::tie(lo, hi) = boost::math::tools::bisect(
      q, lo, hi, [&](double a, double b) { return b - a <= width; }, iters);
  z.bracket_lo = std::exp(lo);
  z.bracket_hi = std::exp(hi);
  z.q_lo = q(lo);
  z.q_hi = q(hi);
  const double x = lo - z.q_lo * (hi - lo) / (z.q_hi - z.q_lo);
  z.d_star = std::exp(x);
  z.q_at_star = heat_at_thickness(cfg, z.d_star);
  return z;
}

}  // namespace casimir
