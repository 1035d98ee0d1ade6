// Acceptance checks. One PASS/FAIL line per criterion; an optional argument
// selects a single criterion by id. Exit status 1 if any selected check fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/contributions.hpp"
#include "casimir/limits.hpp"
#include "casimir/spectral.hpp"
#include "casimir/sweep.hpp"
#include "support/oracles.hpp"

using namespace casimir;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

QuadratureConfig tol(double rel) {
  QuadratureConfig c;
  c.rel_tol = rel;
  return c;
}

ScenarioConfig load(const std::string& name) { return load_config(std::string(CASIMIR_CONFIGS) + "/" + name); }

double stefan_scale(double T) { return stefan_flux(T, 0.0); }

double rel_gap(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

Scenario scenario(Geometry g, Material L, Material R, Temperatures t) {
  Scenario sc;
  sc.geom = g;
  sc.mat_L = L;
  sc.mat_R = R;
  sc.temps = t;
  return sc;
}

Temperatures uniform(double T) { return {T, T, T, T}; }

// Fig. 1 set: T_L = 300 K fields and bath, right side at T_R.
Scenario force_point(double d, double TR_K) {
  const double L = oracle::kelvin(300.0), R = oracle::kelvin(TR_K);
  return scenario({100.0, d, d}, {0.1, 0.1, 1e-3}, {0.1, 0.1, 1e-3}, {L, R, L, R});
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return v;
}

Outcome equilibrium_null() {
  std::mt19937_64 g(1001);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Material L = oracle::random_material(g), R = oracle::random_material(g);
    const double a = oracle::log_uniform(g, 10.0, 1e3), d = oracle::log_uniform(g, 1.0, 1e5);
    const double T = oracle::kelvin(oracle::log_uniform(g, 50.0, 800.0));
    const HeatResult h = heat_flux(scenario({a, d, d}, L, R, uniform(T)), {}, false);
    worst = std::max(worst, std::abs(h.total) / stefan_scale(2.0 * T));
  }
  return {worst <= 1e-6, fmt("max |Q|/Stefan(2T,0) = %.3g (tol 1e-6)", worst)};
}

Outcome stefan_recovery() {
  const double pairs[5][2] = {{600, 300}, {300, 600}, {500, 0}, {1000, 10}, {310, 300}};
  const Material m{0.1, 0.1, 1e-3};
  double worst = 0.0;
  for (const auto& p : pairs) {
    const double L = oracle::kelvin(p[0]), R = oracle::kelvin(p[1]);
    const HeatResult h = heat_flux(scenario({100.0, 0.0, 0.0}, m, {0.3, 0.05, 1e-2}, {L, R, L, R}), {}, false);
    worst = std::max(worst, rel_gap(h.total, stefan_flux(L, R)));
  }
  return {worst <= 1e-6, fmt("max relative gap to pi^2/3 (T_L^2 - T_R^2) = %.3g (tol 1e-6)", worst)};
}

Outcome kernel_identity() {
  std::mt19937_64 g(1003);
  const std::vector<double> w = log_grid(1e-5, 1.0, 1000);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Material L = oracle::random_material(g), R = oracle::random_material(g);
    const double a = oracle::log_uniform(g, 10.0, 1e3);
    const Cavity c = cavity_of(
        scenario({a, oracle::log_uniform(g, 1.0, 1e5), oracle::log_uniform(g, 1.0, 1e5)}, L, R, uniform(0.0)));
    for (double x : w) {
      const SpectralPoint p = spectral_point(c, x);
      const double sum = (p.heat_ic_L() - p.heat_ic_R()) + (p.heat_bath_L() - p.heat_bath_R());
      const double size = p.heat_ic_L() + p.heat_ic_R() + p.heat_bath_L() + p.heat_bath_R();
      worst = std::max(worst, std::abs(sum) / size);
    }
  }
  return {worst <= 1e-10, fmt("max |a_L - a_R + b_L - b_R| / sum = %.3g (tol 1e-10)", worst)};
}

Outcome force_convergence() {
  const std::vector<double> d = log_grid(1.0, 1e3, 13);
  bool ok = true;
  std::string detail;
  for (double TR : {100.0, 300.0, 500.0}) {
    const Scenario ref = force_point(1.0, TR);
    const double f_inf = infinite_plates_force(100.0, ref.mat_L, ref.mat_R, ref.temps, {});
    double prev = INFINITY, last = 0.0;
    bool monotone = true;
    for (double x : d) {
      last = rel_gap(casimir_force(force_point(x, TR), {}, false).total, f_inf);
      monotone = monotone && last < prev;
      prev = last;
    }
    ok = ok && monotone && last < 1e-2;
    detail += fmt("T_R=%gK gap(10a) = %.3g%s; ", TR, last, monotone ? "" : " not monotone");
  }
  return {ok, detail + "(tol 1e-2)"};
}

Outcome force_maximality() {
  const double eq = casimir_force(force_point(100.0, 300.0), {}, false).total;
  bool ok = true;
  std::string detail = fmt("F(300,300) = %.6e", eq);
  for (double TR : {100.0, 500.0}) {
    const double f = casimir_force(force_point(100.0, TR), {}, false).total;
    ok = ok && eq > f;
    detail += fmt(", F(300,%g) = %.6e", TR, f);
  }
  return {ok, detail + " nm^-2"};
}

// The bath contribution approaches the half-space Landauer flux.
Outcome heat_convergence() {
  const ScenarioConfig c = load("heat_halfspace_TL600.ini");
  const Scenario sc = c.scenario();
  const double q_inf =
      landauer_heat_halfspace(c.geom.a, c.mat_L, c.mat_R, sc.temps.T_B_L, sc.temps.T_B_R, c.quad);
  const auto gap_at = [&](double d) {
    Scenario s = sc;
    s.geom.d_L = s.geom.d_R = d;
    return rel_gap(heat_flux(s, c.quad).q_b, q_inf);
  };
  const double near = gap_at(1e3 * c.geom.a), far = gap_at(1e6 * c.geom.a);
  return {far < 0.1 && near > 0.1,
          fmt("bath contribution gap at 1e3 a = %.3g (need > 0.1), at 1e6 a = %.3g (need < 0.1)", near, far)};
}

Outcome heat_minimum() {
  const HeatMinimum m = find_heat_minimum(load("heat_minimum_TL600.ini"));
  const double lambda_pl = 2.0 * std::numbers::pi / 0.1;
  const bool ok = m.status == SearchStatus::found && m.d_min > lambda_pl && m.attenuation_vs_dinf >= 0.04 &&
                  m.attenuation_vs_dinf <= 0.07;
  return {ok, fmt("status %s, d_min = %.4g nm (need > %.4g), attenuation vs d=inf = %.4g (need [0.04, 0.07])",
                  std::string(to_string(m.status)).c_str(), m.d_min, lambda_pl, m.attenuation_vs_dinf)};
}

Outcome plasma_tuning() {
  double att[3];
  const char* names[3] = {"heat_minimum_wpl1x.ini", "heat_minimum_wpl2x.ini", "heat_minimum_wpl4x.ini"};
  bool found = true;
  for (int i = 0; i < 3; ++i) {
    const HeatMinimum m = find_heat_minimum(load(names[i]));
    found = found && m.status == SearchStatus::found;
    att[i] = m.attenuation_vs_d0;
  }
  const bool monotone = att[0] < att[1] && att[1] < att[2];
  const bool ok = found && monotone && std::abs(att[2] - 0.60) <= 0.05;
  return {ok, fmt("attenuation vs d=0 at 1x, 2x, 4x = %.4g, %.4g, %.4g (need 4x in [0.55, 0.65], increasing)",
                  att[0], att[1], att[2])};
}

Outcome shielding_zero() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"heat_zero_TR350.ini", "heat_zero_TR500.ini"}) {
    const ScenarioConfig c = load(name);
    const HeatZero z = find_heat_zero(c);
    const double scale = stefan_scale(c.scenario().temps.max());
    const bool in = z.status == SearchStatus::found && z.d_star >= 1e4 && z.d_star <= 1e8 &&
                    std::abs(z.q_at_star) < 1e-6 * scale;
    ok = ok && in;
    detail += fmt("T_B_L=%gK: d* = %.4g nm, |Q(d*)|/Stefan = %.2g; ", c.T_B_L_K, z.d_star,
                  std::abs(z.q_at_star) / scale);
  }
  return {ok, detail + "(need d* in [1e4, 1e8] nm, |Q| < 1e-6)"};
}

Outcome finite_width_lifshitz() {
  std::mt19937_64 g(1010);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Material L = oracle::random_material(g), R = oracle::random_material(g);
    const Geometry geo{oracle::log_uniform(g, 10.0, 1e3), oracle::log_uniform(g, 1.0, 1e4),
                       oracle::log_uniform(g, 1.0, 1e4)};
    const double T = i == 0 ? 0.0 : oracle::kelvin(oracle::log_uniform(g, 50.0, 800.0));
    const double assembled = casimir_force(scenario(geo, L, R, uniform(T)), {}, false).total;
    worst = std::max(worst, rel_gap(assembled, finite_width_lifshitz_force(geo, L, R, T, {})));
  }
  return {worst <= 1e-6, fmt("max relative gap = %.3g (tol 1e-6)", worst)};
}

Outcome identical_plates() {
  const double cases[4][2] = {{100.0, 100.0}, {10.0, 1e3}, {1e3, 10.0}, {100.0, 1e4}};
  const Material m{0.1, 0.1, 1e-3};
  const double L = oracle::kelvin(600.0), R = oracle::kelvin(300.0);
  double worst = 0.0;
  for (const auto& c : cases) {
    const double engine = heat_flux(scenario({c[0], c[1], c[1]}, m, m, {L, R, L, R}), tol(1e-11), false).total;
    worst = std::max(worst, rel_gap(engine, identical_plates_heat(c[0], c[1], m, L, R, tol(1e-11)).total));
  }
  return {worst <= 1e-8, fmt("max relative gap = %.3g (tol 1e-8)", worst)};
}

// Largest eigenvalue over trace of the Gram matrix of unit-normalized rows.
double rank_one_share(const std::vector<std::vector<double>>& rows) {
  const std::size_t k = rows.size();
  std::vector<std::vector<double>> u = rows;
  for (auto& r : u) {
    double n = 0.0;
    for (double x : r) n += x * x;
    for (double& x : r) x /= std::sqrt(n);
  }
  std::vector<std::vector<double>> gram(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t p = 0; p < u[i].size(); ++p) gram[i][j] += u[i][p] * u[j][p];
  std::vector<double> v(k, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> y(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) y[i] += gram[i][j] * v[j];
    double n = 0.0;
    for (double x : y) n += x * x;
    n = std::sqrt(n);
    for (std::size_t i = 0; i < k; ++i) v[i] = y[i] / n;
    lambda = n;
  }
  return lambda / double(k);
}

Outcome landauer_witness() {
  const Material L{0.1, 0.1, 1e-3}, R{0.3, 0.05, 1e-2};
  const double BL = oracle::kelvin(600.0), BR = oracle::kelvin(300.0);
  const Scenario sc = scenario({100.0, 100.0, 300.0}, L, R, {0.0, 0.0, BL, BR});
  const Cavity c = cavity_of(sc);
  const std::vector<double> w = log_grid(1e-2 * BL, 20.0 * BL, 1000);
  // Nonzero terms with T_phi = 0: -N_BR a_L, +N_BR a_R, (N_BL - N_BR) b_L.
  std::vector<std::vector<double>> kernels(3);
  double max_diff = 0.0;
  for (double x : w) {
    const SpectralPoint p = spectral_point(c, x);
    const double k[3] = {p.heat_ic_L(), p.heat_ic_R(), p.heat_bath_L()};
    for (int i = 0; i < 3; ++i) kernels[i].push_back(k[i]);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        max_diff = std::max(max_diff, std::abs(k[i] - k[j]) / std::max(std::abs(k[i]), std::abs(k[j])));
  }
  const double residual = std::sqrt(std::max(0.0, 1.0 - rank_one_share(kernels)));
  const MixedHeatResult m = heat_total_mixed(sc, {});
  const int nonzero = (m.ic_left != 0.0) + (m.ic_right != 0.0) + (m.bath_left != 0.0);
  const bool ok = nonzero >= 2 && max_diff > 1e-3 && residual > 1e-3;
  return {ok, fmt("%d nonzero terms, max pointwise kernel difference = %.3g, common-kernel fit residual = %.3g "
                  "(need > 1e-3)",
                  nonzero, max_diff, residual)};
}

Outcome perfect_mirror() {
  const double a = 100.0;
  const Material mirror{1e3 / a, 1e-4, 1e-3 / a};
  const double f = casimir_force(scenario({a, 10.0 * a, 10.0 * a}, mirror, mirror, uniform(0.0)), tol(1e-4), false).total;
  // Per-period spikes cancel the baseline to about 1e-8 of either, so the error
  // estimate is only trustworthy from rel_tol 1e-4 on.
  // The engine normalization carries 4 pi relative to the conventional pressure.
  const double ratio = std::abs(f) / (4.0 * std::numbers::pi) / (std::numbers::pi / (24.0 * a * a));
  return {std::abs(ratio - 1.0) <= 0.05, fmt("|F| / (pi/24a^2) = %.5f (tol 0.05)", ratio)};
}

Outcome quadrature_oracle() {
  struct Case {
    const char* name;
    Scenario sc;
    int kind;  // 0 heat total, 1 heat ic, 2 heat bath, 3 force thermal, 4 force zero point
  };
  const Material m{0.1, 0.1, 1e-3}, other{0.3, 0.05, 1e-2};
  const double hot = oracle::kelvin(600.0), cold = oracle::kelvin(300.0), warm = oracle::kelvin(350.0);
  const Temperatures t{hot, cold, hot, cold};
  const std::vector<Case> corpus = {
      {"heat d=10", scenario({100.0, 10.0, 10.0}, m, m, t), 0},
      {"heat d=100", scenario({100.0, 100.0, 100.0}, m, m, t), 0},
      {"heat d=1000", scenario({100.0, 1e3, 1e3}, m, m, t), 0},
      {"heat ic d=100", scenario({100.0, 100.0, 100.0}, m, m, t), 1},
      {"heat bath d=100", scenario({100.0, 100.0, 100.0}, m, m, t), 2},
      {"heat crossed d=1000", scenario({100.0, 1e3, 1e3}, m, m, {cold, warm, warm, cold}), 0},
      {"heat distinct a=30", scenario({30.0, 50.0, 200.0}, m, other, t), 0},
      {"force thermal d=100", scenario({100.0, 100.0, 100.0}, m, m, t), 3},
      {"force thermal d=1000", scenario({100.0, 1e3, 1e3}, m, other, t), 3},
      {"force zero point d=100", scenario({100.0, 100.0, 100.0}, m, m, t), 4},
  };
  const QuadratureConfig cfg;
  double worst = 0.0;
  std::string name;
  for (const Case& k : corpus) {
    const Cavity c = cavity_of(k.sc);
    const double heat_floor = 1e-14 * stefan_scale(k.sc.temps.max());
    QuadResult r;
    BatchIntegrand f;
    if (k.kind <= 2) {
      f = heat_kernel(c, k.sc.temps, k.kind != 2, k.kind != 1);
      r = integrate_semi_infinite(f, cfg, thermal_hints(c, k.sc.temps, cfg), heat_floor);
    } else if (k.kind == 3) {
      f = force_thermal_kernel(c, k.sc.temps);
      r = integrate_semi_infinite(f, cfg, thermal_hints(c, k.sc.temps, cfg), 1e-18);
    } else {
      // Above the transparency edge the zero-point kernel cancels over many
      // periods, which no uniform grid resolves; both rules share [0, 1].
      f = force_vacuum_kernel(c);
      r = integrate_interval(f, 0.0, 1.0, oscillation_partition(c, 0.0, 1.0), cfg, 1e-16);
      r.cutoff = 1.0;
    }
    const double gap = rel_gap(r.value, brute_force_oracle(f, r.cutoff, 1'000'000));
    if (gap >= worst) {
      worst = gap;
      name = k.name;
    }
  }
  return {worst <= 1e-4, fmt("max relative gap = %.3g on '%s' (tol 1e-4)", worst, name.c_str())};
}

struct Criterion {
  std::string_view id;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {"equilibrium_null", equilibrium_null},
    {"stefan_recovery", stefan_recovery},
    {"kernel_identity", kernel_identity},
    {"force_convergence", force_convergence},
    {"force_maximality", force_maximality},
    {"heat_convergence", heat_convergence},
    {"heat_minimum", heat_minimum},
    {"plasma_tuning", plasma_tuning},
    {"shielding_zero", shielding_zero},
    {"finite_width_lifshitz", finite_width_lifshitz},
    {"identical_plates", identical_plates},
    {"landauer_witness", landauer_witness},
    {"perfect_mirror", perfect_mirror},
    {"quadrature_oracle", quadrature_oracle},
};

}  // namespace

int main(int argc, char** argv) {
  const std::string_view only = argc > 1 ? argv[1] : "";
  int selected = 0, failed = 0;
  for (const Criterion& c : kCriteria) {
    if (!only.empty() && c.id != only) continue;
    ++selected;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", std::string(c.id).c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  if (selected == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", std::string(only).c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
