#include "casimir/contributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "casimir/thermal.hpp"

namespace casimir {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// |chi| at which the zero-point integration starts looking at the tail bound.
constexpr double kTransparencyTol = 1e-3;

void require_dissipative(const Scenario& sc) {
  if (sc.mat_L.dissipationless() || sc.mat_R.dissipationless())
    throw std::domain_error("bath term of a dissipationless plate vanishes identically; evaluate it as zero");
}

// Upper bound on |r| of a slab at omega, over all thicknesses.
double slab_reflection_bound(const Material& m, double omega) {
  const double rn = std::abs(interface_reflection(refractive_index(m, omega)));
  return rn >= 1.0 ? 1.0 : 2.0 * rn / (1.0 - rn * rn);
}

double force_floor(const Cavity& c, const QuadratureConfig& cfg) {
  return cfg.rel_tol * 1e-6 / (c.geom.a * c.geom.a);
}

double heat_floor(const Temperatures& t, const QuadratureConfig& cfg) {
  return cfg.rel_tol * M_PI * M_PI / 3.0 * t.max() * t.max();
}

double thermal_tail(const Temperatures& t, double omega) {
  double bound = 0.0;
  for (double T : {t.T_phi_L, t.T_phi_R, t.T_B_L, t.T_B_R}) {
    if (T == 0.0) continue;
    const double x = omega / T;
    bound += 8.0 * T * T * (x + 1.0) * std::exp(-x) / -std::expm1(-x);
  }
  return bound;
}

template <class Fn>
BatchIntegrand batched(const Cavity& c, Fn fn) {
  return [c, fn, batch = SpectralBatch{}](std::span<const double> x, std::span<double> fx) mutable {
    evaluate_spectral(c, x, batch);
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = fn(x[i], batch.at(i));
  };
}

}  // namespace

Cavity cavity_of(const Scenario& sc) { return {sc.geom, sc.mat_L, sc.mat_R}; }

double free_pressure_integrand(const Temperatures& t, double k) {
  return omega_coth(t.T_phi_L, k) + omega_coth(t.T_phi_R, k);
}

double force_ic_integrand(const Scenario& sc, double k) {
  const CoefficientSet c = cavity_coefficients(sc.geom, refractive_index(sc.mat_L, k), refractive_index(sc.mat_R, k), k);
  const double x = std::norm(c.r_L), y = std::norm(c.r_R);
  return (omega_coth(sc.temps.T_phi_L, k) * std::norm(c.t_L) * (1.0 + y) +
          omega_coth(sc.temps.T_phi_R, k) * std::norm(c.t_R) * (1.0 + x)) /
         std::norm(c.denom);
}

double force_bath_integrand(const Scenario& sc, double omega) {
  require_dissipative(sc);
  const CoefficientSet c =
      cavity_coefficients(sc.geom, refractive_index(sc.mat_L, omega), refractive_index(sc.mat_R, omega), omega);
  return omega_coth(sc.temps.T_B_L, omega) * c.bath_weight_lt * (1.0 + std::norm(c.r_R)) +
         omega_coth(sc.temps.T_B_R, omega) * c.bath_weight_gt * (1.0 + std::norm(c.r_L));
}

double heat_ic_integrand(const Scenario& sc, double k) {
  const CoefficientSet c = cavity_coefficients(sc.geom, refractive_index(sc.mat_L, k), refractive_index(sc.mat_R, k), k);
  const double x = std::norm(c.r_L), y = std::norm(c.r_R);
  return (omega_coth(sc.temps.T_phi_L, k) * std::norm(c.t_L) * (1.0 - y) -
          omega_coth(sc.temps.T_phi_R, k) * std::norm(c.t_R) * (1.0 - x)) /
         std::norm(c.denom);
}

double heat_bath_integrand(const Scenario& sc, double omega) {
  require_dissipative(sc);
  const CoefficientSet c =
      cavity_coefficients(sc.geom, refractive_index(sc.mat_L, omega), refractive_index(sc.mat_R, omega), omega);
  return omega_coth(sc.temps.T_B_L, omega) * c.bath_weight_lt * (1.0 - std::norm(c.r_R)) -
         omega_coth(sc.temps.T_B_R, omega) * c.bath_weight_gt * (1.0 - std::norm(c.r_L));
}

std::vector<double> oscillation_partition(const Cavity& c, double lo, double hi) {
  std::vector<double> bp;
  if (lo == 0.0) {
    for (double w = 0.5 * hi; w > 1e-18 * hi; w *= 0.5) bp.push_back(w);
  } else {
    for (double w = 2.0 * lo; w < hi; w *= 2.0) bp.push_back(w);
  }
  const auto slab_rate = [](const Material& m, double d, double w) {
    if (d == 0.0) return 0.0;
    const complex n = refractive_index(m, w);
    return w * n.imag() * d < 25.0 ? 2.0 * std::abs(n.real()) * d : 0.0;
  };
  // Summed in a fixed order so that mirrored cavities get identical breakpoints.
  const auto phase_rate = [&](double w) {
    const double l = slab_rate(c.left, c.geom.d_L, w), r = slab_rate(c.right, c.geom.d_R, w);
    return 2.0 * c.geom.a + std::min(l, r) + std::max(l, r);
  };
  for (double w = lo;;) {
    w += kTwoPi / phase_rate(w);
    if (w >= hi) break;
    bp.push_back(w);
  }
  std::sort(bp.begin(), bp.end());
  return bp;
}

complex cavity_round_trip(const Cavity& c, double w) {
  return slab_coefficients(refractive_index(c.left, w), c.geom.d_L, w).r *
         slab_coefficients(refractive_index(c.right, w), c.geom.d_R, w).r * unit_phase(2.0 * c.geom.a, w);
}

ScaleHints zero_point_hints(const Cavity& c, const QuadratureConfig& cfg) {
  const std::array<Material, 2> mats{c.left, c.right};
  ScaleHints h;
  // At least one cavity period, for plates that are transparent everywhere.
  h.cutoff = std::max(find_cutoff(mats, Temperatures{}, kTransparencyTol), M_PI / c.geom.a) * cfg.cutoff_factor;
  h.partition = [c](double lo, double hi) { return oscillation_partition(c, lo, hi); };
  h.round_trip = [c](double w) { return cavity_round_trip(c, w); };
  h.round_trip_bound = [c](double w) { return slab_reflection_bound(c.left, w) * slab_reflection_bound(c.right, w); };
  // The oscillating part of the kernel integrates by parts (all its phases
  // advance at least as fast as 2 w a); the rest decays like |r|^4.
  h.tail_bound = [c](double w) {
    const double rho = slab_reflection_bound(c.left, w) * slab_reflection_bound(c.right, w);
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 * w * rho / (c.geom.a * (1.0 - rho) * (1.0 - rho)) + 2.0 * w * w * rho * rho / 3.0;
  };
  return h;
}

ScaleHints thermal_hints(const Cavity& c, const Temperatures& t, const QuadratureConfig& cfg) {
  ScaleHints h;
  h.thermal_scale = t.max();
  h.cutoff = 50.0 * t.max() * cfg.cutoff_factor;
  h.partition = [c](double lo, double hi) { return oscillation_partition(c, lo, hi); };
  h.round_trip = [c](double w) { return cavity_round_trip(c, w); };
  h.round_trip_bound = [c](double w) { return slab_reflection_bound(c.left, w) * slab_reflection_bound(c.right, w); };
  h.tail_bound = [t](double w) { return thermal_tail(t, w); };
  return h;
}

BatchIntegrand force_vacuum_kernel(const Cavity& c) {
  return batched(c, [](double k, const SpectralPoint& p) { return k * (p.force_vacuum_L() + p.force_vacuum_R()); });
}

BatchIntegrand force_thermal_kernel(const Cavity& c, const Temperatures& t) {
  return batched(c, [t](double k, const SpectralPoint& p) {
    return 2.0 * (omega_occupation(t.T_phi_L, k) * p.force_ic_deficit_L() +
                  omega_occupation(t.T_phi_R, k) * p.force_ic_deficit_R() -
                  omega_occupation(t.T_B_L, k) * p.force_bath_L() - omega_occupation(t.T_B_R, k) * p.force_bath_R());
  });
}

BatchIntegrand heat_kernel(const Cavity& c, const Temperatures& t, bool ic, bool bath) {
  return batched(c, [t, ic, bath](double k, const SpectralPoint& p) {
    double v = 0.0;
    if (ic) v += omega_occupation(t.T_phi_L, k) * p.heat_ic_L() - omega_occupation(t.T_phi_R, k) * p.heat_ic_R();
    if (bath) v += omega_occupation(t.T_B_L, k) * p.heat_bath_L() - omega_occupation(t.T_B_R, k) * p.heat_bath_R();
    return 2.0 * v;
  });
}

ForceResult casimir_force(const Scenario& sc, const QuadratureConfig& cfg, bool breakdown) {
  validate(sc);
  validate(cfg);
  if (!sc.geom.finite()) throw std::invalid_argument("casimir_force: infinite plates belong to the limits module");
  const Cavity c = cavity_of(sc);
  const double floor = force_floor(c, cfg);

  ForceResult r;
  const QuadResult zp = integrate_semi_infinite(force_vacuum_kernel(c), cfg, zero_point_hints(c, cfg), floor);
  r.total = zp.value;
  r.quad_error = zp.error;
  r.window = zp.cutoff;
  if (sc.temps.max() > 0.0) {
    const QuadResult th =
        integrate_semi_infinite(force_thermal_kernel(c, sc.temps), cfg, thermal_hints(c, sc.temps, cfg), floor);
    r.total += th.value;
    r.quad_error += th.error;
    r.window = std::max(r.window, th.cutoff);
  }
  if (breakdown && !sc.mat_L.dissipationless() && !sc.mat_R.dissipationless()) {
    const Temperatures t = sc.temps;
    const BatchIntegrand bath = batched(c, [t](double k, const SpectralPoint& p) {
      return omega_coth(t.T_B_L, k) * p.force_bath_L() + omega_coth(t.T_B_R, k) * p.force_bath_R();
    });
    ScaleHints h = zero_point_hints(c, cfg);
    h.cutoff = r.window;
    h.tail_bound = nullptr;
    const QuadResult b = integrate_semi_infinite(bath, cfg, h, floor);
    r.bath_term = b.value;
    r.quad_error += b.error;
  }
  r.free_minus_ic = r.total + r.bath_term;
  return r;
}

HeatResult heat_flux(const Scenario& sc, const QuadratureConfig& cfg, bool breakdown) {
  validate(sc);
  validate(cfg);
  if (!sc.geom.finite()) throw std::invalid_argument("heat_flux: infinite plates belong to the limits module");
  HeatResult r;
  if (sc.temps.max() == 0.0) return r;
  const Cavity c = cavity_of(sc);
  const ScaleHints h = thermal_hints(c, sc.temps, cfg);
  const double floor = heat_floor(sc.temps, cfg);
  const QuadResult tot = integrate_semi_infinite(heat_kernel(c, sc.temps, true, true), cfg, h, floor);
  r.total = tot.value;
  r.quad_error = tot.error;
  if (breakdown) {
    const QuadResult ic = integrate_semi_infinite(heat_kernel(c, sc.temps, true, false), cfg, h, floor);
    r.q_ic = ic.value;
    r.q_b = r.total - r.q_ic;
    r.quad_error += ic.error;
  }
  return r;
}

MixedHeatResult heat_total_mixed(const Scenario& sc, const QuadratureConfig& cfg) {
  validate(sc);
  validate(cfg);
  if (!sc.geom.finite()) throw std::invalid_argument("heat_total_mixed: infinite plates belong to the limits module");
  require_dissipative(sc);
  MixedHeatResult r;
  if (sc.temps.max() == 0.0) return r;
  const Cavity c = cavity_of(sc);
  const Temperatures t = sc.temps;
  const ScaleHints h = thermal_hints(c, t, cfg);
  const double floor = heat_floor(t, cfg);
  const auto term = [&](int which) {
    return integrate_semi_infinite(batched(c,
                                           [t, which](double k, const SpectralPoint& p) {
                                             const double nbr = omega_occupation(t.T_B_R, k);
                                             switch (which) {
                                               case 0: return 2.0 * (omega_occupation(t.T_phi_L, k) - nbr) * p.heat_ic_L();
                                               case 1: return -2.0 * (omega_occupation(t.T_phi_R, k) - nbr) * p.heat_ic_R();
                                               default: {
                                                 const double eps = p.omt2_L - p.r2_L;
                                                 return 2.0 * (omega_occupation(t.T_B_L, k) - nbr) * eps *
                                                        (1.0 - p.r2_R) * p.inv_den2;
                                               }
                                             }
                                           }),
                                   cfg, h, floor);
  };
  const QuadResult a = term(0), b = term(1), e = term(2);
  r.ic_left = a.value;
  r.ic_right = b.value;
  r.bath_left = e.value;
  r.total = a.value + b.value + e.value;
  r.quad_error = a.error + b.error + e.error;
  return r;
}

double finite_width_lifshitz_force(const Geometry& g, const Material& L, const Material& R, double T,
                                   const QuadratureConfig& cfg, double* error) {
  validate(cfg);
  const Cavity c{g, L, R};
  const double floor = force_floor(c, cfg);
  const QuadResult zp = integrate_semi_infinite(
      batched(c, [](double k, const SpectralPoint& p) { return -4.0 * k * p.lifshitz_ratio(); }), cfg,
      zero_point_hints(c, cfg), floor);
  double value = zp.value, err = zp.error;
  if (T > 0.0) {
    const Temperatures t{T, T, T, T};
    const QuadResult th = integrate_semi_infinite(
        batched(c, [T](double k, const SpectralPoint& p) { return -8.0 * omega_occupation(T, k) * p.lifshitz_ratio(); }),
        cfg, thermal_hints(c, t, cfg), floor);
    value += th.value;
    err += th.error;
  }
  if (error) *error = err;
  return value;
}

}  // namespace casimir
