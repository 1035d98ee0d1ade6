#include "casimir/limits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/contributions.hpp"
#include "casimir/thermal.hpp"

namespace casimir {

namespace {

constexpr double kTransparencyTol = 1e-3;

struct HalfSpaces {
  complex nL, nR, rL, rR;
  double x, y, re_rho, inv_den2;
};

complex halfspace_round_trip(complex rL, complex rR, double a, double w) { return rL * rR * unit_phase(2.0 * a, w); }

complex halfspace_round_trip(double a, const Material& L, const Material& R, double w) {
  return halfspace_round_trip(interface_reflection(refractive_index(L, w)), interface_reflection(refractive_index(R, w)),
                              a, w);
}

HalfSpaces halfspaces(double a, const Material& L, const Material& R, double w) {
  HalfSpaces h;
  h.nL = refractive_index(L, w);
  h.nR = refractive_index(R, w);
  h.rL = interface_reflection(h.nL);
  h.rR = interface_reflection(h.nR);
  h.x = std::norm(h.rL);
  h.y = std::norm(h.rR);
  const complex rho = halfspace_round_trip(h.rL, h.rR, a, w);
  h.re_rho = rho.real();
  h.inv_den2 = 1.0 / std::norm(1.0 - rho);
  return h;
}

void check(double a, const Material& L, const Material& R) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("gap a must be positive");
  validate(L);
  validate(R);
}

std::vector<double> cavity_partition(double a, double lo, double hi) {
  std::vector<double> bp;
  if (lo == 0.0) {
    for (double w = 0.5 * hi; w > 1e-18 * hi; w *= 0.5) bp.push_back(w);
  }
  const double step = M_PI / a;
  for (double w = lo + step; w < hi; w += step) bp.push_back(w);
  std::sort(bp.begin(), bp.end());
  return bp;
}

ScaleHints vacuum_hints(double a, const Material& L, const Material& R, const QuadratureConfig& cfg) {
  const std::array<Material, 2> mats{L, R};
  ScaleHints h;
  // At least one cavity period, for plates that are transparent everywhere.
  h.cutoff = std::max(find_cutoff(mats, Temperatures{}, kTransparencyTol), M_PI / a) * cfg.cutoff_factor;
  h.partition = [a](double lo, double hi) { return cavity_partition(a, lo, hi); };
  h.round_trip = [a, L, R](double w) { return halfspace_round_trip(a, L, R, w); };
  h.round_trip_bound = [L, R](double w) {
    return std::abs(interface_reflection(refractive_index(L, w)) * interface_reflection(refractive_index(R, w)));
  };
  h.tail_bound = [a, L, R](double w) {
    const HalfSpaces s = halfspaces(a, L, R, w);
    const double rho = std::sqrt(s.x * s.y);
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 * w * rho / (a * (1.0 - rho) * (1.0 - rho)) + 2.0 * w * w * rho * rho / 3.0;
  };
  return h;
}

ScaleHints warm_hints(double a, const Material& L, const Material& R, double T, const QuadratureConfig& cfg) {
  ScaleHints h;
  h.round_trip = [a, L, R](double w) { return halfspace_round_trip(a, L, R, w); };
  h.round_trip_bound = [L, R](double w) {
    return std::abs(interface_reflection(refractive_index(L, w)) * interface_reflection(refractive_index(R, w)));
  };
  h.thermal_scale = T;
  h.cutoff = 50.0 * T * cfg.cutoff_factor;
  h.partition = [a](double lo, double hi) { return cavity_partition(a, lo, hi); };
  h.tail_bound = [T](double w) {
    const double x = w / T;
    return 8.0 * T * T * (x + 1.0) * std::exp(-x) / -std::expm1(-x);
  };
  return h;
}

double floor_for(double a, const QuadratureConfig& cfg) { return cfg.rel_tol * 1e-6 / (a * a); }

}  // namespace

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::d_zero: return "d_zero";
    case Regime::d_infinite: return "d_infinite";
    case Regime::equilibrium: return "equilibrium";
    case Regime::identical_plates: return "identical_plates";
  }
  return "unknown";
}

LimitReport make_report(double finite_value, double limit_value, Regime regime, double floor) {
  return {finite_value, limit_value, std::abs(finite_value - limit_value) / std::max(std::abs(limit_value), floor),
          regime};
}

double stefan_flux(double T_L, double T_R) {
  if (!(T_L >= 0.0) || !(T_R >= 0.0)) throw std::invalid_argument("stefan_flux: negative temperature");
  return M_PI * M_PI / 3.0 * (T_L * T_L - T_R * T_R);
}

double lifshitz_noneq_force(double a, const Material& L, const Material& R, double T_L, double T_R,
                            const QuadratureConfig& cfg, double* error) {
  check(a, L, R);
  validate(cfg);
  // Bracket 1 - (1-x)(1+y)/|den|^2 = (x - y + 2xy - 2 Re rho)/|den|^2, exact and
  // without cancellation; the two brackets sum to 4 (xy - Re rho)/|den|^2.
  const double floor = floor_for(a, cfg);
  const QuadResult zp = integrate_semi_infinite(
      pointwise([=](double w) {
        const HalfSpaces s = halfspaces(a, L, R, w);
        return 4.0 * w * (s.x * s.y - s.re_rho) * s.inv_den2;
      }),
      cfg, vacuum_hints(a, L, R, cfg), floor);
  double value = zp.value, err = zp.error;
  const double T = std::max(T_L, T_R);
  if (T > 0.0) {
    const QuadResult th = integrate_semi_infinite(
        pointwise([=](double w) {
          const HalfSpaces s = halfspaces(a, L, R, w);
          const double bl = (s.x - s.y + 2.0 * s.x * s.y - 2.0 * s.re_rho) * s.inv_den2;
          const double br = (s.y - s.x + 2.0 * s.x * s.y - 2.0 * s.re_rho) * s.inv_den2;
          return 2.0 * (omega_occupation(T_L, w) * bl + omega_occupation(T_R, w) * br);
        }),
        cfg, warm_hints(a, L, R, T, cfg), floor);
    value += th.value;
    err += th.error;
  }
  if (error) *error = err;
  return value;
}

double lifshitz_eq_force(double a, const Material& L, const Material& R, double T, const QuadratureConfig& cfg,
                         double* error) {
  check(a, L, R);
  validate(cfg);
  const double floor = floor_for(a, cfg);
  const auto ratio = [=](double w) {
    const HalfSpaces s = halfspaces(a, L, R, w);
    return (s.re_rho - s.x * s.y) * s.inv_den2;
  };
  const QuadResult zp = integrate_semi_infinite(pointwise([=](double w) { return -4.0 * w * ratio(w); }), cfg,
                                                vacuum_hints(a, L, R, cfg), floor);
  double value = zp.value, err = zp.error;
  if (T > 0.0) {
    const QuadResult th = integrate_semi_infinite(
        pointwise([=](double w) { return -8.0 * omega_occupation(T, w) * ratio(w); }), cfg, warm_hints(a, L, R, T, cfg),
        floor);
    value += th.value;
    err += th.error;
  }
  if (error) *error = err;
  return value;
}

double infinite_plates_force(double a, const Material& L, const Material& R, const Temperatures& t,
                             const QuadratureConfig& cfg, double* error) {
  validate(t);
  const double base = lifshitz_noneq_force(a, L, R, t.T_B_L, t.T_B_R, cfg, error);
  return base + M_PI * M_PI / 3.0 *
                    (t.T_phi_L * t.T_phi_L + t.T_phi_R * t.T_phi_R - t.T_B_L * t.T_B_L - t.T_B_R * t.T_B_R);
}

double halfspace_bath_integrand(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                                double omega) {
  const HalfSpaces s = halfspaces(a, L, R, omega);
  return (omega_coth(T_BL, omega) * (1.0 - s.x) * (1.0 + s.y) + omega_coth(T_BR, omega) * (1.0 - s.y) * (1.0 + s.x)) *
         s.inv_den2;
}

double halfspace_bath_integrand_green(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                                      double omega) {
  const complex I{0.0, 1.0};
  const auto side = [&](const Material& own, const Material& other, double T) {
    const complex n = refractive_index(own, omega);
    const complex rn_other = interface_reflection(refractive_index(other, omega));
    const complex den = 1.0 - interface_reflection(n) * rn_other * unit_phase(2.0 * a, omega);
    // s = -i omega
    const complex A = 2.0 * n / (n + 1.0) * std::exp(-I * omega * (n - 1.0) * (0.5 * a)) / den;
    const complex B = -2.0 * n / (n + 1.0) * rn_other * std::exp(-I * omega * (n - 3.0) * (0.5 * a)) / den;
    const double decay = std::exp(-omega * n.imag() * a);
    return omega_coth(T, omega) * n.real() * (std::norm(A) + std::norm(B)) * decay / std::norm(n);
  };
  return side(L, R, T_BL) + side(R, L, T_BR);
}

double halfspace_bath_pressure(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                               double window, const QuadratureConfig& cfg, double* error) {
  check(a, L, R);
  validate(cfg);
  if (!(window > 0.0)) throw std::invalid_argument("halfspace_bath_pressure: window must be positive");
  const QuadResult q =
      integrate_interval(pointwise([=](double w) { return halfspace_bath_integrand(a, L, R, T_BL, T_BR, w); }), 0.0,
                         window, cavity_partition(a, 0.0, window), cfg, floor_for(a, cfg));
  if (error) *error = q.error;
  return q.value;
}

double landauer_heat_halfspace(double a, const Material& L, const Material& R, double T_BL, double T_BR,
                               const QuadratureConfig& cfg, double* error) {
  check(a, L, R);
  validate(cfg);
  const double T = std::max(T_BL, T_BR);
  if (error) *error = 0.0;
  if (T == 0.0 || T_BL == T_BR) return 0.0;
  const QuadResult q = integrate_semi_infinite(
      pointwise([=](double w) {
        const HalfSpaces s = halfspaces(a, L, R, w);
        return 2.0 * (omega_occupation(T_BL, w) - omega_occupation(T_BR, w)) * (1.0 - s.x) * (1.0 - s.y) * s.inv_den2;
      }),
      cfg, warm_hints(a, L, R, T, cfg), cfg.rel_tol * M_PI * M_PI / 3.0 * T * T);
  if (error) *error = q.error;
  return q.value;
}

IdenticalPlatesHeat identical_plates_heat(double a, double d, const Material& m, double T_L, double T_R,
                                          const QuadratureConfig& cfg) {
  check(a, m, m);
  validate(cfg);
  if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("identical_plates_heat: finite d required");
  IdenticalPlatesHeat out;
  const double T = std::max(T_L, T_R);
  if (T == 0.0 || T_L == T_R) return out;

  struct Parts {
    double transmission;  // (1-|r|^2) |t|^2 / |den|^2
    double emission;      // (1-|r|^2) |t|^2 |n+1|^2 G / (4|n|^2 |den|^2)
  };
  const auto parts = [=](double w) {
    const complex n = refractive_index(m, w);
    const SlabCoefficients s = slab_coefficients(n, d, w);
    const SlabTransmittance tr = slab_transmittance(n, d, w);
    const complex rn = interface_reflection(n);
    const double r2 = std::norm(s.r);
    const double inv_den2 = 1.0 / std::norm(1.0 - s.r * s.r * unit_phase(2.0 * a, w));
    // |t|^2 G written with tau2 = |t|^2 e^{2 k d} so that nothing overflows.
    const double kd = w * n.imag() * d;
    const double E = std::exp(-2.0 * kd);
    const double omE = -std::expm1(-2.0 * kd);
    const complex osc = 1.0 - std::polar(1.0, 2.0 * w * n.real() * d);
    const double t2G =
        tr.tau2 * (n.real() * omE + n.real() * std::norm(rn) * E * omE + 2.0 * n.imag() * E * (rn * osc).imag());
    const double common = (1.0 - r2) * inv_den2;
    return Parts{common * tr.t2, common * std::norm(n + 1.0) / (4.0 * std::norm(n)) * t2G};
  };
  const double floor = cfg.rel_tol * M_PI * M_PI / 3.0 * T * T;
  const Cavity cav{{a, d, d}, m, m};
  const ScaleHints h = thermal_hints(cav, Temperatures{T_L, T_R, T_L, T_R}, cfg);
  const auto dn = [=](double w) { return 2.0 * (omega_occupation(T_L, w) - omega_occupation(T_R, w)); };
  out.q_ic = integrate_semi_infinite(pointwise([=](double w) { return dn(w) * parts(w).transmission; }), cfg, h, floor).value;
  out.q_b = integrate_semi_infinite(pointwise([=](double w) { return dn(w) * parts(w).emission; }), cfg, h, floor).value;
  out.total = integrate_semi_infinite(
                  pointwise([=](double w) {
                    const Parts p = parts(w);
                    return dn(w) * (p.transmission + p.emission);
                  }),
                  cfg, h, floor)
                  .value;
  return out;
}

}  // namespace casimir
