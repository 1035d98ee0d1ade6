#include "casimir/slab_optics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace casimir {

namespace {

const complex I{0.0, 1.0};

// log |1 - z|^2 without losing digits when z is small.
double log_abs2_one_minus(complex z) {
  const double z2 = std::norm(z);
  if (z2 < 0.25) return std::log1p(z2 - 2.0 * z.real());
  const double re = 1.0 - z.real();
  return std::log(re * re + z.imag() * z.imag());
}

void check_finite(complex z, const char* name) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::runtime_error(std::string("cavity_coefficients: non-finite ") + name);
}

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw std::runtime_error(std::string("cavity_coefficients: non-finite ") + name);
}

struct SlabParts {
  complex rn;
  complex e;      // exp(2 i w n d)
  complex amp;    // t = amp * exp(i w n d)
  double kappa_d;  // w Im(n) d
  complex r;
};

SlabParts slab_parts(complex n, double d, double omega) {
  if (!(omega >= 0.0)) throw std::domain_error("slab: negative frequency");
  if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("slab: thickness must be finite and non-negative");
  SlabParts p;
  p.rn = interface_reflection(n);
  p.kappa_d = omega * n.imag() * d;
  p.e = d == 0.0 ? complex{1.0, 0.0} : std::exp(2.0 * I * omega * n * d);
  const complex q = 1.0 - p.rn * p.rn * p.e;
  p.amp = 4.0 * n / ((n + 1.0) * (n + 1.0)) / q;
  p.r = p.rn * (1.0 - p.e) / q;
  return p;
}

// Bracket of the bath kernel for one slab, divided by the opposite |t|^2 and
// by |t_own|^2 exp(2 kappa d) / |denom|^2 (which are multiplied back by the caller).
double emission_bracket(complex n, double d, double omega) {
  if (n.imag() == 0.0) return 0.0;
  const double kd = omega * n.imag() * d;
  const double E = std::exp(-2.0 * kd);
  const double one_minus_E = -std::expm1(-2.0 * kd);
  const double phi = 2.0 * omega * n.real() * d;
  const complex ph = std::polar(1.0, phi) - 1.0;
  const double inv4n2 = 1.0 / (4.0 * std::norm(n));
  // |E|^2 e^{-k a}[1 - e^{-2 k d}] and |F|^2 e^{k a}[e^{2 k d} - 1] after removing tau2/|denom|^2
  const double t_e = std::norm(n + 1.0) * inv4n2 * one_minus_E;
  const double t_f = std::norm(n - 1.0) * inv4n2 * E * one_minus_E;
  // E* F e^{-i w Re(n) a} (1 - e^{-2 i w Re(n) d}) up to the same factor
  const complex cross = std::conj(n + 1.0) * (n - 1.0) * inv4n2 * ph * E;
  return n.real() * (t_e + t_f) + 2.0 * n.imag() * cross.imag();
}

}  // namespace

bool Geometry::finite() const noexcept { return std::isfinite(d_L) && std::isfinite(d_R); }

void validate(const Geometry& g) {
  if (!(g.a > 0.0) || !std::isfinite(g.a)) throw std::invalid_argument("gap a must be positive and finite");
  if (!(g.d_L >= 0.0) || !(g.d_R >= 0.0)) throw std::invalid_argument("plate thickness must be non-negative");
}

double reduced_phase(double scale, double omega) {
  // 2 pi as a double-double.
  constexpr double kTwoPiHi = 6.283185307179586;
  constexpr double kTwoPiLo = 2.4492935982947064e-16;
  const double hi = scale * omega;
  if (!std::isfinite(hi)) return hi;
  const double lo = std::fma(scale, omega, -hi);
  const double k = std::nearbyint(hi / kTwoPiHi);
  double r = std::fma(-k, kTwoPiHi, hi);
  r = std::fma(-k, kTwoPiLo, r);
  return r + lo;
}

complex unit_phase(double scale, double omega) { return std::polar(1.0, reduced_phase(scale, omega)); }

complex interface_reflection(complex n) {
  const complex den = 1.0 + n;
  if (den == complex{0.0, 0.0}) throw std::domain_error("interface_reflection: n = -1");
  return (1.0 - n) / den;
}

SlabCoefficients slab_coefficients(complex n, double d, double omega) {
  const SlabParts p = slab_parts(n, d, omega);
  const complex t = d == 0.0 ? complex{1.0, 0.0} : p.amp * std::exp(I * omega * n * d);
  return {d == 0.0 ? complex{0.0, 0.0} : p.r, t};
}

SlabTransmittance slab_transmittance(complex n, double d, double omega) {
  const SlabParts p = slab_parts(n, d, omega);
  const complex rn2 = p.rn * p.rn;
  // |t|^2 = |1 - rn^2|^2 e^{-2 k d} / |1 - rn^2 e|^2
  const double log_tau2 = log_abs2_one_minus(rn2) - log_abs2_one_minus(rn2 * p.e);
  const double log_t2 = log_tau2 - 2.0 * p.kappa_d;
  return {std::exp(log_t2), -std::expm1(log_t2), std::exp(log_tau2)};
}

double slab_emissivity(complex n, double d, double omega) {
  const SlabTransmittance tr = slab_transmittance(n, d, omega);
  return tr.tau2 * emission_bracket(n, d, omega);
}

CoefficientSet cavity_coefficients(const Geometry& g, complex n_L, complex n_R, double omega) {
  if (!g.finite()) throw std::invalid_argument("cavity_coefficients: infinite plates belong to the limits module");
  validate(g);
  const SlabParts L = slab_parts(n_L, g.d_L, omega);
  const SlabParts R = slab_parts(n_R, g.d_R, omega);

  CoefficientSet c;
  c.n_L = n_L;
  c.n_R = n_R;
  const SlabCoefficients sL = slab_coefficients(n_L, g.d_L, omega);
  const SlabCoefficients sR = slab_coefficients(n_R, g.d_R, omega);
  c.r_L = sL.r;
  c.t_L = sL.t;
  c.r_R = sR.r;
  c.t_R = sR.t;
  c.denom = 1.0 - c.r_L * c.r_R * unit_phase(2.0 * g.a, omega);
  c.T_cav = c.t_L * c.t_R * std::exp(-I * omega * (g.d_L + g.d_R)) / c.denom;

  const complex gap = unit_phase(g.a, omega);
  c.C_gt = c.t_L * std::exp(-I * omega * g.d_L) / c.denom;
  c.D_gt = c.r_R * gap * c.C_gt;
  c.C_lt = c.t_R * std::exp(-I * omega * g.d_R) / c.denom;
  c.D_lt = c.r_L * gap * c.C_lt;

  // E, F with the exponentials of t_R (resp. t_L) folded in before evaluation.
  const double h = 0.5 * g.a;
  auto amp_d = [&](const SlabParts& p, double d) { return d == 0.0 ? complex{1.0, 0.0} : p.amp; };
  c.E_gt = (n_R + 1.0) / (2.0 * n_R) * c.t_L * amp_d(R, g.d_R) *
           std::exp(-I * omega * ((n_R - 1.0) * h + g.d_L)) / c.denom;
  c.F_gt = (n_R - 1.0) / (2.0 * n_R) * c.t_L * amp_d(R, g.d_R) *
           std::exp(I * omega * ((n_R + 1.0) * h + 2.0 * n_R * g.d_R - g.d_L)) / c.denom;
  c.E_lt = (n_L + 1.0) / (2.0 * n_L) * c.t_R * amp_d(L, g.d_L) *
           std::exp(-I * omega * ((n_L - 1.0) * h + g.d_R)) / c.denom;
  c.F_lt = (n_L - 1.0) / (2.0 * n_L) * c.t_R * amp_d(L, g.d_L) *
           std::exp(I * omega * ((n_L + 1.0) * h + 2.0 * n_L * g.d_L - g.d_R)) / c.denom;

  c.tau2_L = slab_transmittance(n_L, g.d_L, omega).tau2;
  c.tau2_R = slab_transmittance(n_R, g.d_R, omega).tau2;
  const double inv_den2 = 1.0 / std::norm(c.denom);
  c.bath_weight_lt = c.tau2_L * emission_bracket(n_L, g.d_L, omega) * inv_den2;
  c.bath_weight_gt = c.tau2_R * emission_bracket(n_R, g.d_R, omega) * inv_den2;

  check_finite(c.r_L, "r_L");
  check_finite(c.t_L, "t_L");
  check_finite(c.r_R, "r_R");
  check_finite(c.t_R, "t_R");
  check_finite(c.denom, "denom");
  check_finite(c.T_cav, "T_cav");
  check_finite(c.C_gt, "C_gt");
  check_finite(c.D_gt, "D_gt");
  check_finite(c.E_gt, "E_gt");
  check_finite(c.F_gt, "F_gt");
  check_finite(c.C_lt, "C_lt");
  check_finite(c.D_lt, "D_lt");
  check_finite(c.E_lt, "E_lt");
  check_finite(c.F_lt, "F_lt");
  check_finite(c.bath_weight_lt, "bath_weight_lt");
  check_finite(c.bath_weight_gt, "bath_weight_gt");
  return c;
}

}  // namespace casimir
