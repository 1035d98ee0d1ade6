#pragma once

// Reference implementations used only by the tests. They follow different
// algebra from the library on purpose.

#include <cmath>
#include <complex>
#include <random>

#include "casimir/scenario.hpp"
#include "casimir/units.hpp"

namespace oracle {

using cd = std::complex<double>;
using cld = std::complex<long double>;

// Characteristic-matrix evaluation of a slab of index n and thickness d in
// vacuum at normal incidence. Faces at x = 0 and x = d.
struct SlabRT {
  cd r, t;
};

inline SlabRT transfer_matrix(cd n, double d, double omega) {
  const cd delta = n * omega * d;
  const cd c = std::cos(delta), s = std::sin(delta);
  const cd i{0.0, 1.0};
  const cd m11 = c, m12 = -i * s / n, m21 = -i * n * s, m22 = c;
  const cd den = m11 + m12 + m21 + m22;
  return {(m11 + m12 - m21 - m22) / den, 2.0 / den};
}

// 1 - |r|^2 - |t|^2 and 1 - |t|^2 in extended precision.
inline long double slab_absorption_ld(cd n_in, double d, double omega) {
  const cld n(n_in.real(), n_in.imag());
  const cld i(0.0L, 1.0L);
  const cld rn = (1.0L - n) / (1.0L + n);
  const cld e = std::exp(2.0L * i * (long double)omega * n * (long double)d);
  const cld q = 1.0L - rn * rn * e;
  const cld r = rn * (1.0L - e) / q;
  const cld t = 4.0L * n / ((n + 1.0L) * (n + 1.0L)) * std::exp(i * (long double)omega * n * (long double)d) / q;
  return 1.0L - std::norm(r) - std::norm(t);
}

inline long double slab_one_minus_t2_ld(cd n_in, double d, double omega) {
  const cld n(n_in.real(), n_in.imag());
  const cld i(0.0L, 1.0L);
  const cld rn = (1.0L - n) / (1.0L + n);
  const cld e = std::exp(2.0L * i * (long double)omega * n * (long double)d);
  const cld t = 4.0L * n / ((n + 1.0L) * (n + 1.0L)) * std::exp(i * (long double)omega * n * (long double)d) /
                (1.0L - rn * rn * e);
  return 1.0L - std::norm(t);
}

// Log-uniform draw on [lo, hi].
inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(g));
}

inline casimir::Material random_material(std::mt19937_64& g) {
  return {log_uniform(g, 0.02, 0.5), log_uniform(g, 0.02, 0.5), log_uniform(g, 1e-3, 5e-2)};
}

inline double kelvin(double K) { return casimir::units::kelvin_to_natural(K); }

}  // namespace oracle
