#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/material.hpp"
#include "casimir/scenario.hpp"

namespace casimir {

// Fills fx[i] = f(x[i]). Called with batches of nodes so that vectorized
// kernels can be used; calls are sequential and in a fixed order.
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> fx)>;

BatchIntegrand pointwise(std::function<double(double)> f);

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 4'000'000;
  double cutoff_factor = 1.0;
  bool resonance_splitting = true;

  bool operator==(const QuadratureConfig&) const = default;
};

void validate(const QuadratureConfig& c);

struct ScaleHints {
  double thermal_scale = 0.0;  // largest temperature
  double cutoff = 0.0;         // end of the explicit domain
  // Interior breakpoints for [lo, hi], e.g. one per oscillation period.
  std::function<std::vector<double>(double lo, double hi)> partition;
  // Round-trip factor rho(omega) of the cavity. Where rho crosses the positive
  // real axis with |rho| > 1/2, the resonance and its Lorentzian width are
  // bracketed by breakpoints (when resonance_splitting is on).
  std::function<std::complex<double>(double omega)> round_trip;
  // Optional upper bound on |rho| at omega; segments where it stays below 1/2
  // at both ends are not searched.
  std::function<double(double omega)> round_trip_bound;
  // Bound on |integral from x to infinity|; the domain is extended by
  // doubling until the bound is below a quarter of the tolerance.
  std::function<double(double x)> tail_bound;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // quadrature estimate plus tail bound
  double cutoff = 0.0;
  double tail = 0.0;
  std::size_t intervals = 0;
  std::size_t evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult best) : std::runtime_error(what), best_(best) {}
  const QuadResult& best() const noexcept { return best_; }

 private:
  QuadResult best_;
};

// Adaptive Gauss-Kronrod (7, 15) on [lo, hi], worst interval first.
// Converged when the summed error is <= max(rel_tol |value|, abs_tol, abs_floor).
QuadResult integrate_interval(const BatchIntegrand& f, double lo, double hi, std::vector<double> breakpoints,
                              const QuadratureConfig& cfg, double abs_floor = 0.0);

// Integral over [0, infinity) truncated at hints.cutoff (extended while the
// tail bound is too large). Throws QuadratureError on non-convergence.
QuadResult integrate_semi_infinite(const BatchIntegrand& f, const QuadratureConfig& cfg, const ScaleHints& hints,
                                   double abs_floor = 0.0);

// Smallest omega with |chi| <= tol for every material, and at least 50 max(T).
double find_cutoff(std::span<const Material> mats, const Temperatures& temps, double tol);

// Composite trapezoid on a uniform grid of n_points over [0, omega_max].
double brute_force_oracle(const BatchIntegrand& f, double omega_max, std::size_t n_points);

}  // namespace casimir
