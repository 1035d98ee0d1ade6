#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

namespace casimir {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr std::size_t kNodes = 15;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double lo, hi, value, error;
};

// Neumaier compensated sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class Rule {
 public:
  explicit Rule(const BatchIntegrand& f) : f_(f) {}

  // Evaluates every segment in place (value and error).
  void apply(std::span<Segment> segs) {
    x_.resize(segs.size() * kNodes);
    fx_.resize(x_.size());
    for (std::size_t s = 0; s < segs.size(); ++s) {
      const double c = 0.5 * (segs[s].lo + segs[s].hi);
      const double h = 0.5 * (segs[s].hi - segs[s].lo);
      double* x = &x_[s * kNodes];
      x[0] = c;
      for (int j = 0; j < 7; ++j) {
        x[1 + 2 * j] = c - h * xgk[j];
        x[2 + 2 * j] = c + h * xgk[j];
      }
    }
    f_(x_, fx_);
    evaluations_ += x_.size();
    for (std::size_t s = 0; s < segs.size(); ++s) estimate(segs[s], &fx_[s * kNodes]);
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  static void estimate(Segment& seg, const double* fv) {
    for (std::size_t i = 0; i < kNodes; ++i)
      if (!std::isfinite(fv[i])) throw std::runtime_error("quadrature: integrand is not finite");
    const double h = 0.5 * (seg.hi - seg.lo);
    double resk = wgk[7] * fv[0];
    double resg = wg[3] * fv[0];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
      const double pair = fv[1 + 2 * j] + fv[2 + 2 * j];
      resk += wgk[j] * pair;
      resabs += wgk[j] * (std::abs(fv[1 + 2 * j]) + std::abs(fv[2 + 2 * j]));
      if (j % 2 == 1) resg += wg[j / 2] * pair;
    }
    const double mean = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fv[0] - mean);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(fv[1 + 2 * j] - mean) + std::abs(fv[2 + 2 * j] - mean));
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    seg.value = resk * h;
    seg.error = err;
  }

  const BatchIntegrand& f_;
  std::vector<double> x_, fx_;
  std::size_t evaluations_ = 0;
};

QuadResult summarize(std::vector<Segment>& segs, std::size_t evaluations) {
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  Accumulator v, e;
  for (const Segment& s : segs) {
    v.add(s.value);
    e.add(s.error);
  }
  QuadResult r;
  r.value = v.value();
  r.error = e.value();
  r.intervals = segs.size();
  r.evaluations = evaluations;
  return r;
}

// Resonances of the round trip inside [u, v]: zeros of Im rho with Re rho > 0.
void seed_resonances(const std::function<std::complex<double>(double)>& rho, double u, double v,
                     std::vector<double>& bp) {
  constexpr int kSamples = 8;  // partition segments span at most 2 pi of phase
  const double h = (v - u) / kSamples;
  double w0 = u;
  std::complex<double> r0 = rho(u);
  for (int j = 1; j <= kSamples; ++j) {
    const double w1 = j == kSamples ? v : u + h * j;
    const std::complex<double> r1 = rho(w1);
    if ((r0.imag() < 0.0) != (r1.imag() < 0.0) && r0.real() + r1.real() > 0.0 &&
        std::max(std::abs(r0), std::abs(r1)) > 0.5) {
      double lo = w0, hi = w1;
      const bool lo_negative = r0.imag() < 0.0;
      for (int it = 0; it < 60 && hi - lo > 4.0 * kEps * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((rho(mid).imag() < 0.0) == lo_negative ? lo : hi) = mid;
      }
      const double wm = 0.5 * (lo + hi);
      const double mag = std::abs(rho(wm));
      const double dw = 1e-3 * h;
      const double rate = std::abs(std::arg(rho(wm + dw) / rho(wm - dw))) / (2.0 * dw);
      if (mag > 0.5 && mag < 1.0 && rate > 0.0) {
        bp.push_back(wm);
        const double width = (1.0 - mag) / rate;
        // Geometric breakpoints until the Lorentzian tail is as wide as a sample step.
        for (double f = 1.0; f * width < h; f *= 4.0) {
          bp.push_back(wm - f * width);
          bp.push_back(wm + f * width);
        }
      }
    }
    w0 = w1;
    r0 = r1;
  }
}

std::vector<double> seeded_breakpoints(const QuadratureConfig& cfg, const ScaleHints& hints, double lo, double hi) {
  std::vector<double> bp;
  if (hints.partition) bp = hints.partition(lo, hi);
  if (cfg.resonance_splitting && hints.round_trip) {
    std::vector<double> edges{lo};
    std::vector<double> sorted = bp;
    std::sort(sorted.begin(), sorted.end());
    for (double b : sorted)
      if (b > edges.back() && b < hi) edges.push_back(b);
    edges.push_back(hi);
    const auto& bound = hints.round_trip_bound;
    double b0 = bound ? bound(edges[0]) : 1.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double b1 = bound ? bound(edges[i + 1]) : 1.0;
      if (b0 > 0.5 || b1 > 0.5) seed_resonances(hints.round_trip, edges[i], edges[i + 1], bp);
      b0 = b1;
    }
  }
  return bp;
}

}  // namespace

BatchIntegrand pointwise(std::function<double(double)> f) {
  return [f = std::move(f)](std::span<const double> x, std::span<double> fx) {
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = f(x[i]);
  };
}

void validate(const QuadratureConfig& c) {
  if (!(c.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(c.abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be non-negative");
  if (c.max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be at least 1");
  if (!(c.cutoff_factor > 0.0)) throw std::invalid_argument("cutoff_factor must be positive");
}

QuadResult integrate_interval(const BatchIntegrand& f, double lo, double hi, std::vector<double> breakpoints,
                              const QuadratureConfig& cfg, double abs_floor) {
  validate(cfg);
  if (!(hi > lo)) throw std::invalid_argument("integrate_interval: empty interval");
  std::vector<double> edges{lo};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double b : breakpoints)
    if (b > edges.back() && b < hi) edges.push_back(b);
  edges.push_back(hi);

  std::vector<Segment> segs(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) segs[i] = {edges[i], edges[i + 1], 0.0, 0.0};
  Rule rule(f);
  constexpr std::size_t kChunk = 256;
  for (std::size_t i = 0; i < segs.size(); i += kChunk)
    rule.apply(std::span<Segment>(segs).subspan(i, std::min(kChunk, segs.size() - i)));

  const auto tolerance = [&](double value) { return std::max({cfg.rel_tol * std::abs(value), cfg.abs_tol, abs_floor}); };

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> heap;
  for (std::size_t i = 0; i < segs.size(); ++i) heap.push({segs[i].error, i});

  const auto totals = [&]() {
    Accumulator v, e;
    for (const Segment& s : segs) {
      v.add(s.value);
      e.add(s.error);
    }
    return std::pair<double, double>{v.value(), e.value()};
  };
  auto [value, error] = totals();

  std::size_t bisections = 0;
  std::size_t since_resum = 0;
  std::vector<std::size_t> picked;
  std::vector<Segment> children;
  constexpr std::size_t kBatch = 16;
  while (error > tolerance(value)) {
    if (heap.empty()) {
      QuadResult best = summarize(segs, rule.evaluations());
      throw QuadratureError("quadrature: roundoff limits the attainable accuracy", best);
    }
    if (bisections >= cfg.max_subdivisions) {
      QuadResult best = summarize(segs, rule.evaluations());
      throw QuadratureError("quadrature: max_subdivisions reached before convergence", best);
    }
    picked.clear();
    children.clear();
    while (!heap.empty() && picked.size() < kBatch && bisections + picked.size() < cfg.max_subdivisions) {
      const std::size_t i = heap.top().second;
      heap.pop();
      const Segment& s = segs[i];
      const double mid = 0.5 * (s.lo + s.hi);
      if (!(mid > s.lo && mid < s.hi) || (s.hi - s.lo) < 64.0 * kEps * std::max(std::abs(s.lo), std::abs(s.hi)))
        continue;  // cannot be refined further; keep its estimate
      picked.push_back(i);
      children.push_back({s.lo, mid, 0.0, 0.0});
      children.push_back({mid, s.hi, 0.0, 0.0});
      if (!heap.empty() && heap.top().first < 1e-3 * s.error) break;
    }
    if (picked.empty()) continue;
    rule.apply(children);
    for (std::size_t k = 0; k < picked.size(); ++k) {
      const std::size_t i = picked[k];
      value += children[2 * k].value + children[2 * k + 1].value - segs[i].value;
      error += children[2 * k].error + children[2 * k + 1].error - segs[i].error;
      segs[i] = children[2 * k];
      segs.push_back(children[2 * k + 1]);
      heap.push({segs[i].error, i});
      heap.push({segs.back().error, segs.size() - 1});
    }
    bisections += picked.size();
    since_resum += picked.size();
    if (since_resum >= 4096 || error <= tolerance(value)) {
      std::tie(value, error) = totals();
      since_resum = 0;
    }
  }
  return summarize(segs, rule.evaluations());
}

QuadResult integrate_semi_infinite(const BatchIntegrand& f, const QuadratureConfig& cfg, const ScaleHints& hints,
                                   double abs_floor) {
  validate(cfg);
  if (!(hints.cutoff > 0.0)) throw std::invalid_argument("integrate_semi_infinite: cutoff hint must be positive");
  double cut = hints.cutoff;
  QuadResult total = integrate_interval(f, 0.0, cut, seeded_breakpoints(cfg, hints, 0.0, cut), cfg, abs_floor);
  if (hints.tail_bound) {
    for (int doubling = 0;; ++doubling) {
      const double tol = std::max({cfg.rel_tol * std::abs(total.value), cfg.abs_tol, abs_floor});
      const double tail = hints.tail_bound(cut);
      total.tail = tail;
      if (tail <= 0.25 * tol) break;
      if (doubling == 48) {
        total.cutoff = cut;
        total.error += tail;
        throw QuadratureError("quadrature: tail bound does not fall below tolerance", total);
      }
      const double floor = std::max(abs_floor, 0.25 * cfg.rel_tol * std::abs(total.value));
      const QuadResult ext = integrate_interval(f, cut, 2.0 * cut, seeded_breakpoints(cfg, hints, cut, 2.0 * cut), cfg, floor);
      total.value += ext.value;
      total.error += ext.error;
      total.intervals += ext.intervals;
      total.evaluations += ext.evaluations;
      cut *= 2.0;
    }
  }
  total.cutoff = cut;
  total.error += total.tail;
  return total;
}

double find_cutoff(std::span<const Material> mats, const Temperatures& temps, double tol) {
  if (mats.empty()) throw std::invalid_argument("find_cutoff: no materials");
  double w = 50.0 * temps.max();
  for (const Material& m : mats) w = std::max(w, transparency_frequency(m, tol));
  return w;
}

double brute_force_oracle(const BatchIntegrand& f, double omega_max, std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("brute_force_oracle: need at least two points");
  const double h = omega_max / static_cast<double>(n_points - 1);
  constexpr std::size_t kChunk = 8192;
  std::vector<double> x, fx;
  Accumulator sum;
  for (std::size_t i0 = 0; i0 < n_points; i0 += kChunk) {
    const std::size_t m = std::min(kChunk, n_points - i0);
    x.resize(m);
    fx.resize(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = i0 + j == n_points - 1 ? omega_max : h * static_cast<double>(i0 + j);
    f(x, fx);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t i = i0 + j;
      sum.add((i == 0 || i == n_points - 1) ? 0.5 * fx[j] : fx[j]);
    }
  }
  return h * sum.value();
}

}  // namespace casimir
