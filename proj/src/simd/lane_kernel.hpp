// Lane-parallel spectral kernel. Included by one translation unit per
// instruction set, each wrapping it in its own namespace so that no inline
// symbol is shared between objects built with different target flags.
//
// The algebra follows slab_optics.cpp, with the emissivity written in terms of
// the interface reflection:
//   eps = tau2 |n+1|^2/(4|n|^2) [Re n (1-E) + Re n |r_n|^2 E (1-E)
//                                 + 2 Im n E Im(r_n (1 - e^{i phi}))]
// where E = exp(-2 w Im(n) d) and phi = 2 w Re(n) d.

// Expects <cstddef>, <experimental/simd> and casimir/spectral.hpp to be
// included beforehand, outside the wrapping namespace.

namespace stdx = std::experimental;

template <class V>
struct Cx {
  V re, im;
};

template <class V>
inline Cx<V> operator+(const Cx<V>& a, const Cx<V>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class V>
inline Cx<V> operator-(const Cx<V>& a, const Cx<V>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class V>
inline Cx<V> operator*(const Cx<V>& a, const Cx<V>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class V>
inline Cx<V> operator/(const Cx<V>& a, const Cx<V>& b) {
  const V inv = V(1.0) / (b.re * b.re + b.im * b.im);
  return {(a.re * b.re + a.im * b.im) * inv, (a.im * b.re - a.re * b.im) * inv};
}
template <class V>
inline V norm(const Cx<V>& a) {
  return a.re * a.re + a.im * a.im;
}

// Principal root, then the Im >= 0 branch.
template <class V>
inline Cx<V> sqrt_absorbing(const Cx<V>& z) {
  const V r = stdx::sqrt(z.re * z.re + z.im * z.im);
  V u = stdx::sqrt(V(0.5) * (r + stdx::abs(z.re)));
  const V safe_u = u;
  stdx::where(safe_u == V(0.0), u) = V(1.0);
  const V v = stdx::abs(z.im) / (V(2.0) * u);
  Cx<V> s;
  s.re = u;
  s.im = z.im / (V(2.0) * u);
  const auto neg = z.re < V(0.0);
  stdx::where(neg, s.re) = v;
  V signed_u = u;
  stdx::where(z.im < V(0.0), signed_u) = -u;
  stdx::where(neg, s.im) = signed_u;
  stdx::where(safe_u == V(0.0), s.re) = V(0.0);
  stdx::where(safe_u == V(0.0), s.im) = V(0.0);
  const auto flip = s.im < V(0.0);
  stdx::where(flip, s.re) = -s.re;
  stdx::where(flip, s.im) = -s.im;
  return s;
}

// log |1 - z|^2
template <class V>
inline V log_abs2_one_minus(const Cx<V>& z) {
  const V z2 = norm(z);
  const V small = stdx::log1p(z2 - V(2.0) * z.re);
  const V re = V(1.0) - z.re;
  V out = stdx::log(re * re + z.im * z.im);
  stdx::where(z2 < V(0.25), out) = small;
  return out;
}

template <class V>
struct SlabLanes {
  Cx<V> r;
  V r2, t2, omt2, emis;
};

// Lane version of casimir::reduced_phase.
template <class V>
inline V reduced_phase(V scale, V w) {
  const V hi = scale * w;
  const V lo = stdx::fma(scale, w, -hi);
  const V k = stdx::nearbyint(hi / V(6.283185307179586));
  V r = stdx::fma(-k, V(6.283185307179586), hi);
  r = stdx::fma(-k, V(2.4492935982947064e-16), r);
  return r + lo;
}

template <class V>
inline SlabLanes<V> slab_lanes(V w, double wpl2, double w02, double g, double d) {
  const V D = V(w02) - w * w;
  const V gw = V(g) * w;
  const V m = V(wpl2) / (D * D + gw * gw);
  const Cx<V> n = sqrt_absorbing(Cx<V>{V(1.0) + m * D, m * gw});
  const Cx<V> one{V(1.0), V(0.0)};
  const Cx<V> rn = (one - n) / (one + n);

  const V kd = w * n.im * V(d);
  const V E = stdx::exp(V(-2.0) * kd);
  const V omE = -stdx::expm1(V(-2.0) * kd);
  const V phi = V(2.0 * d) * w * n.re;
  const V c = stdx::cos(phi);
  const V s = stdx::sin(phi);
  const V sh = stdx::sin(V(0.5) * phi);
  const Cx<V> e{E * c, E * s};

  const Cx<V> rn2 = rn * rn;
  const Cx<V> z = rn2 * e;
  SlabLanes<V> out;
  out.r = rn * (one - e) / (one - z);
  out.r2 = norm(out.r);
  const V log_tau2 = log_abs2_one_minus(rn2) - log_abs2_one_minus(z);
  const V log_t2 = log_tau2 - V(2.0) * kd;
  out.t2 = stdx::exp(log_t2);
  out.omt2 = -stdx::expm1(log_t2);
  const V tau2 = stdx::exp(log_tau2);

  const V omc = V(2.0) * sh * sh;
  const V bracket = n.re * omE + n.re * norm(rn) * E * omE + V(2.0) * n.im * E * (rn.im * omc - rn.re * s);
  const Cx<V> np1 = n + one;
  out.emis = tau2 * norm(np1) / (V(4.0) * norm(n)) * bracket;
  return out;
}

template <class V>
void spectral_lanes(const casimir::detail::LaneInput& in, const double* omega, std::size_t n,
                    const casimir::detail::LaneOutput& out) {
  constexpr std::size_t W = V::size();
  alignas(64) double buf[W];
  alignas(64) double tmp[10][W];
  for (std::size_t i = 0; i < n; i += W) {
    const std::size_t m = n - i < W ? n - i : W;
    for (std::size_t j = 0; j < W; ++j) buf[j] = j < m ? omega[i + j] : omega[i];
    const V w(buf, stdx::element_aligned);

    const SlabLanes<V> L = slab_lanes(w, in.wpl2_L, in.w02_L, in.g_L, in.d_L);
    const SlabLanes<V> R = slab_lanes(w, in.wpl2_R, in.w02_R, in.g_R, in.d_R);
    const V ph = reduced_phase(V(2.0 * in.a), w);
    const Cx<V> gap{stdx::cos(ph), stdx::sin(ph)};
    const Cx<V> rho = L.r * R.r * gap;
    const V dre = V(1.0) - rho.re;
    const V inv = V(1.0) / (dre * dre + rho.im * rho.im);

    L.r2.copy_to(tmp[0], stdx::element_aligned);
    R.r2.copy_to(tmp[1], stdx::element_aligned);
    L.t2.copy_to(tmp[2], stdx::element_aligned);
    R.t2.copy_to(tmp[3], stdx::element_aligned);
    L.omt2.copy_to(tmp[4], stdx::element_aligned);
    R.omt2.copy_to(tmp[5], stdx::element_aligned);
    L.emis.copy_to(tmp[6], stdx::element_aligned);
    R.emis.copy_to(tmp[7], stdx::element_aligned);
    inv.copy_to(tmp[8], stdx::element_aligned);
    rho.re.copy_to(tmp[9], stdx::element_aligned);
    double* dst[10] = {out.r2_L, out.r2_R, out.t2_L, out.t2_R, out.omt2_L,
                       out.omt2_R, out.emis_L, out.emis_R, out.inv_den2, out.re_rho};
    for (int k = 0; k < 10; ++k)
      for (std::size_t j = 0; j < m; ++j) dst[k][i + j] = tmp[k][j];
  }
}
