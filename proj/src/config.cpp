#include "casimir/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "casimir/units.hpp"

namespace casimir {

namespace pt = boost::property_tree;

namespace {

template <class E, std::size_t N>
E parse_enum(const std::string& text, const std::array<std::pair<const char*, E>, N>& names, const std::string& key) {
  for (const auto& [name, value] : names)
    if (text == name) return value;
  throw ConfigError("invalid value '" + text + "' for " + key);
}

template <class E, std::size_t N>
std::string enum_name(E v, const std::array<std::pair<const char*, E>, N>& names) {
  for (const auto& [name, value] : names)
    if (value == v) return name;
  return "?";
}

constexpr std::array<std::pair<const char*, SweepParameter>, 7> kParams{{{"thickness_d", SweepParameter::thickness_d},
                                                                          {"gap_a", SweepParameter::gap_a},
                                                                          {"T_phi_L", SweepParameter::T_phi_L},
                                                                          {"T_phi_R", SweepParameter::T_phi_R},
                                                                          {"T_B_L", SweepParameter::T_B_L},
                                                                          {"T_B_R", SweepParameter::T_B_R},
                                                                          {"omega_pl", SweepParameter::omega_pl}}};
constexpr std::array<std::pair<const char*, Spacing>, 2> kSpacing{{{"linear", Spacing::linear}, {"log", Spacing::log}}};
constexpr std::array<std::pair<const char*, Observables>, 3> kObs{
    {{"force", Observables::force}, {"heat", Observables::heat}, {"both", Observables::both}}};
constexpr std::array<std::pair<const char*, Normalization>, 3> kNorm{
    {{"stefan", Normalization::stefan}, {"halfspace", Normalization::halfspace}, {"none", Normalization::none}}};

const std::map<std::string, std::set<std::string>> kKeys{
    {"material.left", {"omega_pl", "omega_0", "gamma"}},
    {"material.right", {"omega_pl", "omega_0", "gamma"}},
    {"geometry", {"a", "d_L", "d_R"}},
    {"temperatures", {"T_phi_L", "T_phi_R", "T_B_L", "T_B_R"}},
    {"quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "cutoff_factor", "resonance_splitting"}},
    {"sweep", {"parameter", "min", "max", "finite_max", "points", "spacing", "observables", "normalization"}},
    {"search", {"d_min", "d_max", "grid_points"}},
};

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  const pt::ptree* section(const std::string& name) const {
    const auto it = tree_.find(name);
    return it == tree_.not_found() ? nullptr : &it->second;
  }

  std::optional<std::string> text(const std::string& sec, const std::string& key) const {
    const pt::ptree* s = section(sec);
    if (!s) return std::nullopt;
    const auto it = s->find(key);
    if (it == s->not_found()) return std::nullopt;
    return it->second.data();
  }

  double number(const std::string& sec, const std::string& key, std::optional<double> fallback = {}) const {
    const auto t = text(sec, key);
    if (!t) {
      if (fallback) return *fallback;
      throw ConfigError("missing key " + sec + "." + key);
    }
    return to_double(*t, sec + "." + key);
  }

  std::size_t count(const std::string& sec, const std::string& key, std::size_t fallback) const {
    const auto t = text(sec, key);
    if (!t) return fallback;
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(t->data(), t->data() + t->size(), v);
    if (ec != std::errc() || p != t->data() + t->size()) throw ConfigError("invalid integer for " + sec + "." + key);
    return v;
  }

  bool flag(const std::string& sec, const std::string& key, bool fallback) const {
    const auto t = text(sec, key);
    if (!t) return fallback;
    if (*t == "true" || *t == "1" || *t == "on") return true;
    if (*t == "false" || *t == "0" || *t == "off") return false;
    throw ConfigError("invalid boolean for " + sec + "." + key);
  }

  static double to_double(const std::string& t, const std::string& key) {
    if (t == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
      throw ConfigError("invalid number '" + t + "' for " + key);
    return v;
  }

 private:
  const pt::ptree& tree_;
};

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string to_string(SweepParameter p) { return enum_name(p, kParams); }
std::string to_string(Spacing s) { return enum_name(s, kSpacing); }
std::string to_string(Observables o) { return enum_name(o, kObs); }
std::string to_string(Normalization n) { return enum_name(n, kNorm); }

Scenario ScenarioConfig::scenario() const {
  Scenario s;
  s.geom = geom;
  s.mat_L = mat_L;
  s.mat_R = mat_R;
  s.temps = {units::kelvin_to_natural(T_phi_L_K), units::kelvin_to_natural(T_phi_R_K),
             units::kelvin_to_natural(T_B_L_K), units::kelvin_to_natural(T_B_R_K)};
  return s;
}

void validate(const SweepSpec& s) {
  if (s.points < 2) throw ConfigError("sweep.points must be at least 2");
  if (!(s.min <= s.max)) throw ConfigError("sweep.min must not exceed sweep.max");
  if (s.spacing == Spacing::log && !(s.min > 0.0)) throw ConfigError("log spacing requires sweep.min > 0");
  if (std::isinf(s.max)) {
    if (s.parameter != SweepParameter::thickness_d) throw ConfigError("only thickness_d sweeps may end at inf");
    if (!(s.min <= s.finite_max) || !std::isfinite(s.finite_max))
      throw ConfigError("sweep.finite_max must be finite and not below sweep.min");
  }
}

ScenarioConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& [sec, body] : tree) {
    const auto known = kKeys.find(sec);
    if (known == kKeys.end()) throw ConfigError("unknown section [" + sec + "]");
    for (const auto& [key, value] : body)
      if (!known->second.count(key)) throw ConfigError("unknown key " + sec + "." + key);
  }
  const Reader r(tree);
  ScenarioConfig c;
  const auto material = [&](const std::string& sec) {
    return Material{r.number(sec, "omega_pl"), r.number(sec, "omega_0"), r.number(sec, "gamma")};
  };
  c.mat_L = material("material.left");
  c.mat_R = material("material.right");
  c.geom = {r.number("geometry", "a"), r.number("geometry", "d_L"), r.number("geometry", "d_R")};
  c.T_phi_L_K = r.number("temperatures", "T_phi_L");
  c.T_phi_R_K = r.number("temperatures", "T_phi_R");
  c.T_B_L_K = r.number("temperatures", "T_B_L");
  c.T_B_R_K = r.number("temperatures", "T_B_R");

  const QuadratureConfig dq;
  c.quad.rel_tol = r.number("quadrature", "rel_tol", dq.rel_tol);
  c.quad.abs_tol = r.number("quadrature", "abs_tol", dq.abs_tol);
  c.quad.max_subdivisions = r.count("quadrature", "max_subdivisions", dq.max_subdivisions);
  c.quad.cutoff_factor = r.number("quadrature", "cutoff_factor", dq.cutoff_factor);
  c.quad.resonance_splitting = r.flag("quadrature", "resonance_splitting", dq.resonance_splitting);

  const SweepSpec ds;
  if (auto t = r.text("sweep", "parameter")) c.sweep.parameter = parse_enum(*t, kParams, "sweep.parameter");
  c.sweep.min = r.number("sweep", "min", ds.min);
  c.sweep.max = r.number("sweep", "max", ds.max);
  c.sweep.finite_max = r.number("sweep", "finite_max", ds.finite_max);
  c.sweep.points = r.count("sweep", "points", ds.points);
  if (auto t = r.text("sweep", "spacing")) c.sweep.spacing = parse_enum(*t, kSpacing, "sweep.spacing");
  if (auto t = r.text("sweep", "observables")) c.sweep.observables = parse_enum(*t, kObs, "sweep.observables");
  if (auto t = r.text("sweep", "normalization")) c.sweep.normalization = parse_enum(*t, kNorm, "sweep.normalization");

  const SearchSpec dsr;
  c.search.d_min = r.number("search", "d_min", dsr.d_min);
  c.search.d_max = r.number("search", "d_max", dsr.d_max);
  c.search.grid_points = r.count("search", "grid_points", dsr.grid_points);

  try {
    validate(c.mat_L);
    validate(c.mat_R);
    validate(c.geom);
    validate(c.quad);
    validate(c.sweep);
    for (double T : {c.T_phi_L_K, c.T_phi_R_K, c.T_B_L_K, c.T_B_R_K})
      if (!(T >= 0.0)) throw std::invalid_argument("temperatures must be non-negative");
    if (!(c.search.d_min > 0.0 && c.search.d_min < c.search.d_max) || c.search.grid_points < 3)
      throw std::invalid_argument("search needs 0 < d_min < d_max and grid_points >= 3");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in);
}

void write_config(std::ostream& out, const ScenarioConfig& c) {
  const auto f = format_double;
  for (const auto& [sec, m] : {std::pair{"material.left", c.mat_L}, std::pair{"material.right", c.mat_R}}) {
    out << "[" << sec << "]\n";
    out << "omega_pl = " << f(m.omega_pl) << "\nomega_0 = " << f(m.omega_0) << "\ngamma = " << f(m.gamma) << "\n\n";
  }
  out << "[geometry]\na = " << f(c.geom.a) << "\nd_L = " << f(c.geom.d_L) << "\nd_R = " << f(c.geom.d_R) << "\n\n";
  out << "[temperatures]\nT_phi_L = " << f(c.T_phi_L_K) << "\nT_phi_R = " << f(c.T_phi_R_K) << "\nT_B_L = "
      << f(c.T_B_L_K) << "\nT_B_R = " << f(c.T_B_R_K) << "\n\n";
  out << "[quadrature]\nrel_tol = " << f(c.quad.rel_tol) << "\nabs_tol = " << f(c.quad.abs_tol)
      << "\nmax_subdivisions = " << c.quad.max_subdivisions << "\ncutoff_factor = " << f(c.quad.cutoff_factor)
      << "\nresonance_splitting = " << (c.quad.resonance_splitting ? "true" : "false") << "\n\n";
  out << "[sweep]\nparameter = " << to_string(c.sweep.parameter) << "\nmin = " << f(c.sweep.min)
      << "\nmax = " << f(c.sweep.max) << "\nfinite_max = " << f(c.sweep.finite_max) << "\npoints = " << c.sweep.points << "\nspacing = " << to_string(c.sweep.spacing)
      << "\nobservables = " << to_string(c.sweep.observables)
      << "\nnormalization = " << to_string(c.sweep.normalization) << "\n\n";
  out << "[search]\nd_min = " << f(c.search.d_min) << "\nd_max = " << f(c.search.d_max)
      << "\ngrid_points = " << c.search.grid_points << "\n";
}

}  // namespace casimir
