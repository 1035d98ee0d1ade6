#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "casimir/contributions.hpp"
#include "casimir/limits.hpp"
#include "casimir/sweep.hpp"

using namespace casimir;

namespace {

ScenarioConfig base(double TL, double TR) {
  ScenarioConfig c;
  c.geom = {100.0, 100.0, 100.0};
  c.mat_L = c.mat_R = {0.1, 0.1, 1e-3};
  c.T_phi_L_K = c.T_B_L_K = TL;
  c.T_phi_R_K = c.T_B_R_K = TR;
  return c;
}

// Crossed temperatures: the fields of one side share the bath temperature of the other.
ScenarioConfig crossed(double T) {
  ScenarioConfig c = base(300.0, T);
  c.T_B_L_K = T;
  c.T_B_R_K = 300.0;
  c.search = {1e4, 1e9, 41};
  return c;
}

std::string data_section(const SweepTable& t) {
  std::ostringstream out;
  write_table(out, t, OutputFormat::csv);
  std::string s = out.str();
  return s.substr(s.find("\nthickness_d["));
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("sweep values") {
    SweepSpec s;
    s.min = 1.0;
    s.max = 1e4;
    s.points = 5;
    const auto v = sweep_values(s);
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 1.0);
    CHECK(v.back() == 1e4);
    CHECK(v[2] == doctest::Approx(100.0).epsilon(1e-14));
    s.spacing = Spacing::linear;
    s.min = 0.0;
    CHECK(sweep_values(s)[1] == doctest::Approx(2500.0).epsilon(1e-14));
    s.spacing = Spacing::log;
    s.min = 1.0;
    s.max = INFINITY;
    s.finite_max = 1e3;
    s.points = 4;
    const auto w = sweep_values(s);
    REQUIRE(w.size() == 4);
    CHECK(w[2] == 1e3);
    CHECK(std::isinf(w[3]));
  }

  TEST_CASE("sweep points set the swept parameter") {
    const ScenarioConfig c = base(600.0, 300.0);
    CHECK(at_point(c, SweepParameter::thickness_d, 7.0).geom == Geometry{100.0, 7.0, 7.0});
    CHECK(at_point(c, SweepParameter::gap_a, 7.0).geom.a == 7.0);
    CHECK(at_point(c, SweepParameter::T_B_R, 7.0).T_B_R_K == 7.0);
    const ScenarioConfig w = at_point(c, SweepParameter::omega_pl, 0.4);
    CHECK(w.mat_L.omega_pl == 0.4);
    CHECK(w.mat_R.omega_pl == 0.4);
    CHECK(w.mat_L.gamma == c.mat_L.gamma);
  }

  TEST_CASE("single point equals the scalar interfaces") {
    ScenarioConfig c = base(600.0, 300.0);
    c.sweep.observables = Observables::both;
    const SweepRow r = evaluate_point(c, 30.0);
    REQUIRE(r.status == RowStatus::ok);
    ScenarioConfig p = c;
    p.geom.d_L = p.geom.d_R = 30.0;
    const Scenario sc = p.scenario();
    const ForceResult f = casimir_force(sc, c.quad);
    const HeatResult h = heat_flux(sc, c.quad);
    CHECK(r.swept_value == 30.0);
    CHECK(r.force_total == f.total);
    CHECK(r.force_bath == f.bath_term);
    CHECK(r.force_free_minus_ic == f.free_minus_ic);
    CHECK(r.q_total == h.total);
    CHECK(r.q_ic == h.q_ic);
    CHECK(r.q_b == h.q_b);
    CHECK(r.denominator == stefan_flux(sc.temps.T_phi_L, sc.temps.T_phi_R));
  }

  TEST_CASE("normalization bookkeeping") {
    for (Normalization n : {Normalization::stefan, Normalization::halfspace, Normalization::none}) {
      ScenarioConfig c = base(600.0, 300.0);
      c.sweep = {SweepParameter::thickness_d, 1.0, 1e4, 1e8, 4, Spacing::log, Observables::heat, n};
      for (const SweepRow& r : run_sweep(c, 2).rows) {
        REQUIRE(r.status == RowStatus::ok);
        CHECK(std::abs(r.q_normalized * r.denominator - r.q_total) <= 1e-12 * std::abs(r.q_total));
        CHECK(std::isnan(r.force_total));
      }
    }
  }

  TEST_CASE("an infinite thickness is routed to the half-space limits") {
    ScenarioConfig c = base(600.0, 300.0);
    c.sweep = {SweepParameter::thickness_d, 10.0, INFINITY, 100.0, 3, Spacing::log, Observables::both,
               Normalization::halfspace};
    const SweepTable t = run_sweep(c, 1);
    REQUIRE(t.rows.size() == 3);
    const SweepRow& r = t.rows.back();
    REQUIRE(r.status == RowStatus::ok);
    const Scenario sc = c.scenario();
    CHECK(r.force_total == infinite_plates_force(100.0, c.mat_L, c.mat_R, sc.temps, c.quad));
    CHECK(r.q_total == landauer_heat_halfspace(100.0, c.mat_L, c.mat_R, sc.temps.T_B_L, sc.temps.T_B_R, c.quad));
    CHECK(r.q_ic == 0.0);
    CHECK(r.q_b == r.q_total);
    CHECK(r.q_normalized == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("determinism") {
    ScenarioConfig c = base(600.0, 300.0);
    c.sweep = {SweepParameter::thickness_d, 1.0, 1e3, 1e8, 5, Spacing::log, Observables::both, Normalization::stefan};
    const std::string a = data_section(run_sweep(c, 1));
    const std::string b = data_section(run_sweep(c, 4));
    CHECK(a == b);
    CHECK(a.find("nonconverged") == std::string::npos);
  }

  TEST_CASE("failures are reported per row") {
    ScenarioConfig c = base(600.0, 300.0);
    c.quad.max_subdivisions = 1;
    c.quad.rel_tol = 1e-14;
    const SweepRow r = evaluate_point(c, 1e4);
    CHECK(r.status == RowStatus::nonconverged);
    CHECK(!r.message.empty());
  }

  TEST_CASE("table formats") {
    ScenarioConfig c = base(600.0, 300.0);
    c.sweep = {SweepParameter::thickness_d, 10.0, INFINITY, 100.0, 3, Spacing::log, Observables::heat,
               Normalization::stefan};
    const SweepTable t = run_sweep(c, 1);
    std::ostringstream csv;
    write_table(csv, t, OutputFormat::csv, "sweep --config x.ini");
    const std::string s = csv.str();
    CHECK(s.rfind("# casimir ", 0) == 0);
    CHECK(s.find("# command = sweep --config x.ini\n") != std::string::npos);
    CHECK(s.find("# [geometry]\n") != std::string::npos);
    CHECK(s.find("\nthickness_d[nm],force_total[nm^-2],force_free_minus_ic[nm^-2],force_bath[nm^-2],"
                 "force_window[nm^-1],q_total[nm^-2],q_ic[nm^-2],q_b[nm^-2],q_normalized[1],denominator[nm^-2],"
                 "quad_error[nm^-2],status\n") != std::string::npos);
    CHECK(s.find("\ninf,nan,") != std::string::npos);

    std::ostringstream rec;
    write_table(rec, t, OutputFormat::records);
    std::istringstream lines(rec.str());
    std::string line;
    std::getline(lines, line);
    const auto meta = nlohmann::json::parse(line);
    CHECK(meta["meta"]["parameter"] == "thickness_d");
    int rows = 0;
    nlohmann::json last;
    while (std::getline(lines, line)) {
      last = nlohmann::json::parse(line);
      ++rows;
    }
    CHECK(rows == 3);
    CHECK(last["thickness_d"] == "inf");
    CHECK(last["force_total"].is_null());
    CHECK(last["status"] == "ok");
    CHECK(last["q_total"].get<double>() == t.rows.back().q_total);
  }

  TEST_CASE("searches at equilibrium") {
    ScenarioConfig c = base(300.0, 300.0);
    CHECK(find_heat_minimum(c).status == SearchStatus::flat_zero);
    CHECK(find_heat_zero(c).status == SearchStatus::flat_zero);
  }

  TEST_CASE("no crossing without crossed temperatures") {
    ScenarioConfig c = base(600.0, 300.0);
    c.search = {1.0, 1e4, 5};
    const HeatZero z = find_heat_zero(c);
    CHECK(z.status == SearchStatus::no_crossing);
    CHECK(z.q_lo > 0.0);
    CHECK(z.q_hi > 0.0);
  }

  TEST_CASE("a grid minimum at the boundary is monotone") {
    ScenarioConfig c = base(600.0, 300.0);
    c.search = {1.0, 30.0, 5};
    const HeatMinimum m = find_heat_minimum(c, 2);
    CHECK(m.status == SearchStatus::monotone);
    CHECK(m.grid.size() == 5);
    CHECK(m.q_d0 == stefan_flux(c.scenario().temps.T_phi_L, c.scenario().temps.T_phi_R));
  }

  TEST_CASE("zero crossing moves with the temperature difference") {
    double prev = INFINITY;
    for (double T : {350.0, 500.0, 800.0}) {
      const ScenarioConfig c = crossed(T);
      const HeatZero z = find_heat_zero(c);
      REQUIRE(z.status == SearchStatus::found);
      CHECK(z.bracket_lo <= z.d_star);
      CHECK(z.d_star <= z.bracket_hi);
      CHECK(z.bracket_hi / z.bracket_lo <= 1.0 + 1e-4);
      CHECK(z.q_lo * z.q_hi <= 0.0);
      CHECK(z.d_star < prev);
      prev = z.d_star;
    }
  }
}
