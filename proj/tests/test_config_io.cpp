#include "testkit.hpp"

#include "seco/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace seco;

namespace {

std::string bundled_path() { return std::string(SECO_SOURCE_DIR) + "/configs/lunar_table1.json"; }

nlohmann::json bundled_json() { return nlohmann::json::parse(dump_config(load_config(bundled_path()))); }

}  // namespace

TEST_CASE("bundled config matches the built-in mission") {
  const MissionConfig a = load_config(bundled_path());
  const MissionConfig b = default_mission();
  const ConstraintParams &ca = a.problem.constraints, &cb = b.problem.constraints;
  CHECK(ca.T_min == cb.T_min);
  CHECK(ca.T_max == cb.T_max);
  CHECK(std::abs(ca.delta_max - cb.delta_max) < 1e-15);
  CHECK(std::abs(ca.mu_stc - cb.mu_stc) < 1e-15);
  CHECK((ca.r_i - cb.r_i).norm() == 0.0);
  CHECK((ca.q_i.vec() - cb.q_i.vec()).norm() < 1e-15);
  CHECK(a.problem.vehicle.m_i == b.problem.vehicle.m_i);
  CHECK(a.solver.N == b.solver.N);
  CHECK(a.solver.weights.w_vse == b.solver.weights.w_vse);
  CHECK(a.seed == b.seed);
}

TEST_CASE("angles are read in degrees and quaternions renormalized") {
  const MissionConfig m = load_config(bundled_path());
  const ConstraintParams& c = m.problem.constraints;
  CHECK(c.delta_max == doctest::Approx(5.0 * M_PI / 180.0).epsilon(1e-14));
  CHECK(c.omega_max == doctest::Approx(5.0 * M_PI / 180.0).epsilon(1e-14));
  CHECK(c.theta_stc == doctest::Approx(20.0 * M_PI / 180.0).epsilon(1e-14));
  CHECK(std::abs(c.q_i.norm() - 1.0) < 1e-15);
  CHECK(std::abs(c.q_f.norm() - 1.0) < 1e-15);
  // (-0.15, 0.3, -1, 1) / norm
  const double n = std::sqrt(0.15 * 0.15 + 0.3 * 0.3 + 2.0);
  CHECK(c.q_i.v.x() == doctest::Approx(-0.15 / n).epsilon(1e-14));
}

TEST_CASE("unknown keys are rejected with their path") {
  nlohmann::json j = bundled_json();
  j["solver"]["omgea"] = 3.0;
  try {
    parse_config(j.dump());
    FAIL("accepted an unknown key");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_config);
    CHECK(std::string(e.what()).find("omgea") != std::string::npos);
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
  }
}

TEST_CASE("invalid values are rejected") {
  nlohmann::json j = bundled_json();
  j["constraints"]["T_min"] = 4000.0;
  CHECK_THROWS_AS(parse_config(j.dump()), Error);

  j = bundled_json();
  j["schema_version"] = 2;
  CHECK_THROWS_AS(parse_config(j.dump()), Error);

  j = bundled_json();
  j["boundary"]["q_i"] = {0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(parse_config(j.dump()), Error);

  j = bundled_json();
  j["solver"]["N"] = 2.5;
  CHECK_THROWS_AS(parse_config(j.dump()), Error);

  CHECK_THROWS_AS(parse_config("{not json"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/seco.json"), Error);
}

TEST_CASE("missing keys keep their defaults") {
  const MissionConfig m = parse_config(R"({"schema_version": 1, "solver": {"N": 12}})");
  CHECK(m.solver.N == 12);
  CHECK(m.problem.constraints.T_max == default_mission().problem.constraints.T_max);
}

TEST_CASE("dump and parse round trip") {
  const MissionConfig m = load_config(bundled_path());
  const std::string once = dump_config(m);
  CHECK(dump_config(parse_config(once)) == once);
}

TEST_CASE("trajectory csv layout") {
  const MissionConfig m = default_mission();
  Trajectory t = initial_guess(m.problem, 6, 90.0);
  std::ostringstream os;
  write_trajectory_csv(os, t, m.problem);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  size_t cols = 0;
  while (std::getline(is, line)) {
    const size_t c = static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (rows == 0) cols = c;
    CHECK(c == cols);
    ++rows;
  }
  CHECK(rows == 7);
  CHECK(cols == 35);
  t.u.pop_back();
  std::ostringstream bad;
  CHECK_THROWS_AS(write_trajectory_csv(bad, t, m.problem), Error);
}

TEST_CASE("sample statistics") {
  const Stats one = stats({3.0});
  CHECK(one.mean == 3.0);
  CHECK(one.stddev == 0.0);
  const Stats s = stats({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
}
