#include "seco/seco.h"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Cfg {
  seco_config h = nullptr;
  ~Cfg() { seco_config_free(h); }
};

int count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("config handles") {
  Cfg c;
  REQUIRE(seco_config_default(&c.h) == SECO_OK);
  int n = 0;
  CHECK(seco_config_get_nodes(c.h, &n) == SECO_OK);
  CHECK(n == 15);
  CHECK(seco_config_set_nodes(c.h, 1) != SECO_OK);
  CHECK(std::string(seco_last_error()).size() > 0);
  CHECK(seco_config_set_nodes(c.h, 12) == SECO_OK);
  seco_config_get_nodes(c.h, &n);
  CHECK(n == 12);

  Cfg bad;
  CHECK(seco_config_parse("{\"schema_version\": 1, \"bogus\": 1}", &bad.h) == SECO_ERR_INVALID_CONFIG);
  CHECK(bad.h == nullptr);
  CHECK(seco_config_load("/nonexistent.json", &bad.h) != SECO_OK);
  CHECK(seco_config_default(nullptr) != SECO_OK);
  CHECK(std::string(seco_status_name(SECO_ERR_NOT_CONVERGED)).size() > 0);
  CHECK(seco_set_log_level("warn") == SECO_OK);
  CHECK(seco_set_log_level("loud") == SECO_ERR_INVALID_INPUT);
}

TEST_CASE("null handles") {
  int n = 0;
  CHECK(seco_config_get_nodes(nullptr, &n) == SECO_ERR_NULL_HANDLE);
  seco_result r = nullptr;
  CHECK(seco_solve(nullptr, &r) == SECO_ERR_NULL_HANDLE);
  double x[15];
  CHECK(seco_result_state(nullptr, 0, x) == SECO_ERR_NULL_HANDLE);
  CHECK(seco_bench_rows(nullptr) == 0);
  seco_config_free(nullptr);
  seco_result_free(nullptr);
  seco_bench_free(nullptr);
  seco_verify_free(nullptr);
}

TEST_CASE("solve and read back") {
  Cfg c;
  REQUIRE(seco_config_default(&c.h) == SECO_OK);
  seco_config_set_nodes(c.h, 10);
  seco_result r = nullptr;
  REQUIRE(seco_solve(c.h, &r) == SECO_OK);
  CHECK(seco_result_status(r) == SECO_OK);
  CHECK(seco_result_converged(r) == 1);
  CHECK(seco_result_nodes(r) == 10);
  CHECK(seco_result_iterations(r) >= 1);
  CHECK(seco_result_pipg_iterations(r) > 0);
  double pos = -1.0, vel = -1.0, t[3];
  CHECK(seco_result_errors(r, &pos, &vel) == SECO_OK);
  CHECK(pos <= 10.0);
  CHECK(vel <= 0.25);
  CHECK(seco_result_times(r, t) == SECO_OK);
  CHECK(t[2] > 0.0);
  CHECK(seco_result_time_of_flight(r) > 30.0);

  double x[15], xi[15], u[6];
  CHECK(seco_result_state(r, 0, x) == SECO_OK);
  CHECK(x[0] == 1500.0);
  CHECK(seco_result_virtual_state(r, 9, xi) == SECO_OK);
  CHECK(seco_result_control(r, 9, u) == SECO_OK);
  CHECK(u[0] >= 600.0 - 1e-6);
  CHECK(seco_result_state(r, 10, x) == SECO_ERR_INVALID_INPUT);
  CHECK(seco_result_control(r, -1, u) == SECO_ERR_INVALID_INPUT);
  CHECK(seco_result_state(r, 0, nullptr) == SECO_ERR_NULL_HANDLE);

  const fs::path dir = fs::temp_directory_path() / "seco_capi_test";
  fs::create_directories(dir);
  CHECK(seco_result_write_trajectory(r, (dir / "t.csv").string().c_str()) == SECO_OK);
  CHECK(seco_result_write_report(r, (dir / "r.json").string().c_str()) == SECO_OK);
  CHECK(count_lines(dir / "t.csv") == 11);
  CHECK(fs::file_size(dir / "r.json") > 0);
  CHECK(seco_result_write_trajectory(r, "/nonexistent/dir/t.csv") == SECO_ERR_IO);
  fs::remove_all(dir);
  seco_result_free(r);
}

TEST_CASE("verify") {
  Cfg c;
  REQUIRE(seco_config_default(&c.h) == SECO_OK);
  seco_verify_report v = nullptr;
  REQUIRE(seco_verify(c.h, 1, 0, &v) == SECO_OK);
  CHECK(seco_verify_count(v) > 0);
  for (int i = 0; i < seco_verify_count(v); ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    double metric = 0.0, tol = 0.0;
    REQUIRE(seco_verify_check(v, i, &name, &passed, &metric, &tol, &detail) == SECO_OK);
    CAPTURE(name);
    CHECK(passed == 1);
  }
  CHECK(seco_verify_all_passed(v) == 1);
  seco_verify_free(v);

  REQUIRE(seco_verify(c.h, 1, 1, &v) == SECO_OK);
  CHECK(seco_verify_all_passed(v) == 0);
  seco_verify_free(v);
}

TEST_CASE("bench") {
  Cfg c;
  REQUIRE(seco_config_default(&c.h) == SECO_OK);
  const int nodes[2] = {8, 10};
  seco_bench b = nullptr;
  REQUIRE(seco_bench_run(c.h, 1, 0, nodes, 2, &b) == SECO_OK);
  REQUIRE(seco_bench_rows(b) == 2);
  seco_bench_row row;
  CHECK(seco_bench_row_get(b, 1, &row) == SECO_OK);
  CHECK(row.nodes == 10);
  CHECK(row.runs + row.failures == 1);
  CHECK(seco_bench_row_get(b, 2, &row) == SECO_ERR_INVALID_INPUT);
  const fs::path p = fs::temp_directory_path() / "seco_capi_bench.csv";
  CHECK(seco_bench_write_csv(b, p.string().c_str()) == SECO_OK);
  CHECK(count_lines(p) == 3);
  fs::remove(p);
  seco_bench_free(b);
  CHECK(seco_bench_run(c.h, 0, 0, nodes, 2, &b) == SECO_ERR_INVALID_INPUT);
}
