// seco: solve, bench and verify front end over the C API.
//
// exit codes: 0 ok, 1 internal, 2 config/input, 3 infeasible reference,
//             4 solver failure or non-convergence, 5 verification failure

#include "seco/seco.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int exit_code(seco_status s) {
  switch (s) {
    case SECO_OK: return 0;
    case SECO_ERR_INVALID_INPUT:
    case SECO_ERR_INVALID_CONFIG:
    case SECO_ERR_IO:
    case SECO_ERR_NULL_HANDLE: return 2;
    case SECO_ERR_INFEASIBLE_REFERENCE: return 3;
    case SECO_ERR_VERIFY_FAILED: return 5;
    case SECO_ERR_INTERNAL: return 1;
    default: return 4;
  }
}

int fail(seco_status s, const std::string& what) {
  std::cerr << "seco: " << what << ": " << seco_status_name(s) << ": " << seco_last_error() << '\n';
  return exit_code(s);
}

struct ConfigHandle {
  seco_config h = nullptr;
  ~ConfigHandle() { seco_config_free(h); }
};

int cmd_solve(const std::string& path, int nodes, const std::string& out_dir, long long seed) {
  ConfigHandle cfg;
  seco_status s = seco_config_load(path.c_str(), &cfg.h);
  if (s != SECO_OK) return fail(s, "loading " + path);
  if (nodes > 0 && (s = seco_config_set_nodes(cfg.h, nodes)) != SECO_OK) return fail(s, "--nodes");
  if (seed >= 0) seco_config_set_seed(cfg.h, static_cast<uint64_t>(seed));

  seco_result res = nullptr;
  if ((s = seco_solve(cfg.h, &res)) != SECO_OK) return fail(s, "solve");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    seco_result_free(res);
    std::cerr << "seco: cannot create " << out_dir << ": " << ec.message() << '\n';
    return 2;
  }
  const std::string traj = (std::filesystem::path(out_dir) / "trajectory.csv").string();
  const std::string rep = (std::filesystem::path(out_dir) / "report.json").string();
  seco_status ws = seco_result_write_trajectory(res, traj.c_str());
  if (ws == SECO_OK) ws = seco_result_write_report(res, rep.c_str());
  if (ws != SECO_OK) {
    seco_result_free(res);
    return fail(ws, "writing output");
  }

  double pos = 0.0, vel = 0.0, t[3] = {0.0, 0.0, 0.0};
  seco_result_errors(res, &pos, &vel);
  seco_result_times(res, t);
  const seco_status st = seco_result_status(res);
  std::printf("nodes %d  iterations %d  pipg %d  tof %.3f s\n", seco_result_nodes(res), seco_result_iterations(res),
              seco_result_pipg_iterations(res), seco_result_time_of_flight(res));
  std::printf("terminal error %.3f m  %.4f m/s\n", pos, vel);
  std::printf("time discretize %.4f s  parse %.4f s  solve %.4f s\n", t[0], t[1], t[2]);
  std::printf("status %s%s%s\n", seco_status_name(st), st == SECO_OK ? "" : ": ",
              st == SECO_OK ? "" : seco_result_message(res));
  std::printf("wrote %s, %s\n", traj.c_str(), rep.c_str());
  seco_result_free(res);
  return exit_code(st);
}

int cmd_bench(const std::string& path, int reps, const std::vector<int>& sweep, bool warm, const std::string& out) {
  ConfigHandle cfg;
  seco_status s = seco_config_load(path.c_str(), &cfg.h);
  if (s != SECO_OK) return fail(s, "loading " + path);
  seco_bench b = nullptr;
  s = seco_bench_run(cfg.h, reps, warm ? 1 : 0, sweep.empty() ? nullptr : sweep.data(), static_cast<int>(sweep.size()),
                     &b);
  if (s != SECO_OK) return fail(s, "bench");
  std::printf("%4s %5s %5s %12s %12s %12s %12s %12s %8s %8s\n", "N", "runs", "fail", "disc_ms", "parse_ms", "solve_ms",
              "total_ms", "total_sd_ms", "scp", "pipg");
  bool any_fail = false;
  for (int i = 0; i < seco_bench_rows(b); ++i) {
    seco_bench_row r;
    seco_bench_row_get(b, i, &r);
    any_fail = any_fail || r.failures > 0;
    std::printf("%4d %5d %5d %12.3f %12.3f %12.3f %12.3f %12.3f %8.2f %8.0f\n", r.nodes, r.runs, r.failures,
                1e3 * r.t_discretize.mean, 1e3 * r.t_parse.mean, 1e3 * r.t_solve.mean, 1e3 * r.t_total.mean,
                1e3 * r.t_total.stddev, r.scp_iterations.mean, r.pipg_iterations.mean);
  }
  if (!out.empty() && (s = seco_bench_write_csv(b, out.c_str())) != SECO_OK) {
    seco_bench_free(b);
    return fail(s, "writing " + out);
  }
  seco_bench_free(b);
  return any_fail ? 4 : 0;
}

int cmd_verify(const std::string& path, bool quick, bool fault) {
  ConfigHandle cfg;
  seco_status s = seco_config_load(path.c_str(), &cfg.h);
  if (s != SECO_OK) return fail(s, "loading " + path);
  seco_verify_report v = nullptr;
  if ((s = seco_verify(cfg.h, quick ? 1 : 0, fault ? 1 : 0, &v)) != SECO_OK) return fail(s, "verify");
  for (int i = 0; i < seco_verify_count(v); ++i) {
    const char* name = "";
    const char* detail = "";
    int passed = 0;
    double metric = 0.0, tol = 0.0;
    seco_verify_check(v, i, &name, &passed, &metric, &tol, &detail);
    std::printf("%-4s %-42s %10.3e <= %9.3e  %s\n", passed ? "PASS" : "FAIL", name, metric, tol, detail);
  }
  const bool ok = seco_verify_all_passed(v) != 0;
  seco_verify_free(v);
  return ok ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  seco_log_init_from_env();
  CLI::App app{"sequential conic optimization for 6-DoF powered descent"};
  app.require_subcommand(1);

  std::string cfg_path, out_dir = ".", bench_out;
  int nodes = 0, reps = 1;
  long long seed = -1;
  std::vector<int> sweep;
  bool warm = false, quick = false, fault = false;

  CLI::App* solve = app.add_subcommand("solve", "solve the guidance problem and write trajectory.csv and report.json");
  solve->add_option("config", cfg_path, "mission config (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--nodes", nodes, "override the node count")->check(CLI::Range(2, 1000));
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--seed", seed, "override the RNG seed")->check(CLI::NonNegativeNumber);

  CLI::App* bench = app.add_subcommand("bench", "repeated cold-start solves with timing statistics");
  bench->add_option("config", cfg_path, "mission config (JSON)")->required()->check(CLI::ExistingFile);
  bench->add_option("--reps", reps, "repetitions per node count")->required()->check(CLI::PositiveNumber);
  bench->add_option("--sweep", sweep, "node counts, e.g. 10,15,20,25")->delimiter(',');
  bench->add_flag("--warm", warm, "start each run from the previous solution");
  bench->add_option("--out", bench_out, "CSV output path");

  CLI::App* verify = app.add_subcommand("verify", "run the oracle suite");
  verify->add_option("config", cfg_path, "mission config (JSON)")->required()->check(CLI::ExistingFile);
  verify->add_flag("--quick", quick, "reduced sample counts");
  verify->add_flag("--inject-fault", fault, "perturb a dynamics block to exercise the failure path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*solve) return cmd_solve(cfg_path, nodes, out_dir, seed);
  if (*bench) return cmd_bench(cfg_path, reps, sweep, warm, bench_out);
  return cmd_verify(cfg_path, quick, fault);
}
