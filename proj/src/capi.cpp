#include "seco/seco.h"

#include "seco/config.hpp"
#include "seco/error.hpp"
#include "seco/io.hpp"
#include "seco/log.hpp"
#include "seco/verify.hpp"

#include <exception>
#include <memory>
#include <string>
#include <vector>

struct seco_config_s {
  seco::MissionConfig m;
};

struct seco_result_s {
  seco::Problem problem;
  seco::Trajectory traj;
  seco::SecoReport report;
};

struct seco_bench_s {
  std::vector<seco::BenchRow> rows;
};

struct seco_verify_s {
  std::vector<seco::CheckResult> checks;
};

namespace {

thread_local std::string g_last_error;

seco_status code_of(seco::ErrorCode c) { return static_cast<seco_status>(static_cast<int>(c)); }

template <class F>
seco_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SECO_OK;
  } catch (const seco::Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SECO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return SECO_ERR_INTERNAL;
  }
}

seco_status null_handle() {
  g_last_error = "null handle or output pointer";
  return SECO_ERR_NULL_HANDLE;
}

seco_stats to_c(const seco::Stats& s) { return {s.mean, s.stddev, s.min, s.max}; }

template <int Dim, class Seq>
seco_status copy_node(const seco_result_s* r, const Seq& seq, int k, double* out) {
  if (!r || !out) return null_handle();
  if (k < 0 || k >= static_cast<int>(seq.size())) {
    g_last_error = "node index out of range";
    return SECO_ERR_INVALID_INPUT;
  }
  for (int i = 0; i < Dim; ++i) out[i] = seq[k](i);
  return SECO_OK;
}

}  // namespace

extern "C" {

SECO_API const char* seco_status_name(seco_status s) {
  switch (s) {
    case SECO_OK: return "ok";
    case SECO_ERR_NULL_HANDLE: return "null-handle";
    case SECO_ERR_INTERNAL: return "internal-error";
    default:
      if (s >= SECO_ERR_INVALID_INPUT && s <= SECO_ERR_VERIFY_FAILED)
        return seco::error_name(static_cast<seco::ErrorCode>(static_cast<int>(s)));
      return "unknown";
  }
}

SECO_API const char* seco_last_error(void) { return g_last_error.c_str(); }

SECO_API seco_status seco_set_log_level(const char* level) {
  if (!level) return null_handle();
  return guard([&] { seco::log::set_level(level); });
}

SECO_API void seco_log_init_from_env(void) {
  try {
    seco::log::init_from_env();
  } catch (...) {
  }
}

SECO_API seco_status seco_config_default(seco_config* out) {
  if (!out) return null_handle();
  *out = nullptr;
  return guard([&] { *out = new seco_config_s{seco::default_mission()}; });
}

SECO_API seco_status seco_config_load(const char* path, seco_config* out) {
  if (!path || !out) return null_handle();
  *out = nullptr;
  return guard([&] { *out = new seco_config_s{seco::load_config(path)}; });
}

SECO_API seco_status seco_config_parse(const char* json_text, seco_config* out) {
  if (!json_text || !out) return null_handle();
  *out = nullptr;
  return guard([&] { *out = new seco_config_s{seco::parse_config(json_text)}; });
}

SECO_API seco_status seco_config_set_nodes(seco_config cfg, int nodes) {
  if (!cfg) return null_handle();
  return guard([&] {
    seco::SecoConfig s = cfg->m.solver;
    s.N = nodes;
    s.validate();
    cfg->m.solver = s;
  });
}

SECO_API seco_status seco_config_set_seed(seco_config cfg, uint64_t seed) {
  if (!cfg) return null_handle();
  cfg->m.seed = seed;
  cfg->m.solver.spectral.seed = seed;
  return SECO_OK;
}

SECO_API seco_status seco_config_get_nodes(seco_config cfg, int* nodes) {
  if (!cfg || !nodes) return null_handle();
  *nodes = cfg->m.solver.N;
  return SECO_OK;
}

SECO_API void seco_config_free(seco_config cfg) { delete cfg; }

SECO_API seco_status seco_solve(seco_config cfg, seco_result* out) {
  if (!cfg || !out) return null_handle();
  *out = nullptr;
  return guard([&] {
    auto r = std::make_unique<seco_result_s>();
    r->problem = cfg->m.problem;
    r->traj = seco::solve(cfg->m.solver, cfg->m.problem, r->report);
    *out = r.release();
  });
}

SECO_API seco_status seco_result_status(seco_result r) {
  if (!r) return null_handle();
  return r->report.status ? code_of(*r->report.status) : SECO_OK;
}

SECO_API const char* seco_result_message(seco_result r) { return r ? r->report.message.c_str() : ""; }

SECO_API int seco_result_converged(seco_result r) { return r && r->report.converged ? 1 : 0; }

SECO_API int seco_result_nodes(seco_result r) { return r ? static_cast<int>(r->traj.x.size()) : 0; }

SECO_API int seco_result_iterations(seco_result r) {
  return r ? static_cast<int>(r->report.iterations.size()) : 0;
}

SECO_API int seco_result_pipg_iterations(seco_result r) { return r ? r->report.pipg_iterations : 0; }

SECO_API seco_status seco_result_errors(seco_result r, double* pos_err, double* vel_err) {
  if (!r || !pos_err || !vel_err) return null_handle();
  *pos_err = r->report.pos_err;
  *vel_err = r->report.vel_err;
  return SECO_OK;
}

SECO_API seco_status seco_result_times(seco_result r, double* t3) {
  if (!r || !t3) return null_handle();
  t3[0] = r->report.t_discretize;
  t3[1] = r->report.t_parse;
  t3[2] = r->report.t_solve;
  return SECO_OK;
}

SECO_API double seco_result_time_of_flight(seco_result r) { return r ? r->traj.s : 0.0; }

SECO_API seco_status seco_result_state(seco_result r, int k, double* x15) {
  return r ? copy_node<seco::kNx>(r, r->traj.x, k, x15) : null_handle();
}

SECO_API seco_status seco_result_virtual_state(seco_result r, int k, double* x15) {
  return r ? copy_node<seco::kNx>(r, r->traj.xi, k, x15) : null_handle();
}

SECO_API seco_status seco_result_control(seco_result r, int k, double* u6) {
  return r ? copy_node<seco::kNu>(r, r->traj.u, k, u6) : null_handle();
}

SECO_API seco_status seco_result_write_trajectory(seco_result r, const char* path) {
  if (!r || !path) return null_handle();
  return guard([&] { seco::write_trajectory_csv(std::string(path), r->traj, r->problem); });
}

SECO_API seco_status seco_result_write_report(seco_result r, const char* path) {
  if (!r || !path) return null_handle();
  return guard([&] { seco::write_report_json(path, r->report, r->traj); });
}

SECO_API void seco_result_free(seco_result r) { delete r; }

SECO_API seco_status seco_bench_run(seco_config cfg, int reps, int warm, const int* nodes, int n_nodes,
                                    seco_bench* out) {
  if (!cfg || !out || (n_nodes > 0 && !nodes)) return null_handle();
  *out = nullptr;
  return guard([&] {
    auto b = std::make_unique<seco_bench_s>();
    if (n_nodes <= 0) {
      b->rows.push_back(seco::run_bench(cfg->m, cfg->m.solver.N, reps, warm != 0));
    } else {
      for (int i = 0; i < n_nodes; ++i) b->rows.push_back(seco::run_bench(cfg->m, nodes[i], reps, warm != 0));
    }
    *out = b.release();
  });
}

SECO_API int seco_bench_rows(seco_bench b) { return b ? static_cast<int>(b->rows.size()) : 0; }

SECO_API seco_status seco_bench_row_get(seco_bench b, int i, seco_bench_row* row) {
  if (!b || !row) return null_handle();
  if (i < 0 || i >= static_cast<int>(b->rows.size())) {
    g_last_error = "bench row index out of range";
    return SECO_ERR_INVALID_INPUT;
  }
  const seco::BenchRow& r = b->rows[i];
  row->nodes = r.N;
  row->runs = r.runs;
  row->failures = r.failures;
  row->t_discretize = to_c(r.t_discretize);
  row->t_parse = to_c(r.t_parse);
  row->t_solve = to_c(r.t_solve);
  row->t_total = to_c(r.t_total);
  row->scp_iterations = to_c(r.scp_iterations);
  row->pipg_iterations = to_c(r.pipg_iterations);
  return SECO_OK;
}

SECO_API seco_status seco_bench_write_csv(seco_bench b, const char* path) {
  if (!b || !path) return null_handle();
  return guard([&] { seco::write_bench_csv(std::string(path), b->rows); });
}

SECO_API void seco_bench_free(seco_bench b) { delete b; }

SECO_API seco_status seco_verify(seco_config cfg, int quick, int inject_fault, seco_verify_report* out) {
  if (!cfg || !out) return null_handle();
  *out = nullptr;
  return guard([&] {
    auto v = std::make_unique<seco_verify_s>();
    seco::VerifyOptions o;
    o.quick = quick != 0;
    o.inject_fault = inject_fault != 0;
    v->checks = seco::run_verify(cfg->m, o);
    *out = v.release();
  });
}

SECO_API int seco_verify_count(seco_verify_report v) { return v ? static_cast<int>(v->checks.size()) : 0; }

SECO_API seco_status seco_verify_check(seco_verify_report v, int i, const char** name, int* passed,
                                       double* metric, double* tolerance, const char** detail) {
  if (!v) return null_handle();
  if (i < 0 || i >= static_cast<int>(v->checks.size())) {
    g_last_error = "check index out of range";
    return SECO_ERR_INVALID_INPUT;
  }
  const seco::CheckResult& c = v->checks[i];
  if (name) *name = c.name.c_str();
  if (passed) *passed = c.passed ? 1 : 0;
  if (metric) *metric = c.metric;
  if (tolerance) *tolerance = c.tolerance;
  if (detail) *detail = c.detail.c_str();
  return SECO_OK;
}

SECO_API int seco_verify_all_passed(seco_verify_report v) {
  if (!v) return 0;
  for (const seco::CheckResult& c : v->checks)
    if (!c.passed) return 0;
  return 1;
}

SECO_API void seco_verify_free(seco_verify_report v) { delete v; }

}  // extern "C"
