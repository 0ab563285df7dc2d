#include "seco/io.hpp"

#include "seco/error.hpp"
#include "seco/log.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>

namespace seco {

namespace {

constexpr double kRad2Deg = 180.0 / std::numbers::pi;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
  os << std::setprecision(17);
  return os;
}

double los_or_nan(const Vec15& x, const Vec3& p_B) {
  try {
    return los_angle(x, p_B) * kRad2Deg;
  } catch (const Error&) {
    return std::nan("");
  }
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& t, const Problem& p) {
  const int N = static_cast<int>(t.x.size());
  if (N < 2 || static_cast<int>(t.u.size()) != N || static_cast<int>(t.xi.size()) != N)
    throw Error(ErrorCode::invalid_input, "write_trajectory_csv: inconsistent trajectory");
  const ConstraintParams& c = p.constraints;
  os << "k,tau,t_s,m_kg,rx_m,ry_m,rz_m,range_m,qx,qy,qz,qw,wx_dps,wy_dps,wz_dps,vx_mps,vy_mps,vz_mps,speed_mps,"
        "T_N,delta_deg,phi_deg,taux_Nm,tauy_Nm,tauz_Nm,psi,los_deg,tilt_deg,"
        "xi_rx_m,xi_ry_m,xi_rz_m,xi_rate_dps,xi_speed_mps,xi_los_deg,xi_tilt_deg\n";
  for (int k = 0; k < N; ++k) {
    const Vec15& x = t.x[k];
    const Vec15& xi = t.xi[k];
    const Vec6& u = t.u[k];
    const double tau = static_cast<double>(k) / (N - 1);
    const Vec3 r = position(x);
    const Vec3 r_xi = position(xi);
    os << k << ',' << tau << ',' << t.s * tau << ',' << x(kMass) << ',' << r.x() << ',' << r.y() << ',' << r.z()
       << ',' << r.norm();
    for (int i = 0; i < 4; ++i) os << ',' << x(kQr + i);
    for (int i = 0; i < 3; ++i) os << ',' << x(kOmega + i) * kRad2Deg;
    for (int i = 0; i < 3; ++i) os << ',' << x(kVel + i);
    os << ',' << x.segment<3>(kVel).norm();
    os << ',' << u(kThrust) << ',' << u(kDelta) * kRad2Deg << ',' << u(kPhi) * kRad2Deg;
    for (int i = 0; i < 3; ++i) os << ',' << u(kTorque + i);
    os << ',' << trigger(r.norm(), c.rho_min, c.rho_max) << ',' << los_or_nan(x, c.p_B) << ','
       << tilt_angle(x) * kRad2Deg;
    os << ',' << r_xi.x() << ',' << r_xi.y() << ',' << r_xi.z() << ','
       << xi.segment<3>(kOmega).lpNorm<Eigen::Infinity>() * kRad2Deg << ',' << xi.segment<3>(kVel).norm() << ','
       << los_or_nan(xi, c.p_B) << ',' << tilt_angle(xi) * kRad2Deg << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& t, const Problem& p) {
  std::ofstream os = open_out(path);
  write_trajectory_csv(os, t, p);
  if (!os) throw Error(ErrorCode::io_error, "write failed: " + path);
}

std::string report_json(const SecoReport& r, const Trajectory& t) {
  nlohmann::json j;
  j["status"] = r.status ? error_name(*r.status) : "ok";
  j["message"] = r.message;
  j["converged"] = r.converged;
  j["pos_err_m"] = r.pos_err;
  j["vel_err_mps"] = r.vel_err;
  j["time_of_flight_s"] = t.s;
  j["scp_iterations"] = r.iterations.size();
  j["pipg_iterations"] = r.pipg_iterations;
  j["t_discretize_s"] = r.t_discretize;
  j["t_parse_s"] = r.t_parse;
  j["t_solve_s"] = r.t_solve;
  j["final_mass_kg"] = t.x.empty() ? 0.0 : t.x.back()(kMass);
  nlohmann::json its = nlohmann::json::array();
  for (const IterationReport& ir : r.iterations) {
    its.push_back({{"pipg_iterations", ir.pipg_iterations},
                   {"pipg_converged", ir.pipg_converged},
                   {"residual", ir.residual},
                   {"trust_region", ir.trust_region},
                   {"vse_gap", ir.vse_gap},
                   {"lambda", ir.lambda},
                   {"sigma_max", ir.sigma_max},
                   {"pos_err_m", ir.pos_err},
                   {"vel_err_mps", ir.vel_err},
                   {"t_discretize_s", ir.t_discretize},
                   {"t_parse_s", ir.t_parse},
                   {"t_solve_s", ir.t_solve}});
  }
  j["iterations"] = its;
  return j.dump(2);
}

void write_report_json(const std::string& path, const SecoReport& r, const Trajectory& t) {
  std::ofstream os = open_out(path);
  os << report_json(r, t) << '\n';
  if (!os) throw Error(ErrorCode::io_error, "write failed: " + path);
}

Stats stats(std::vector<double> v) {
  Stats s;
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  s.min = v.front();
  s.max = v.back();
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

BenchRow run_bench(const MissionConfig& m, int N, int reps, bool warm) {
  if (reps < 1) throw Error(ErrorCode::invalid_input, "bench: repetitions must be at least 1");
  SecoConfig cfg = m.solver;
  cfg.N = N;
  BenchRow row;
  row.N = N;
  std::vector<double> td, tp, ts, tt, scp, pipg;
  std::optional<Trajectory> start;
  for (int r = 0; r < reps; ++r) {
    SecoReport rep;
    Trajectory t;
    try {
      t = solve(cfg, m.problem, rep, start);
    } catch (const Error& e) {
      log::warn(std::string("bench run failed: ") + e.what());
      ++row.failures;
      continue;
    }
    if (!rep.converged) {
      ++row.failures;
      continue;
    }
    td.push_back(rep.t_discretize);
    tp.push_back(rep.t_parse);
    ts.push_back(rep.t_solve);
    tt.push_back(rep.t_discretize + rep.t_parse + rep.t_solve);
    scp.push_back(static_cast<double>(rep.iterations.size()));
    pipg.push_back(static_cast<double>(rep.pipg_iterations));
    if (warm) start = t;
  }
  row.runs = static_cast<int>(tt.size());
  row.t_discretize = stats(td);
  row.t_parse = stats(tp);
  row.t_solve = stats(ts);
  row.t_total = stats(tt);
  row.scp_iterations = stats(scp);
  row.pipg_iterations = stats(pipg);
  return row;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "N,runs,failures";
  for (const char* g : {"discretize_s", "parse_s", "solve_s", "total_s", "scp_iterations", "pipg_iterations"})
    for (const char* f : {"mean", "std", "min", "max"}) os << ',' << g << '_' << f;
  os << '\n';
  for (const BenchRow& r : rows) {
    os << r.N << ',' << r.runs << ',' << r.failures;
    for (const Stats* s : {&r.t_discretize, &r.t_parse, &r.t_solve, &r.t_total, &r.scp_iterations, &r.pipg_iterations})
      os << ',' << s->mean << ',' << s->stddev << ',' << s->min << ',' << s->max;
    os << '\n';
  }
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  std::ofstream os = open_out(path);
  write_bench_csv(os, rows);
  if (!os) throw Error(ErrorCode::io_error, "write failed: " + path);
}

}  // namespace seco
