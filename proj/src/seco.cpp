#include "seco/seco.hpp"

#include "seco/error.hpp"
#include "seco/log.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace seco {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::invalid_config, msg);
}

Vec15 renormalized(Vec15 x) {
  const DualQuaternion dq = DualQuaternion::from_vec(x.segment<8>(kDq));
  if (dq_unit_defect(dq) > 1e-9) x.segment<8>(kDq) = dq_normalize(dq).vec();
  return x;
}

}  // namespace

void SecoConfig::validate() const {
  require(N >= 2, "solver.N: must be at least 2");
  weights.validate();
  require(max_iterations >= 1, "solver.max_iterations: must be at least 1");
  require(pos_tol > 0.0 && vel_tol > 0.0, "solver.pos_tol/vel_tol: must be positive");
  require(step_tol > 0.0, "solver.step_tol: must be positive");
  require(s_guess > 0.0, "solver.s_guess: must be positive");
  require(s_bounds.lo > 0.0 && s_bounds.hi > s_bounds.lo, "solver.s_bounds: require 0 < lo < hi");
  require(s_guess >= s_bounds.lo && s_guess <= s_bounds.hi, "solver.s_guess: outside s_bounds");
  require(substeps >= 1, "solver.substeps: must be at least 1");
  require(omega > 0.0, "solver.omega: must be positive");
  require(rho > 0.0 && rho < 2.0, "solver.rho: must be in (0, 2)");
  stop.validate();
  require(!lambda || *lambda > 0.0, "solver.lambda: must be positive");
  require(spectral.j_max >= 1 && spectral.eps_buff >= 0.0 && spectral.eps_buff < 1.0,
          "solver.spectral: j_max >= 1 and eps_buff in [0, 1)");
}

void Problem::validate() const {
  vehicle.validate();
  constraints.validate();
  require(std::abs(vehicle.m_i - constraints.m_i) < 1e-12 && std::abs(vehicle.m_f - constraints.m_f) < 1e-12,
          "vehicle.m_i/m_f: inconsistent with boundary masses");
}

ScalingRanges default_ranges(const Problem& p, double s_guess) {
  const ConstraintParams& c = p.constraints;
  ScalingRanges r;
  r.mass = {c.m_f, c.m_i};
  r.quat = {0.0, 1.0};
  r.dual = {0.0, std::max(0.5 * c.r_i.norm(), 1.0)};
  r.omega = {0.0, c.omega_max};
  r.vel = {0.0, c.v_max};
  r.thrust = {c.T_min, c.T_max};
  r.delta = {0.0, c.delta_max};
  r.phi = {0.0, 2.0 * std::numbers::pi};
  r.torque = {0.0, c.tau_max};
  r.time = {0.0, s_guess};
  return r;
}

Trajectory initial_guess(const Problem& p, int N, double s_guess) {
  if (N < 2) throw Error(ErrorCode::invalid_input, "initial_guess: need N >= 2");
  const ConstraintParams& c = p.constraints;
  const DualQuaternion dq_i = dq_from_pose(c.q_i, c.r_i);
  const DualQuaternion dq_f = c.final_pose();
  const Vec3 v_f(0.0, 0.0, c.v_zf);
  Trajectory t;
  t.x.resize(N);
  t.u.resize(N);
  t.s = s_guess;
  for (int k = 0; k < N; ++k) {
    const double tau = static_cast<double>(k) / (N - 1);
    Vec15 x = Vec15::Zero();
    x(kMass) = c.m_i + tau * (c.m_f - c.m_i);
    const DualQuaternion dq = k == 0 ? dq_i : (k == N - 1 ? dq_f : sclerp(dq_i, dq_f, tau));
    x.segment<8>(kDq) = dq.vec();
    const Vec3 v_I = (1.0 - tau) * c.v_i + tau * v_f;
    x.segment<3>(kVel) = rotate_to_body(dq.real, v_I);
    if (k == 0) x = c.initial_state();
    t.x[k] = x;
    Vec6 u = Vec6::Zero();
    u(kThrust) = std::clamp(x(kMass) * p.vehicle.g, c.T_min, c.T_max);
    t.u[k] = u;
  }
  t.xi = t.x;
  return t;
}

Trajectory prescale(const Trajectory& t, const Scaling& sc) {
  Trajectory r;
  for (const Vec15& x : t.x) r.x.push_back(sc.scale_x(x));
  for (const Vec15& x : t.xi) r.xi.push_back(sc.scale_x(x));
  for (const Vec6& u : t.u) r.u.push_back(sc.scale_u(u));
  r.s = sc.scale_s(t.s);
  return r;
}

Trajectory unscale(const Trajectory& t, const Scaling& sc) {
  Trajectory r;
  for (const Vec15& x : t.x) r.x.push_back(sc.unscale_x(x));
  for (const Vec15& x : t.xi) r.xi.push_back(sc.unscale_x(x));
  for (const Vec6& u : t.u) r.u.push_back(sc.unscale_u(u));
  r.s = sc.unscale_s(t.s);
  return r;
}

ConvergenceCheck convergence_check(const Trajectory& t, const Problem& p, double pos_tol, double vel_tol,
                                   int substeps) {
  if (t.x.empty() || t.u.size() != t.x.size())
    throw Error(ErrorCode::invalid_input, "convergence_check: empty or mismatched trajectory");
  const StateSeq xs = single_shot(t.x.front(), t.u, t.s, p.vehicle, substeps);
  const Vec15& xf = xs.back();
  const DualQuaternion dq = DualQuaternion::from_vec(xf.segment<8>(kDq));
  const ConstraintParams& c = p.constraints;
  ConvergenceCheck r;
  r.pos_err = (extract_position(dq) - c.r_f).norm();
  r.vel_err = (rotate_to_inertial(dq.real, xf.segment<3>(kVel)) - Vec3(0.0, 0.0, c.v_zf)).norm();
  r.pass = r.pos_err <= pos_tol && r.vel_err <= vel_tol;
  return r;
}

Trajectory solve(const SecoConfig& cfg, const Problem& p, SecoReport& report, const std::optional<Trajectory>& start,
                 const SecoHooks& hooks) {
  cfg.validate();
  p.validate();
  report = SecoReport{};
  const int N = cfg.N;
  const Scaling sc = Scaling::from_ranges(cfg.ranges ? *cfg.ranges : default_ranges(p, cfg.s_guess));

  Trajectory ref = start ? *start : initial_guess(p, N, cfg.s_guess);
  if (static_cast<int>(ref.x.size()) != N || static_cast<int>(ref.u.size()) != N)
    throw Error(ErrorCode::invalid_input, "solve: start trajectory has wrong node count");
  if (ref.xi.size() != ref.x.size()) ref.xi = ref.x;

  WarmStart warm = WarmStart::zeros(N);
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    IterationReport ir;
    try {
      auto t0 = Clock::now();
      const DiscreteDynamics dd = discretize(ref.x, ref.u, ref.s, p.vehicle, cfg.substeps);
      ir.t_discretize = seconds_since(t0);

      t0 = Clock::now();
      const SubproblemData sp = assemble(dd, ref.x, ref.u, ref.s, cfg.weights, p.constraints, sc, cfg.s_bounds);
      const PreconditionedData pd = precondition(sp, cfg.spectral, cfg.lambda);
      ir.t_parse = seconds_since(t0);
      if (hooks.on_subproblem) hooks.on_subproblem(it, pd);

      t0 = Clock::now();
      const StepParams step = step_sizes(pd.lambda, pd.sigma_max.sigma, cfg.omega, cfg.rho);
      const PipgResult res = pipg_custom(pd, step, cfg.stop, warm, hooks.pipg_observer);
      ir.t_solve = seconds_since(t0);

      ir.pipg_iterations = res.iterations;
      ir.pipg_converged = res.converged;
      ir.residual = res.residual;
      ir.lambda = pd.lambda;
      ir.sigma_max = pd.sigma_max.sigma;
      if (!res.converged) {
        if (cfg.abort_on_pipg_failure)
          throw Error(ErrorCode::not_converged, "PIPG reached j_max at SCP iteration " + std::to_string(it));
        log::warn("PIPG reached j_max at SCP iteration " + std::to_string(it) + ", continuing with last iterate");
      }

      double tr = cfg.weights.w_tr_s * res.z.s * res.z.s;
      double gap = 0.0;
      Trajectory next;
      next.x.resize(N);
      next.xi.resize(N);
      next.u.resize(N);
      for (int k = 0; k < N; ++k) {
        tr += cfg.weights.w_tr * (res.z.x[k].squaredNorm() + res.z.u[k].squaredNorm());
        gap = std::max(gap, (res.z.x[k] - res.z.xi[k]).lpNorm<Eigen::Infinity>());
        next.x[k] = renormalized(sc.unscale_x(sp.x_ref[k] + res.z.x[k]));
        next.xi[k] = sc.unscale_x(sp.x_ref[k] + res.z.xi[k]);
        next.u[k] = sc.unscale_u(sp.u_ref[k] + res.z.u[k]);
      }
      next.s = sc.unscale_s(sp.s_ref + res.z.s);
      ir.trust_region = tr;
      ir.vse_gap = gap;

      ref = std::move(next);
      warm.z = PrimalBlocks::zeros(N);
      warm.w = res.w;

      const ConvergenceCheck cc = convergence_check(ref, p, cfg.pos_tol, cfg.vel_tol, cfg.substeps);
      ir.pos_err = cc.pos_err;
      ir.vel_err = cc.vel_err;
      report.pos_err = cc.pos_err;
      report.vel_err = cc.vel_err;
      report.converged = cc.pass && tr <= cfg.step_tol;
    } catch (const Error& e) {
      report.status = e.code();
      report.message = "SCP iteration " + std::to_string(it) + ": " + e.what();
      report.converged = false;
      log::error(report.message);
      break;
    }
    report.t_discretize += ir.t_discretize;
    report.t_parse += ir.t_parse;
    report.t_solve += ir.t_solve;
    report.pipg_iterations += ir.pipg_iterations;
    report.iterations.push_back(ir);
    log::info("iteration " + std::to_string(it) + ": pipg " + std::to_string(ir.pipg_iterations) + ", pos err " +
              std::to_string(ir.pos_err) + " m, vel err " + std::to_string(ir.vel_err) + " m/s");
    if (report.converged && !cfg.fixed_iterations) break;
  }
  if (!report.converged && !report.status) {
    report.status = ErrorCode::not_converged;
    report.message = "terminal tolerances not met after " + std::to_string(report.iterations.size()) + " iterations";
  }
  return ref;
}

}  // namespace seco
