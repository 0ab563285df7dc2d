#include "seco/verify.hpp"

#include "seco/discretize.hpp"
#include "seco/error.hpp"
#include "seco/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace seco {

namespace {

struct Instance {
  Problem p;
  Trajectory ref;
  SubproblemData sp;
  PreconditionedData pd;
};

Instance build_instance(const MissionConfig& m, int N) {
  Instance in;
  in.p = m.problem;
  const SecoConfig& cfg = m.solver;
  const Scaling sc = Scaling::from_ranges(cfg.ranges ? *cfg.ranges : default_ranges(in.p, cfg.s_guess));
  in.ref = initial_guess(in.p, N, cfg.s_guess);
  const DiscreteDynamics dd = discretize(in.ref.x, in.ref.u, in.ref.s, in.p.vehicle, cfg.substeps);
  in.sp = assemble(dd, in.ref.x, in.ref.u, in.ref.s, cfg.weights, in.p.constraints, sc, cfg.s_bounds);
  in.pd = precondition(in.sp, cfg.spectral, cfg.lambda);
  return in;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult make(std::string name, double metric, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.metric = metric;
  r.tolerance = tol;
  r.passed = std::isfinite(metric) && metric <= tol;
  r.detail = std::move(detail);
  return r;
}

CheckResult check_oracle(const MissionConfig& m, const VerifyOptions& o) {
  const Instance in = build_instance(m, 4);
  const GenericProblem g = vectorize(in.pd);
  PreconditionedData custom = in.pd;
  if (o.inject_fault) custom.Am[1](kVel, kVel) += 1e-2;  // node 1 is pinned, so perturb an interior block

  const StepParams step = step_sizes(in.pd.lambda, in.pd.sigma_max.sigma, m.solver.omega, m.solver.rho);
  StopTolerances tol;
  tol.eps_abs = 0.0;
  tol.eps_rel = 0.0;
  tol.j_max = o.quick ? 200 : 1000;

  std::vector<VectorXd> zc, wc;
  const PipgResult rc = pipg_custom(custom, step, tol, WarmStart::zeros(4),
                                    [&](int, const PrimalBlocks& z, const DualBlocks& w) {
                                      zc.push_back(flatten(z));
                                      wc.push_back(flatten(w));
                                    });
  double worst = 0.0;
  size_t j = 0;
  const GenericResult rg = pipg_generic(
      g, step, tol, VectorXd::Zero(primal_size(4)), VectorXd::Zero(kNx * 3), [&](int, const VectorXd& z, const VectorXd& w) {
        if (j < zc.size()) {
          const double scale = std::max(1.0, z.lpNorm<Eigen::Infinity>());
          worst = std::max(worst, (zc[j] - z).lpNorm<Eigen::Infinity>() / scale);
          worst = std::max(worst, (wc[j] - w).lpNorm<Eigen::Infinity>() / std::max(1.0, w.lpNorm<Eigen::Infinity>()));
        }
        ++j;
      });
  if (rc.iterations != rg.iterations) worst = std::max(worst, 1.0);
  return make("pipg custom vs generic (N=4)", worst, 1e-12,
              std::to_string(rc.iterations) + " iterations compared");
}

CheckResult check_jacobians(const MissionConfig& m, const VerifyOptions& o) {
  const VehicleParams& v = m.problem.vehicle;
  const ConstraintParams& c = m.problem.constraints;
  std::mt19937_64 rng(m.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int samples = o.quick ? 20 : 100;
  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Quaternion q = Quaternion(U(rng), U(rng), U(rng), U(rng)).normalized();
    const Vec3 r(3000.0 * U(rng), 3000.0 * U(rng), 3000.0 * (1.0 + U(rng)));
    VehicleState st;
    st.m = v.m_f + (v.m_i - v.m_f) * 0.5 * (1.0 + U(rng));
    st.dq = dq_from_pose(q, r);
    st.dv.omega_B = 0.1 * Vec3(U(rng), U(rng), U(rng));
    st.dv.v_B = 60.0 * Vec3(U(rng), U(rng), U(rng));
    const Vec15 x = st.vec();
    Vec6 u;
    u << c.T_min + (c.T_max - c.T_min) * 0.5 * (1.0 + U(rng)), c.delta_max * 0.5 * (1.0 + U(rng)),
        std::numbers::pi * (1.0 + U(rng)), c.tau_max * U(rng), c.tau_max * U(rng), c.tau_max * U(rng);
    const double s = 50.0 + 100.0 * 0.5 * (1.0 + U(rng));

    const Jacobians J = jacobians(x, u, s, v);
    auto F = [&](const Vec15& xx, const Vec6& uu, double ss) { return dilated_eom(0.0, xx, uu, ss, v); };
    auto err = [](double a, double fd) { return std::abs(a - fd) / std::max(1e-6, 1e-4 * std::abs(a)); };
    for (int i = 0; i < kNx; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
      Vec15 xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const Vec15 col = (F(xp, u, s) - F(xm, u, s)) / (2.0 * h);
      for (int r2 = 0; r2 < kNx; ++r2) worst = std::max(worst, err(J.A(r2, i), col(r2)));
    }
    for (int i = 0; i < kNu; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(u(i)));
      Vec6 up = u, um = u;
      up(i) += h;
      um(i) -= h;
      const Vec15 col = (F(x, up, s) - F(x, um, s)) / (2.0 * h);
      for (int r2 = 0; r2 < kNx; ++r2) worst = std::max(worst, err(J.B(r2, i), col(r2)));
    }
    const double h = 1e-6 * s;
    const Vec15 col = (F(x, u, s + h) - F(x, u, s - h)) / (2.0 * h);
    for (int r2 = 0; r2 < kNx; ++r2) worst = std::max(worst, err(J.S(r2), col(r2)));
  }
  // metric is the worst error as a fraction of the allowed tolerance
  return make("jacobians vs central differences", worst, 1.0, std::to_string(samples) + " random points");
}

CheckResult check_discretization(const MissionConfig& m, const VerifyOptions& o) {
  const int N = o.quick ? 6 : m.solver.N;
  const Problem& p = m.problem;
  const Trajectory ref = initial_guess(p, N, m.solver.s_guess);
  const int sub = m.solver.substeps;
  const DiscreteDynamics dd = discretize(ref.x, ref.u, ref.s, p.vehicle, sub);
  double worst = 0.0;
  for (int k = 0; k < N - 1; ++k) {
    const IntervalBlocks& b = dd.intervals[k];
    // zero deviations: Δx_{k+1} = d_k, so x̄_{k+1} + d_k must be the propagated node
    const Vec15 rec = ref.x[k + 1] + b.d;
    worst = std::max(worst, (rec - b.x_prop).lpNorm<Eigen::Infinity>() / std::max(1.0, b.x_prop.lpNorm<Eigen::Infinity>()));
    // independent propagation of the same interval on a unit grid with dilation s/(N−1)
    const StateSeq xs = single_shot(ref.x[k], {ref.u[k], ref.u[k + 1]}, ref.s / (N - 1), p.vehicle, sub);
    worst = std::max(worst, (xs[1] - b.x_prop).lpNorm<Eigen::Infinity>() / std::max(1.0, b.x_prop.lpNorm<Eigen::Infinity>()));
  }
  return make("discretization stitching identity", worst, 1e-10, std::to_string(N - 1) + " intervals");
}

CheckResult check_precondition(const MissionConfig& m, const VerifyOptions& o) {
  const Instance in = build_instance(m, 4);
  const Weights& w = m.solver.weights;
  const StateCholesky l = chol_state(w.w_tr, w.w_vse, w.w_tr_s);
  Eigen::Matrix2d R, W, Rinv;
  R << l.l_x1, l.l_x2, 0.0, l.l_xi;
  Rinv << l.l_x1_inv, l.l_x2_inv, 0.0, l.l_xi_inv;
  W << w.w_tr + w.w_vse, -w.w_vse, -w.w_vse, w.w_vse;
  double worst = (R.transpose() * R - W).cwiseAbs().maxCoeff() / W.cwiseAbs().maxCoeff();
  worst = std::max(worst, (R * Rinv - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());

  GenericProblem g = vectorize(in.pd);
  const MatrixXd& H = g.H;
  const LinearMap Hm = [&H](const VectorXd& z) -> VectorXd { return H * z; };
  const LinearMap Htm = [&H](const VectorXd& y) -> VectorXd { return H.transpose() * y; };
  SpectralOptions so = m.solver.spectral;
  if (o.quick) so.j_max = std::min(so.j_max, 100);
  const SpectralResult a = power_iteration_custom(in.pd, random_primal(4, so.seed), so);
  const SpectralResult b = power_iteration(Hm, Htm, flatten(random_primal(4, so.seed)), so);
  worst = std::max(worst, std::abs(a.raw - b.raw) / b.raw);
  const SpectralResult c = shifted_power_iteration_custom(in.pd, random_dual(4, so.seed), so, a.sigma);
  const SpectralResult d = shifted_power_iteration(Hm, Htm, flatten(random_dual(4, so.seed)), so, b.sigma);
  worst = std::max(worst, std::abs(c.raw - d.raw) / std::max(1.0, d.raw));
  if (a.iterations != b.iterations || c.iterations != d.iterations) worst = std::max(worst, 1.0);
  return make("preconditioning and spectral estimates", worst, 1e-10,
              "sigma_max " + fmt(a.sigma) + ", sigma_min " + fmt(c.sigma));
}

}  // namespace

std::vector<CheckResult> run_verify(const MissionConfig& m, const VerifyOptions& o) {
  std::vector<CheckResult> out;
  auto guarded = [&](const char* name, auto fn) {
    try {
      out.push_back(fn(m, o));
    } catch (const Error& e) {
      CheckResult r;
      r.name = name;
      r.metric = std::nan("");
      r.detail = e.what();
      out.push_back(r);
    }
  };
  guarded("pipg custom vs generic (N=4)", check_oracle);
  guarded("jacobians vs central differences", check_jacobians);
  guarded("discretization stitching identity", check_discretization);
  guarded("preconditioning and spectral estimates", check_precondition);
  return out;
}

}  // namespace seco
