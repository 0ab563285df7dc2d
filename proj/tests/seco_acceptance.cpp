// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "testkit.hpp"

#include "seco/audit.hpp"
#include "seco/discretize.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace seco;
using testkit::Rng;

namespace {

// pinned tolerances
constexpr int kMaxScpIterations = 7;
constexpr double kPosTol = 10.0;         // m
constexpr double kVelTol = 0.25;         // m/s
constexpr double kRuntimeLimit = 5.0;    // s
constexpr double kLosSlack = 0.05;       // deg
constexpr double kBoundSlack = 1e-6;
constexpr double kIterateTol = 1e-12;
constexpr double kKktTol = 1e-6;
constexpr double kLtiTol = 1e-9;
constexpr double kStitchTol = 1e-10;
constexpr double kCholTol = 1e-12;
constexpr double kGenericTol = 1e-10;
constexpr double kSpectralTol = 1e-4;
constexpr double kTwoHalfTol = 1e-8;
constexpr double kSetTol = 1e-9;

struct Line {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0, double e = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d, e);
  return buf;
}

double rel_inf(const MatrixXd& a, const MatrixXd& r) {
  return (a - r).lpNorm<Eigen::Infinity>() / std::max(1.0, r.lpNorm<Eigen::Infinity>());
}

LinearMap mul(const MatrixXd& H) {
  return [&H](const VectorXd& z) -> VectorXd { return H * z; };
}
LinearMap mul_t(const MatrixXd& H) {
  return [&H](const VectorXd& w) -> VectorXd { return H.transpose() * w; };
}

Line end_to_end(const testkit::Solved& s) {
  const SecoReport& r = s.report;
  const int it = static_cast<int>(r.iterations.size());
  Line l{"end-to-end convergence, N=15"};
  l.pass = r.converged && it <= kMaxScpIterations && r.pos_err <= kPosTol && r.vel_err <= kVelTol &&
           s.wall <= kRuntimeLimit;
  l.detail = fmt("iterations %.0f, pos %.3f m, vel %.4f m/s, runtime %.2f s", it, r.pos_err, r.vel_err, s.wall);
  return l;
}

Line node_sweep(const testkit::Solved& s15) {
  Line l{"node sweep N = 10, 15, 20, 25", true};
  for (int N : {10, 15, 20, 25}) {
    const testkit::Solved s = N == 15 ? s15 : testkit::solve_mission(N);
    const bool ok = s.report.converged && s.report.pos_err <= kPosTol && s.report.vel_err <= kVelTol;
    l.pass = l.pass && ok;
    l.detail += fmt("N=%.0f: %.0f it, %.2f m, %.3f m/s; ", N, static_cast<double>(s.report.iterations.size()),
                    s.report.pos_err, s.report.vel_err);
  }
  return l;
}

Line stc(const testkit::Solved& s) {
  const ConstraintParams& c = s.m.problem.constraints;
  const testkit::StcMetrics v = testkit::stc_metrics(s.t.xi, c);
  const testkit::StcMetrics x = testkit::stc_metrics(s.t.x, c);
  Line l{"state-triggered constraints at the N=15 solution"};
  l.pass = v.window_nodes > 0 && v.los_max <= testkit::deg(c.mu_stc) + kLosSlack &&
           v.tilt_max <= testkit::deg(c.theta_stc) + kBoundSlack && v.rate_max <= testkit::deg(c.omega_stc) + kBoundSlack &&
           v.speed_max <= c.v_stc + kBoundSlack && v.out_tilt <= testkit::deg(c.theta_max) + kBoundSlack &&
           v.out_rate <= testkit::deg(c.omega_max) + kBoundSlack && v.out_speed <= c.v_max + kBoundSlack &&
           v.out_alt_min >= c.h_min - kBoundSlack;
  l.detail = fmt("window nodes %.0f: LoS %.3f deg, tilt %.2f deg, rate %.3f deg/s, speed %.2f m/s", v.window_nodes,
                 v.los_max, v.tilt_max, v.rate_max, v.speed_max) +
             fmt("; outside: tilt %.2f, rate %.3f, speed %.2f, alt >= %.1f", v.out_tilt, v.out_rate, v.out_speed,
                 v.out_alt_min) +
             fmt("; propagated states: LoS %.3f deg", x.los_max);
  return l;
}

Line oracle_equivalence() {
  double worst = 0.0;
  bool same_count = true;
  const int instances = 24;
  for (std::uint64_t seed = 1; seed <= instances; ++seed) {
    const SubproblemData sp = testkit::toy_subproblem(seed, 4, seed % 2 == 0);
    const PreconditionedData pd = precondition(sp, SpectralOptions{});
    const testkit::PipgComparison c = testkit::compare_pipg(pd, 300, seed % 3 == 0 ? 10.0 : 1.0);
    same_count = same_count && c.iterations_custom == c.iterations_generic;
    worst = std::max(worst, c.iterate_error);
  }
  double kkt = 0.0;
  StopTolerances tight;
  tight.eps_abs = 1e-12;
  tight.eps_rel = 1e-12;
  tight.j_max = 200000;
  bool converged = true;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const SubproblemData sp = testkit::toy_subproblem(200 + seed, 4, false);
    const PreconditionedData pd = precondition(sp, SpectralOptions{});
    const PipgResult r = pipg_custom(pd, step_sizes(pd.lambda, pd.sigma_max.sigma), tight, WarmStart::zeros(4));
    converged = converged && r.converged;
    const VectorXd ref = testkit::toy_kkt(sp);
    kkt = std::max(kkt, (flatten(r.z) - ref).lpNorm<Eigen::Infinity>() / std::max(1.0, ref.lpNorm<Eigen::Infinity>()));
  }
  Line l{"custom vs generic solver iterates, KKT optimum"};
  l.pass = same_count && converged && worst <= kIterateTol && kkt <= kKktTol;
  l.detail = fmt("%.0f instances, worst iterate diff %.2e; KKT diff %.2e", instances, worst, kkt);
  return l;
}

Line discretization(const MissionConfig& m) {
  testkit::DoubleIntegrator model;
  Eigen::Matrix2d A;
  Eigen::Matrix<double, 2, 1> B;
  model.jac(Eigen::Vector2d::Zero(), Eigen::Matrix<double, 1, 1>::Zero(), A, B);
  Rng rng(24);
  double lti = 0.0;
  for (int n = 0; n < 50; ++n) {
    const Eigen::Vector2d x0(rng.uniform(), rng.uniform());
    Eigen::Matrix<double, 1, 1> u0, u1;
    u0 << rng.uniform();
    u1 << rng.uniform();
    const double s = rng.uniform(0.5, 20.0), dtau = rng.uniform(0.01, 0.2);
    const auto b = foh_interval(model, x0, u0, u1, s, dtau, 20);
    const testkit::LtiFoh o = testkit::lti_foh_expm(A, B, x0, u0, u1, s, dtau);
    lti = std::max({lti, rel_inf(b.A, o.A), rel_inf(b.B_minus, o.B_minus), rel_inf(b.B_plus, o.B_plus),
                    rel_inf(b.S, o.S), rel_inf(b.x_prop, o.x_prop)});
  }
  double stitch = 0.0;
  for (int N : {5, 15, 25}) {
    const Trajectory ref = initial_guess(m.problem, N, m.solver.s_guess);
    const DiscreteDynamics dd = discretize(ref.x, ref.u, ref.s, m.problem.vehicle, m.solver.substeps);
    for (int k = 0; k < N - 1; ++k) {
      const IntervalBlocks& b = dd.intervals[k];
      const double scale = std::max(1.0, b.x_prop.lpNorm<Eigen::Infinity>());
      stitch = std::max(stitch, (ref.x[k + 1] + b.d - b.x_prop).lpNorm<Eigen::Infinity>() / scale);
      const StateSeq xs =
          single_shot(ref.x[k], {ref.u[k], ref.u[k + 1]}, ref.s / (N - 1), m.problem.vehicle, m.solver.substeps);
      stitch = std::max(stitch, (xs[1] - b.x_prop).lpNorm<Eigen::Infinity>() / scale);
    }
  }
  Line l{"discretization: LTI closed form, nonlinear stitching"};
  l.pass = lti <= kLtiTol && stitch <= kStitchTol;
  l.detail = fmt("LTI %.2e, stitching %.2e", lti, stitch);
  return l;
}

Line preconditioning() {
  Rng rng(51);
  double chol = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double wt = std::exp(rng.uniform(-5.0, 5.0)), wv = std::exp(rng.uniform(-5.0, 10.0));
    const StateCholesky c = chol_state(wt, wv);
    Eigen::Matrix2d W, R, Ri;
    W << wt + wv, -wv, -wv, wv;
    R << c.l_x1, c.l_x2, 0.0, c.l_xi;
    Ri << c.l_x1_inv, c.l_x2_inv, 0.0, c.l_xi_inv;
    chol = std::max(chol, (R.transpose() * R - W).cwiseAbs().maxCoeff() / W.cwiseAbs().maxCoeff());
    chol = std::max(chol, (R * Ri - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
  }
  double lam = 0.0, generic = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SubproblemData sp = testkit::toy_subproblem(seed, 3 + static_cast<int>(seed % 3), seed % 2 == 0);
    SpectralOptions o;
    const PreconditionedData pd = precondition(sp, o);
    const GenericProblem g = vectorize(pd);
    const DenseSubproblem d = dense_subproblem(sp);
    const MatrixXd P = g.L_inv.transpose() * d.Q * g.L_inv;
    lam = std::max(lam, (P - MatrixXd::Identity(P.rows(), P.cols())).cwiseAbs().maxCoeff());
    const DensePreconditioned dp = hypersphere_generic(d, o);
    generic = std::max({generic, (g.L - dp.L).cwiseAbs().maxCoeff(), (g.H - dp.H_hat).cwiseAbs().maxCoeff(),
                        (g.h - dp.h_hat).cwiseAbs().maxCoeff(), (g.q_hat - dp.q_hat).cwiseAbs().maxCoeff(),
                        std::abs(pd.sigma_max.raw - dp.sigma_max.raw) / dp.sigma_max.raw,
                        std::abs(pd.sigma_min.raw - dp.sigma_min.raw) / std::max(1.0, std::abs(dp.sigma_min.raw)),
                        std::abs(pd.lambda - dp.lambda)});
  }
  Line l{"preconditioning: closed-form factors, identity Hessian, generic match"};
  l.pass = chol <= kCholTol && lam <= kCholTol && generic <= kGenericTol;
  l.detail = fmt("factor %.2e over 1000 pairs, Hessian %.2e, generic %.2e", chol, lam, generic);
  return l;
}

Line spectral() {
  Rng rng(56);
  SpectralOptions o;
  o.eps_abs = 1e-14;
  o.eps_rel = 1e-13;
  o.j_max = 100000;
  double worst = 0.0;
  bool buffered = true;
  for (auto [m, n] : {std::pair{5, 8}, std::pair{20, 30}, std::pair{50, 80}, std::pair{200, 300}}) {
    MatrixXd H = rng.mat(m, n);
    Eigen::JacobiSVD<MatrixXd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
    VectorXd sv = svd.singularValues();
    sv(0) *= 1.5;
    sv(m - 1) *= 0.5;
    H = svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
    const double smax = sv(0) * sv(0), smin = sv(m - 1) * sv(m - 1);
    const SpectralResult a = power_iteration(mul(H), mul_t(H), rng.vec(n), o);
    const SpectralResult b = shifted_power_iteration(mul(H), mul_t(H), rng.vec(m), o, a.sigma);
    worst = std::max({worst, std::abs(a.raw - smax) / smax, std::abs(b.raw - smin) / smax});
    buffered = buffered && a.sigma >= smax && b.sigma <= smin;
  }
  Line l{"spectral estimates vs SVD up to 200x300"};
  l.pass = worst <= kSpectralTol && buffered;
  l.detail = fmt("worst relative %.2e, buffered bounds ", worst) + (buffered ? "hold" : "violated");
  return l;
}

Line jacobians_fd(const Problem& pr) {
  Rng rng(23);
  double worst = 0.0;
  const int points = 100;
  for (int n = 0; n < points; ++n) {
    const Vec15 x = testkit::random_state(rng, pr);
    const Vec6 u = testkit::random_control(rng, pr.constraints);
    const double s = rng.uniform(50.0, 150.0);
    const Jacobians J = jacobians(x, u, s, pr.vehicle);
    auto F = [&](const Vec15& xx, const Vec6& uu) { return dilated_eom(0.0, xx, uu, s, pr.vehicle); };
    auto err = [](double a, double fd) { return std::abs(a - fd) / std::max(1e-6, 1e-4 * std::abs(a)); };
    for (int i = 0; i < kNx; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
      Vec15 xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const Vec15 col = (F(xp, u) - F(xm, u)) / (2.0 * h);
      for (int r = 0; r < kNx; ++r) worst = std::max(worst, err(J.A(r, i), col(r)));
    }
    for (int i = 0; i < kNu; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(u(i)));
      Vec6 up = u, um = u;
      up(i) += h;
      um(i) -= h;
      const Vec15 col = (F(x, up) - F(x, um)) / (2.0 * h);
      for (int r = 0; r < kNx; ++r) worst = std::max(worst, err(J.B(r, i), col(r)));
    }
    // ∂(s f)/∂s = f
    const double hs = 1e-6 * s;
    const Vec15 cs = (dilated_eom(0.0, x, u, s + hs, pr.vehicle) - dilated_eom(0.0, x, u, s - hs, pr.vehicle)) / (2.0 * hs);
    for (int r = 0; r < kNx; ++r) worst = std::max(worst, err(J.S(r), cs(r)));
  }
  Line l{"Jacobians vs central differences"};
  l.pass = worst <= 1.0;
  l.detail = fmt("%.0f points, worst error / max(1e-6, 1e-4 rel) = %.3f", points, worst);
  return l;
}

VectorXd proj(const BasicSet& s, VectorXd x) {
  project(s, x);
  return x;
}

Line projections() {
  Rng rng(31);
  const int n = 5, samples = 10000;
  std::vector<BasicSet> zoo;
  zoo.push_back(Free{n});
  zoo.push_back(Box{-rng.vec(n).cwiseAbs(), rng.vec(n).cwiseAbs()});
  zoo.push_back(Ball{rng.vec(n), 0.7});
  zoo.push_back(Halfspace{rng.vec(n), 0.3});
  zoo.push_back(TwoHalfspaces{{rng.vec(n), 0.2}, {rng.vec(n), -0.1}});
  zoo.push_back(Singleton{rng.vec(n)});
  MatrixXd K(3, 2);
  K << 0.0, 0.5, -0.5, 0.0, 0.0, 0.0;
  zoo.push_back(AffineSubspace::graph(K));
  double idem = 0.0, expand = 0.0;
  for (const BasicSet& s : zoo) {
    const int dim = set_dim(s);
    for (int i = 0; i < samples; ++i) {
      const VectorXd x = rng.vec(dim, 3.0), y = rng.vec(dim, 3.0);
      const VectorXd px = proj(s, x), py = proj(s, y);
      idem = std::max(idem, (proj(s, px) - px).norm());
      expand = std::max(expand, (px - py).norm() - (x - y).norm());
    }
  }
  double two = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 6;
    TwoHalfspaces t{{rng.vec(d), rng.uniform()}, {rng.vec(d), rng.uniform()}};
    if (i % 10 == 0) t.h2.a = t.h1.a + 1e-3 * rng.vec(d);
    const VectorXd x = rng.vec(d, 3.0);
    const VectorXd ref = testkit::two_halfspace_oracle(t, x);
    if (ref.size() == 0) continue;
    two = std::max(two, (proj(t, x) - ref).norm() / (1.0 + ref.norm()));
  }
  Line l{"projection suite"};
  l.pass = idem < 1e-12 && expand < 1e-12 && two <= kTwoHalfTol;
  l.detail = fmt("%.0f sets x %.0f samples: idempotence %.1e, expansion %.1e; two halfspaces %.1e",
                 static_cast<double>(zoo.size()), samples, idem, expand, two);
  return l;
}

Line implementation_property(const MissionConfig& m) {
  const std::vector<testkit::AuditFinding> found = testkit::static_audit(SECO_SOURCE_DIR);
  MissionConfig mm = m;
  mm.solver.N = 15;
  audit::reset();
  SecoReport rep;
  solve(mm.solver, mm.problem, rep);
  const audit::Counters c = audit::snapshot();
  Line l{"no factorizations, solves or large matrices on the solve path"};
  l.pass = found.empty() && c.factorizations == 0 && c.large_matrices == 0;
  l.detail = fmt("static findings %.0f, runtime factorizations %.0f, large matrices %.0f",
                 static_cast<double>(found.size()), static_cast<double>(c.factorizations),
                 static_cast<double>(c.large_matrices));
  for (const testkit::AuditFinding& f : found) l.detail += "; " + f.file + ":" + std::to_string(f.line) + " " + f.token;
  return l;
}

Line feasibility(const MissionConfig& m) {
  const int N = m.solver.N;
  long bad = 0, seen = 0;
  const PreconditionedData* cur = nullptr;
  SecoHooks hooks;
  hooks.on_subproblem = [&](int, const PreconditionedData& pd) { cur = &pd; };
  hooks.pipg_observer = [&](int, const PrimalBlocks& z, const DualBlocks&) {
    const PreconditionedData& pd = *cur;
    ++seen;
    if (!pd.D_x1.contains(z.x[0] + pd.x1_ref[0], kSetTol)) ++bad;
    if (z.xi[0].norm() != 0.0) ++bad;
    for (int k = 1; k < N; ++k)
      if (!pd.D_xi[k].contains(z.xi[k] + pd.xi_ref[k], kSetTol)) ++bad;
    for (int k = 0; k < N; ++k)
      if (!pd.D_u[k].contains(z.u[k] + pd.u_ref[k], kSetTol)) ++bad;
    if (!pd.D_s.contains(VectorXd::Constant(1, z.s + pd.s_ref), kSetTol)) ++bad;
  };
  SecoReport rep;
  solve(m.solver, m.problem, rep, std::nullopt, hooks);
  Line l{"constraint sets hold at every solver iterate"};
  l.pass = seen > 0 && bad == 0;
  l.detail = fmt("%.0f iterates observed over %.0f SCP iterations, %.0f violations", static_cast<double>(seen),
                 static_cast<double>(rep.iterations.size()), static_cast<double>(bad));
  return l;
}

}  // namespace

int main() {
  const MissionConfig m = load_config(std::string(SECO_SOURCE_DIR) + "/configs/lunar_table1.json");
  const testkit::Solved s15 = testkit::solve_mission(15);

  std::vector<Line> lines;
  auto guarded = [&](const char* name, auto&& f) {
    try {
      lines.push_back(f());
    } catch (const std::exception& e) {
      lines.push_back({name, false, std::string("threw: ") + e.what()});
    }
    const Line& l = lines.back();
    std::printf("%s  %s: %s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.detail.c_str());
    std::fflush(stdout);
  };
  guarded("end-to-end", [&] { return end_to_end(s15); });
  guarded("node sweep", [&] { return node_sweep(s15); });
  guarded("state-triggered constraints", [&] { return stc(s15); });
  guarded("oracle equivalence", [&] { return oracle_equivalence(); });
  guarded("discretization", [&] { return discretization(m); });
  guarded("preconditioning", [&] { return preconditioning(); });
  guarded("spectral estimates", [&] { return spectral(); });
  guarded("Jacobians", [&] { return jacobians_fd(m.problem); });
  guarded("projection suite", [&] { return projections(); });
  guarded("implementation property", [&] { return implementation_property(m); });
  guarded("feasibility", [&] { return feasibility(m); });

  int failed = 0;
  for (const Line& l : lines) failed += l.pass ? 0 : 1;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
