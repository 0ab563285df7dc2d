#include "seco/pipg.hpp"

#include "seco/error.hpp"

#include <algorithm>
#include <cmath>

namespace seco {

static_assert(Mat15::RowsAtCompileTime == 15 && Mat15::ColsAtCompileTime == 15);
static_assert(Mat15x6::RowsAtCompileTime == 15 && Mat15x6::ColsAtCompileTime == 6);

StepParams step_sizes(double lambda, double sigma, double omega, double rho) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_input, "step_sizes: sigma must be positive");
  if (!(lambda >= 0.0)) throw Error(ErrorCode::invalid_input, "step_sizes: lambda must be nonnegative");
  if (!(omega > 0.0)) throw Error(ErrorCode::invalid_input, "step_sizes: omega must be positive");
  if (!(rho > 0.0 && rho < 2.0)) throw Error(ErrorCode::invalid_input, "step_sizes: rho must be in (0, 2)");
  StepParams s;
  s.lambda = lambda;
  s.sigma = sigma;
  s.omega = omega;
  s.rho = rho;
  s.alpha = 2.0 / (lambda + std::sqrt(lambda * lambda + 4.0 * omega * sigma));
  s.beta = omega * s.alpha;
  return s;
}

void StopTolerances::validate() const {
  if (!(eps_abs >= 0.0) || !(eps_rel >= 0.0))
    throw Error(ErrorCode::invalid_config, "solver.eps_abs/eps_rel: must be nonnegative");
  if (j_check < 1) throw Error(ErrorCode::invalid_config, "solver.j_check: must be at least 1");
  if (j_max < 1) throw Error(ErrorCode::invalid_config, "solver.j_max: must be at least 1");
}

namespace {

template <class Seq>
double inf_norm(const Seq& v) {
  double m = 0.0;
  for (const auto& b : v) m = std::max(m, b.template lpNorm<Eigen::Infinity>());
  return m;
}

template <class Seq>
double inf_diff(const Seq& a, const Seq& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.size(); ++k) m = std::max(m, (a[k] - b[k]).template lpNorm<Eigen::Infinity>());
  return m;
}

double inf_norm(const PrimalBlocks& z) {
  return std::max({inf_norm(z.x), inf_norm(z.xi), inf_norm(z.u), std::abs(z.s)});
}

double inf_diff(const PrimalBlocks& a, const PrimalBlocks& b) {
  return std::max({inf_diff(a.x, b.x), inf_diff(a.xi, b.xi), inf_diff(a.u, b.u), std::abs(a.s - b.s)});
}

bool small_change(double diff, double a, double b, double eps_abs, double eps_rel) {
  return diff <= eps_abs + eps_rel * std::max(a, b);
}

}  // namespace

bool stopping(const PrimalBlocks& cur, const PrimalBlocks& prev, const DualBlocks& w_cur,
              const DualBlocks& w_prev, double eps_abs, double eps_rel) {
  if (cur.x.size() != prev.x.size() || w_cur.size() != w_prev.size())
    throw Error(ErrorCode::invalid_input, "stopping: shape mismatch");
  return small_change(inf_diff(cur, prev), inf_norm(cur), inf_norm(prev), eps_abs, eps_rel) &&
         small_change(inf_diff(w_cur, w_prev), inf_norm(w_cur), inf_norm(w_prev), eps_abs, eps_rel);
}

WarmStart WarmStart::zeros(int N) {
  WarmStart w;
  w.z = PrimalBlocks::zeros(N);
  w.w.assign(N - 1, Vec15::Zero());
  return w;
}

PipgResult pipg_custom(const PreconditionedData& p, const StepParams& step, const StopTolerances& tol,
                       const WarmStart& warm, const PipgObserver& observer) {
  tol.validate();
  const int N = p.N;
  if (N < 2 || static_cast<int>(warm.z.x.size()) != N || static_cast<int>(warm.w.size()) != N - 1)
    throw Error(ErrorCode::invalid_input, "pipg_custom: warm start has wrong shape");
  const StateCholesky& l = p.l;
  const double lam = step.lambda, a = step.alpha, b = step.beta, rho = step.rho;

  // extrapolated registers ζ, η
  PrimalBlocks zeta = PrimalBlocks::zeros(N);
  for (int k = 0; k < N; ++k) {
    zeta.x[k] = l.l_x1 * warm.z.x[k] + l.l_x2 * warm.z.xi[k];
    zeta.xi[k] = l.l_xi * warm.z.xi[k];
    zeta.u[k] = l.l_u * warm.z.u[k];
  }
  zeta.s = l.l_s * warm.z.s;
  DualBlocks eta = warm.w;

  PrimalBlocks zn = zeta, zp = zeta;  // ẑ^{j+1}, ẑ^j
  DualBlocks wn = eta, wp = eta;

  Vec15 t15;
  Vec6 t6;
  PipgResult r;
  for (int j = 1; j <= tol.j_max; ++j) {
    std::swap(zn, zp);
    std::swap(wn, wp);

    // node 1
    t15 = zeta.x[0] - a * (lam * zeta.x[0] + p.q_x[0] + p.Am[0].transpose() * eta[0]) + p.x1_ref[0];
    p.D_x1.project(t15);
    zn.x[0] = t15 - p.x1_ref[0];
    zn.xi[0].setZero();
    t6 = zeta.u[0] - a * (lam * zeta.u[0] + p.q_u[0] + p.Bm[0].transpose() * eta[0]) + p.u_ref[0];
    p.D_u[0].project(t6);
    zn.u[0] = t6 - p.u_ref[0];
    double dS = p.S[0].dot(eta[0]);

    for (int k = 1; k < N - 1; ++k) {
      zn.x[k] = zeta.x[k] - a * (lam * zeta.x[k] + p.q_x[k] + p.Am[k].transpose() * eta[k] +
                                 p.Ap[k - 1].cwiseProduct(eta[k - 1]));
      t15 = zeta.xi[k] - a * (lam * zeta.xi[k] + p.q_xi[k] + p.Em[k].transpose() * eta[k] +
                              p.Ep[k - 1].cwiseProduct(eta[k - 1])) + p.xi_ref[k];
      p.D_xi[k].project(t15);
      zn.xi[k] = t15 - p.xi_ref[k];
      t6 = zeta.u[k] - a * (lam * zeta.u[k] + p.q_u[k] + p.Bm[k].transpose() * eta[k] +
                            p.Bp[k - 1].transpose() * eta[k - 1]) + p.u_ref[k];
      p.D_u[k].project(t6);
      zn.u[k] = t6 - p.u_ref[k];
      dS += p.S[k].dot(eta[k]);
    }

    // node N
    const int n = N - 1;
    zn.x[n] = zeta.x[n] - a * (lam * zeta.x[n] + p.q_x[n] + p.Ap[n - 1].cwiseProduct(eta[n - 1]));
    t15 = zeta.xi[n] - a * (lam * zeta.xi[n] + p.q_xi[n] + p.Ep[n - 1].cwiseProduct(eta[n - 1])) + p.xi_ref[n];
    p.D_xi[n].project(t15);
    zn.xi[n] = t15 - p.xi_ref[n];
    t6 = zeta.u[n] - a * (lam * zeta.u[n] + p.q_u[n] + p.Bp[n - 1].transpose() * eta[n - 1]) + p.u_ref[n];
    p.D_u[n].project(t6);
    zn.u[n] = t6 - p.u_ref[n];

    Eigen::Matrix<double, 1, 1> ts;
    ts(0) = zeta.s - a * (lam * zeta.s + p.q_s + dS) + p.s_ref;
    p.D_s.project(ts);
    zn.s = ts(0) - p.s_ref;

    // dual
    const double es = 2.0 * zn.s - zeta.s;
    for (int k = 0; k < N - 1; ++k) {
      Vec15 v = p.Am[k] * (2.0 * zn.x[k] - zeta.x[k]);
      v += p.Ap[k].cwiseProduct(2.0 * zn.x[k + 1] - zeta.x[k + 1]);
      v += p.Em[k] * (2.0 * zn.xi[k] - zeta.xi[k]);
      v += p.Ep[k].cwiseProduct(2.0 * zn.xi[k + 1] - zeta.xi[k + 1]);
      v += p.Bm[k] * (2.0 * zn.u[k] - zeta.u[k]);
      v += p.Bp[k] * (2.0 * zn.u[k + 1] - zeta.u[k + 1]);
      v += p.S[k] * es;
      v += p.d[k];
      wn[k] = eta[k] + b * v;
    }

    // extrapolation
    for (int k = 0; k < N; ++k) {
      zeta.x[k] = (1.0 - rho) * zeta.x[k] + rho * zn.x[k];
      zeta.xi[k] = (1.0 - rho) * zeta.xi[k] + rho * zn.xi[k];
      zeta.u[k] = (1.0 - rho) * zeta.u[k] + rho * zn.u[k];
    }
    zeta.s = (1.0 - rho) * zeta.s + rho * zn.s;
    for (int k = 0; k < N - 1; ++k) eta[k] = (1.0 - rho) * eta[k] + rho * wn[k];

    r.iterations = j;
    if (observer) observer(j, zn, wn);
    if (j % tol.j_check == 0 && stopping(zn, zp, wn, wp, tol.eps_abs, tol.eps_rel)) {
      r.converged = true;
      break;
    }
  }

  r.z_hat = zn;
  r.z = PrimalBlocks::zeros(N);
  for (int k = 0; k < N; ++k) {
    r.z.x[k] = l.l_x1_inv * zn.x[k] + l.l_x2_inv * zn.xi[k];
    r.z.xi[k] = l.l_xi_inv * zn.xi[k];
    r.z.u[k] = l.l_u_inv * zn.u[k];
  }
  r.z.s = l.l_s_inv * zn.s;
  r.w = wn;

  DualBlocks hz;
  apply_H(p, zn, hz);
  double res = 0.0;
  for (int k = 0; k < N - 1; ++k) res = std::max(res, (hz[k] + p.d[k]).lpNorm<Eigen::Infinity>());
  r.residual = res;
  return r;
}

GenericResult pipg_generic(const GenericProblem& g, const StepParams& step, const StopTolerances& tol,
                           const VectorXd& z_warm, const VectorXd& w_warm, const GenericObserver& observer) {
  tol.validate();
  const auto n = g.H.cols(), m = g.H.rows();
  if (g.q_hat.size() != n || g.h.size() != m || z_warm.size() != n || w_warm.size() != m ||
      g.L.rows() != n || g.L_inv.rows() != n)
    throw Error(ErrorCode::invalid_input, "pipg_generic: dimension mismatch");
  const double lam = step.lambda, a = step.alpha, b = step.beta, rho = step.rho;

  VectorXd zeta = g.L * z_warm;
  VectorXd eta = w_warm;
  VectorXd zn = zeta, zp = zeta, wn = eta, wp = eta;
  GenericResult r;
  for (int j = 1; j <= tol.j_max; ++j) {
    zp.swap(zn);
    wp.swap(wn);
    zn = zeta - a * (lam * zeta + g.q_hat + g.H.transpose() * eta);
    g.project(zn);
    wn = eta + b * (g.H * (2.0 * zn - zeta) - g.h);
    zeta = (1.0 - rho) * zeta + rho * zn;
    eta = (1.0 - rho) * eta + rho * wn;
    r.iterations = j;
    if (observer) observer(j, zn, wn);
    if (j % tol.j_check == 0) {
      const double dz = (zn - zp).lpNorm<Eigen::Infinity>();
      const double dw = (wn - wp).lpNorm<Eigen::Infinity>();
      if (small_change(dz, zn.lpNorm<Eigen::Infinity>(), zp.lpNorm<Eigen::Infinity>(), tol.eps_abs, tol.eps_rel) &&
          small_change(dw, wn.lpNorm<Eigen::Infinity>(), wp.lpNorm<Eigen::Infinity>(), tol.eps_abs, tol.eps_rel)) {
        r.converged = true;
        break;
      }
    }
  }
  r.z_hat = zn;
  r.z = g.L_inv * zn;
  r.w = wn;
  return r;
}

}  // namespace seco
