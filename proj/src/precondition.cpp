#include "seco/precondition.hpp"

#include "seco/error.hpp"
#include "seco/log.hpp"

#include <cmath>
#include <random>
#include <string>

namespace seco {

StateCholesky chol_state(double w_tr, double w_vse, double w_tr_s) {
  if (!(w_tr > 0.0) || !(w_vse > 0.0) || !(w_tr_s > 0.0))
    throw Error(ErrorCode::invalid_config, "chol_state: weights must be positive");
  StateCholesky c;
  c.l_x1 = std::sqrt(w_tr + w_vse);
  c.l_x2 = -w_vse / c.l_x1;
  c.l_xi = std::sqrt(w_tr * w_vse) / c.l_x1;
  c.l_x1_inv = 1.0 / c.l_x1;
  c.l_x2_inv = -c.l_x2 / (c.l_x1 * c.l_xi);
  c.l_xi_inv = 1.0 / c.l_xi;
  c.l_u = std::sqrt(w_tr);
  c.l_u_inv = 1.0 / c.l_u;
  c.l_s = std::sqrt(w_tr_s);
  c.l_s_inv = 1.0 / c.l_s;
  return c;
}

namespace {

bool close(double a, double b, const SpectralOptions& o) {
  return std::abs(a - b) <= o.eps_abs + o.eps_rel * std::max(a, b);
}

double norm2(const PrimalBlocks& z) {
  double acc = z.s * z.s;
  for (size_t k = 0; k < z.x.size(); ++k)
    acc += z.x[k].squaredNorm() + z.xi[k].squaredNorm() + z.u[k].squaredNorm();
  return std::sqrt(acc);
}

double norm2(const DualBlocks& w) {
  double acc = 0.0;
  for (const Vec15& b : w) acc += b.squaredNorm();
  return std::sqrt(acc);
}

}  // namespace

SpectralResult power_iteration(const LinearMap& H, const LinearMap& Ht, VectorXd z, const SpectralOptions& o) {
  double sigma = z.norm();
  if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_input, "power iteration: zero seed");
  SpectralResult r;
  double sigma_star = sigma;
  for (int j = 1; j <= o.j_max; ++j) {
    const VectorXd w = H(z) / sigma;
    z = Ht(w);
    sigma_star = z.norm();
    r.iterations = j;
    if (close(sigma_star, sigma, o)) {
      r.converged = true;
      break;
    }
    if (j < o.j_max) sigma = sigma_star;
  }
  r.raw = sigma_star;
  r.sigma = (1.0 + o.eps_buff) * sigma_star;
  return r;
}

SpectralResult shifted_power_iteration(const LinearMap& H, const LinearMap& Ht, VectorXd w,
                                       const SpectralOptions& o, double sigma_max) {
  double st = w.norm();
  if (!(st > 0.0)) throw Error(ErrorCode::invalid_input, "shifted power iteration: zero seed");
  SpectralResult r;
  double st_star = st;
  for (int j = 1; j <= o.j_max; ++j) {
    const VectorXd z = Ht(w);
    w = (H(z) - sigma_max * w) / st;
    st_star = w.norm();
    r.iterations = j;
    if (close(st_star, st, o)) {
      r.converged = true;
      break;
    }
    if (j < o.j_max) st = st_star;
  }
  r.raw = sigma_max - st_star;
  r.sigma = (1.0 - o.eps_buff) * r.raw;
  return r;
}

PrimalBlocks PrimalBlocks::zeros(int N) {
  PrimalBlocks z;
  z.x.assign(N, Vec15::Zero());
  z.xi.assign(N, Vec15::Zero());
  z.u.assign(N, Vec6::Zero());
  z.s = 0.0;
  return z;
}

void apply_H(const PreconditionedData& p, const PrimalBlocks& z, DualBlocks& w) {
  w.resize(p.N - 1);
  for (int k = 0; k < p.N - 1; ++k) {
    Vec15& r = w[k];
    r.noalias() = p.Am[k] * z.x[k];
    r += p.Ap[k].cwiseProduct(z.x[k + 1]);
    r.noalias() += p.Em[k] * z.xi[k];
    r += p.Ep[k].cwiseProduct(z.xi[k + 1]);
    r.noalias() += p.Bm[k] * z.u[k];
    r.noalias() += p.Bp[k] * z.u[k + 1];
    r += p.S[k] * z.s;
  }
}

void apply_Ht(const PreconditionedData& p, const DualBlocks& w, PrimalBlocks& z) {
  const int N = p.N;
  z.x.resize(N);
  z.xi.resize(N);
  z.u.resize(N);
  z.x[0].noalias() = p.Am[0].transpose() * w[0];
  z.xi[0].noalias() = p.Em[0].transpose() * w[0];
  z.u[0].noalias() = p.Bm[0].transpose() * w[0];
  z.s = p.S[0].dot(w[0]);
  for (int k = 1; k < N - 1; ++k) {
    z.x[k].noalias() = p.Am[k].transpose() * w[k];
    z.x[k] += p.Ap[k - 1].cwiseProduct(w[k - 1]);
    z.xi[k].noalias() = p.Em[k].transpose() * w[k];
    z.xi[k] += p.Ep[k - 1].cwiseProduct(w[k - 1]);
    z.u[k].noalias() = p.Bm[k].transpose() * w[k];
    z.u[k].noalias() += p.Bp[k - 1].transpose() * w[k - 1];
    z.s += p.S[k].dot(w[k]);
  }
  z.x[N - 1] = p.Ap[N - 2].cwiseProduct(w[N - 2]);
  z.xi[N - 1] = p.Ep[N - 2].cwiseProduct(w[N - 2]);
  z.u[N - 1].noalias() = p.Bp[N - 2].transpose() * w[N - 2];
}

SpectralResult power_iteration_custom(const PreconditionedData& p, PrimalBlocks z, const SpectralOptions& o) {
  double sigma = norm2(z);
  if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_input, "power iteration: zero seed");
  SpectralResult r;
  DualBlocks w;
  double sigma_star = sigma;
  for (int j = 1; j <= o.j_max; ++j) {
    apply_H(p, z, w);
    for (Vec15& b : w) b /= sigma;
    apply_Ht(p, w, z);
    sigma_star = norm2(z);
    r.iterations = j;
    if (close(sigma_star, sigma, o)) {
      r.converged = true;
      break;
    }
    if (j < o.j_max) sigma = sigma_star;
  }
  r.raw = sigma_star;
  r.sigma = (1.0 + o.eps_buff) * sigma_star;
  return r;
}

SpectralResult shifted_power_iteration_custom(const PreconditionedData& p, DualBlocks w,
                                              const SpectralOptions& o, double sigma_max) {
  double st = norm2(w);
  if (!(st > 0.0)) throw Error(ErrorCode::invalid_input, "shifted power iteration: zero seed");
  SpectralResult r;
  PrimalBlocks z;
  DualBlocks hz;
  double st_star = st;
  for (int j = 1; j <= o.j_max; ++j) {
    apply_Ht(p, w, z);
    apply_H(p, z, hz);
    for (int k = 0; k < p.N - 1; ++k) w[k] = (hz[k] - sigma_max * w[k]) / st;
    st_star = norm2(w);
    r.iterations = j;
    if (close(st_star, st, o)) {
      r.converged = true;
      break;
    }
    if (j < o.j_max) st = st_star;
  }
  r.raw = sigma_max - st_star;
  r.sigma = (1.0 - o.eps_buff) * r.raw;
  return r;
}

PrimalBlocks random_primal(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  PrimalBlocks z = PrimalBlocks::zeros(N);
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < kNx; ++i) z.x[k](i) = U(rng);
    for (int i = 0; i < kNx; ++i) z.xi[k](i) = U(rng);
    for (int i = 0; i < kNu; ++i) z.u[k](i) = U(rng);
  }
  z.s = U(rng);
  return z;
}

DualBlocks random_dual(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  DualBlocks w(N - 1);
  for (Vec15& b : w)
    for (int i = 0; i < kNx; ++i) b(i) = U(rng);
  return w;
}

PreconditionedData precondition_blocks(const SubproblemData& sp) {
  sp.validate();
  const Weights& w = sp.weights;
  const int N = sp.N;
  PreconditionedData p;
  p.N = N;
  p.l = chol_state(w.w_tr, w.w_vse, w.w_tr_s);
  const StateCholesky& l = p.l;

  p.Am.resize(N - 1);
  p.Em.resize(N - 1);
  p.Ap.resize(N - 1);
  p.Ep.resize(N - 1);
  p.Bm.resize(N - 1);
  p.Bp.resize(N - 1);
  p.S.resize(N - 1);
  p.d.resize(N - 1);
  for (int k = 0; k < N - 1; ++k) {
    p.Am[k] = l.l_x1_inv * sp.A[k];
    p.Ap[k].setConstant(-l.l_x1_inv);
    p.Em[k] = l.l_x2_inv * sp.A[k];
    p.Ep[k].setConstant(-l.l_x2_inv);
    p.Bm[k] = l.l_u_inv * sp.B_minus[k];
    p.Bp[k] = l.l_u_inv * sp.B_plus[k];
    p.S[k] = l.l_s_inv * sp.S[k];
    p.d[k] = sp.d[k];
    if (!sp.A[k].allFinite() || !sp.B_minus[k].allFinite() || !sp.B_plus[k].allFinite() || !sp.S[k].allFinite() ||
        !sp.d[k].allFinite())
      throw Error(ErrorCode::degenerate_dynamics, "non-finite dynamics in interval " + std::to_string(k + 1));
    for (int r = 0; r < kNx; ++r) {
      double n = std::abs(p.Ap[k](r));
      n = std::max(n, std::abs(p.Ep[k](r)));
      n = std::max(n, std::abs(p.S[k](r)));
      n = std::max(n, p.Am[k].row(r).cwiseAbs().maxCoeff());
      n = std::max(n, p.Em[k].row(r).cwiseAbs().maxCoeff());
      n = std::max(n, p.Bm[k].row(r).cwiseAbs().maxCoeff());
      n = std::max(n, p.Bp[k].row(r).cwiseAbs().maxCoeff());
      if (!(n > 0.0) || !std::isfinite(n))
        throw Error(ErrorCode::degenerate_dynamics,
                    "zero row norm in interval " + std::to_string(k + 1) + ", row " + std::to_string(r + 1));
      const double inv = 1.0 / n;
      p.Am[k].row(r) *= inv;
      p.Em[k].row(r) *= inv;
      p.Bm[k].row(r) *= inv;
      p.Bp[k].row(r) *= inv;
      p.Ap[k](r) *= inv;
      p.Ep[k](r) *= inv;
      p.S[k](r) *= inv;
      p.d[k](r) *= inv;
    }
  }

  p.q_x.resize(N);
  p.q_xi.resize(N);
  p.q_u.resize(N);
  for (int k = 0; k < N; ++k) {
    p.q_x[k] = l.l_x1_inv * sp.q_x[k];
    p.q_xi[k] = l.l_x2_inv * sp.q_x[k] + l.l_xi_inv * sp.q_xi[k];
    p.q_u[k] = l.l_u_inv * sp.q_u[k];
  }
  p.q_s = l.l_s_inv * sp.q_s;

  p.D_x1 = sp.D_x1.scaled(l.l_x1);
  p.D_xi.resize(N);
  p.D_u.resize(N);
  for (int k = 0; k < N; ++k) {
    p.D_xi[k] = sp.D_xi[k].scaled(l.l_xi);
    p.D_u[k] = sp.D_u[k].scaled(l.l_u);
  }
  p.D_s = sp.D_s.scaled(l.l_s);

  p.x1_ref.resize(N);
  p.xi_ref.resize(N);
  p.u_ref.resize(N);
  for (int k = 0; k < N; ++k) {
    p.x1_ref[k] = l.l_x1 * sp.x_ref[k];
    p.xi_ref[k] = l.l_xi * sp.x_ref[k];
    p.u_ref[k] = l.l_u * sp.u_ref[k];
  }
  p.s_ref = l.l_s * sp.s_ref;
  return p;
}

PreconditionedData precondition(const SubproblemData& sp, const SpectralOptions& o,
                                std::optional<double> lambda_override) {
  PreconditionedData p = precondition_blocks(sp);
  p.sigma_max = power_iteration_custom(p, random_primal(p.N, o.seed), o);
  if (!p.sigma_max.converged) log::warn("power iteration reached j_max without converging");
  if (lambda_override) {
    if (!(*lambda_override > 0.0)) throw Error(ErrorCode::invalid_config, "solver.lambda: must be positive");
    p.lambda = *lambda_override;
  } else {
    p.sigma_min = shifted_power_iteration_custom(p, random_dual(p.N, o.seed), o, p.sigma_max.sigma);
    if (!p.sigma_min.converged) log::debug("shifted power iteration reached j_max without converging");
    if (!(p.sigma_min.sigma > 0.0))
      throw Error(ErrorCode::degenerate_dynamics, "nonpositive minimum singular value estimate");
    p.lambda = std::sqrt(p.sigma_min.sigma / 2.0);
  }
  for (int k = 0; k < p.N; ++k) {
    p.q_x[k] *= p.lambda;
    p.q_xi[k] *= p.lambda;
    p.q_u[k] *= p.lambda;
  }
  p.q_s *= p.lambda;
  return p;
}

}  // namespace seco
