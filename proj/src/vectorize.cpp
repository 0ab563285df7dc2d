#include "seco/vectorize.hpp"

#include "seco/audit.hpp"
#include "seco/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <memory>

namespace seco {

int primal_size(int N) { return (2 * kNx + kNu) * N + 1; }

VectorXd flatten(const PrimalBlocks& z) {
  const int N = static_cast<int>(z.x.size());
  VectorXd v(primal_size(N));
  for (int k = 0; k < N; ++k) {
    v.segment<kNx>(kNx * k) = z.x[k];
    v.segment<kNx>(kNx * (N + k)) = z.xi[k];
    v.segment<kNu>(2 * kNx * N + kNu * k) = z.u[k];
  }
  v(v.size() - 1) = z.s;
  return v;
}

PrimalBlocks unflatten_primal(const VectorXd& v, int N) {
  if (v.size() != primal_size(N)) throw Error(ErrorCode::invalid_input, "unflatten_primal: size mismatch");
  PrimalBlocks z = PrimalBlocks::zeros(N);
  for (int k = 0; k < N; ++k) {
    z.x[k] = v.segment<kNx>(kNx * k);
    z.xi[k] = v.segment<kNx>(kNx * (N + k));
    z.u[k] = v.segment<kNu>(2 * kNx * N + kNu * k);
  }
  z.s = v(v.size() - 1);
  return z;
}

VectorXd flatten(const DualBlocks& w) {
  VectorXd v(kNx * static_cast<int>(w.size()));
  for (size_t k = 0; k < w.size(); ++k) v.segment<kNx>(kNx * k) = w[k];
  return v;
}

DualBlocks unflatten_dual(const VectorXd& v, int N) {
  if (v.size() != kNx * (N - 1)) throw Error(ErrorCode::invalid_input, "unflatten_dual: size mismatch");
  DualBlocks w(N - 1);
  for (int k = 0; k < N - 1; ++k) w[k] = v.segment<kNx>(kNx * k);
  return w;
}

namespace {

int ix(int, int k) { return kNx * k; }
int ixi(int N, int k) { return kNx * (N + k); }
int iu(int N, int k) { return 2 * kNx * N + kNu * k; }
int is(int N) { return primal_size(N) - 1; }

}  // namespace

GenericProblem vectorize(const PreconditionedData& p) {
  const int N = p.N;
  const int n = primal_size(N), m = kNx * (N - 1);
  audit::note_matrix(m, n);
  GenericProblem g;
  g.H = MatrixXd::Zero(m, n);
  g.h = VectorXd::Zero(m);
  for (int k = 0; k < N - 1; ++k) {
    const int r = kNx * k;
    g.H.block<kNx, kNx>(r, ix(N, k)) = p.Am[k];
    g.H.block<kNx, kNx>(r, ix(N, k + 1)) = p.Ap[k].asDiagonal();
    g.H.block<kNx, kNx>(r, ixi(N, k)) = p.Em[k];
    g.H.block<kNx, kNx>(r, ixi(N, k + 1)) = p.Ep[k].asDiagonal();
    g.H.block<kNx, kNu>(r, iu(N, k)) = p.Bm[k];
    g.H.block<kNx, kNu>(r, iu(N, k + 1)) = p.Bp[k];
    g.H.block<kNx, 1>(r, is(N)) = p.S[k];
    g.h.segment<kNx>(r) = -p.d[k];
  }
  PrimalBlocks q = PrimalBlocks::zeros(N);
  q.x = p.q_x;
  q.xi = p.q_xi;
  q.u = p.q_u;
  q.s = p.q_s;
  g.q_hat = flatten(q);

  const StateCholesky& l = p.l;
  g.L = MatrixXd::Zero(n, n);
  g.L_inv = MatrixXd::Zero(n, n);
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < kNx; ++i) {
      g.L(ix(N, k) + i, ix(N, k) + i) = l.l_x1;
      g.L(ix(N, k) + i, ixi(N, k) + i) = l.l_x2;
      g.L(ixi(N, k) + i, ixi(N, k) + i) = l.l_xi;
      g.L_inv(ix(N, k) + i, ix(N, k) + i) = l.l_x1_inv;
      g.L_inv(ix(N, k) + i, ixi(N, k) + i) = l.l_x2_inv;
      g.L_inv(ixi(N, k) + i, ixi(N, k) + i) = l.l_xi_inv;
    }
    for (int i = 0; i < kNu; ++i) {
      g.L(iu(N, k) + i, iu(N, k) + i) = l.l_u;
      g.L_inv(iu(N, k) + i, iu(N, k) + i) = l.l_u_inv;
    }
  }
  g.L(is(N), is(N)) = l.l_s;
  g.L_inv(is(N), is(N)) = l.l_s_inv;

  auto data = std::make_shared<PreconditionedData>(p);
  g.project = [data, N](VecRef z) {
    const PreconditionedData& d = *data;
    auto shifted = [](const ProjectionSet& set, VecRef seg, const VectorXd& ref) {
      VectorXd t = seg + ref;
      set.project(t);
      seg = t - ref;
    };
    shifted(d.D_x1, z.segment(ix(N, 0), kNx), d.x1_ref[0]);
    z.segment(ixi(N, 0), kNx).setZero();
    for (int k = 1; k < N; ++k) shifted(d.D_xi[k], z.segment(ixi(N, k), kNx), d.xi_ref[k]);
    for (int k = 0; k < N; ++k) shifted(d.D_u[k], z.segment(iu(N, k), kNu), d.u_ref[k]);
    Eigen::VectorXd t = Eigen::VectorXd::Constant(1, z(is(N)) + d.s_ref);
    d.D_s.project(t);
    z(is(N)) = t(0) - d.s_ref;
  };
  return g;
}

DenseSubproblem dense_subproblem(const SubproblemData& sp) {
  sp.validate();
  const int N = sp.N;
  const int n = primal_size(N), m = kNx * (N - 1);
  audit::note_matrix(m, n);
  const Weights& w = sp.weights;
  DenseSubproblem d;
  d.N = N;
  d.Q = MatrixXd::Zero(n, n);
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < kNx; ++i) {
      d.Q(ix(N, k) + i, ix(N, k) + i) = w.w_tr + w.w_vse;
      d.Q(ix(N, k) + i, ixi(N, k) + i) = -w.w_vse;
      d.Q(ixi(N, k) + i, ix(N, k) + i) = -w.w_vse;
      d.Q(ixi(N, k) + i, ixi(N, k) + i) = w.w_vse;
    }
    for (int i = 0; i < kNu; ++i) d.Q(iu(N, k) + i, iu(N, k) + i) = w.w_tr;
  }
  d.Q(is(N), is(N)) = w.w_tr_s;

  PrimalBlocks q = PrimalBlocks::zeros(N);
  q.x = sp.q_x;
  q.xi = sp.q_xi;
  q.u = sp.q_u;
  q.s = sp.q_s;
  d.q = flatten(q);

  d.H = MatrixXd::Zero(m, n);
  d.h = VectorXd::Zero(m);
  for (int k = 0; k < N - 1; ++k) {
    const int r = kNx * k;
    d.H.block<kNx, kNx>(r, ix(N, k)) = sp.A[k];
    d.H.block<kNx, kNx>(r, ix(N, k + 1)) = -Mat15::Identity();
    d.H.block<kNx, kNu>(r, iu(N, k)) = sp.B_minus[k];
    d.H.block<kNx, kNu>(r, iu(N, k + 1)) = sp.B_plus[k];
    d.H.block<kNx, 1>(r, is(N)) = sp.S[k];
    d.h.segment<kNx>(r) = -sp.d[k];
  }
  return d;
}

DensePreconditioned hypersphere_generic(const DenseSubproblem& d, const SpectralOptions& o,
                                        std::optional<double> lambda_override) {
  const auto n = d.Q.rows();
  audit::note_matrix(n, n);
  audit::note_factorization();
  Eigen::LLT<MatrixXd> llt(d.Q);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::invalid_input, "hypersphere_generic: Q not positive definite");
  DensePreconditioned r;
  r.L = llt.matrixU();
  audit::note_factorization();
  r.L_inv = r.L.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(n, n));

  r.H_hat = d.H * r.L_inv;
  r.h_hat = d.h;
  for (Eigen::Index i = 0; i < r.H_hat.rows(); ++i) {
    const double nr = r.H_hat.row(i).lpNorm<Eigen::Infinity>();
    if (!(nr > 0.0)) throw Error(ErrorCode::degenerate_dynamics, "hypersphere_generic: zero row");
    r.H_hat.row(i) /= nr;
    r.h_hat(i) /= nr;
  }

  const MatrixXd& H = r.H_hat;
  const LinearMap Hm = [&H](const VectorXd& z) -> VectorXd { return H * z; };
  const LinearMap Htm = [&H](const VectorXd& w) -> VectorXd { return H.transpose() * w; };
  r.sigma_max = power_iteration(Hm, Htm, flatten(random_primal(d.N, o.seed)), o);
  if (lambda_override) {
    r.lambda = *lambda_override;
  } else {
    r.sigma_min = shifted_power_iteration(Hm, Htm, flatten(random_dual(d.N, o.seed)), o, r.sigma_max.sigma);
    r.lambda = std::sqrt(r.sigma_min.sigma / 2.0);
  }
  r.q_hat = r.lambda * (r.L_inv.transpose() * d.q);
  return r;
}

VectorXd kkt_solve(const MatrixXd& Q, const VectorXd& q, const MatrixXd& H, const VectorXd& h,
                   const MatrixXd& C, const VectorXd& c) {
  const auto n = Q.rows(), m = H.rows(), p = C.rows();
  MatrixXd K = MatrixXd::Zero(n + m + p, n + m + p);
  audit::note_matrix(K.rows(), K.cols());
  audit::note_factorization();
  K.topLeftCorner(n, n) = Q;
  K.block(0, n, n, m) = H.transpose();
  K.block(n, 0, m, n) = H;
  if (p > 0) {
    K.block(0, n + m, n, p) = C.transpose();
    K.block(n + m, 0, p, n) = C;
  }
  VectorXd rhs(n + m + p);
  rhs << -q, h, c;
  const VectorXd sol = K.fullPivLu().solve(rhs);
  return sol.head(n);
}

}  // namespace seco
