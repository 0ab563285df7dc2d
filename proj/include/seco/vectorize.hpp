#pragma once

// Dense vectorized forms of the subproblem. Verification and tests only; every
// builder here reports to the audit counters.

#include "seco/pipg.hpp"
#include "seco/precondition.hpp"
#include "seco/subproblem.hpp"

namespace seco {

// z = (x_1..x_N, ξ_1..ξ_N, u_1..u_N, s)
int primal_size(int N);
VectorXd flatten(const PrimalBlocks& z);
PrimalBlocks unflatten_primal(const VectorXd& z, int N);
VectorXd flatten(const DualBlocks& w);
DualBlocks unflatten_dual(const VectorXd& w, int N);

// Ĥ, q̂, ĥ = −d̂, hatted projector and L from block data
GenericProblem vectorize(const PreconditionedData& p);

struct DenseSubproblem {
  int N = 0;
  MatrixXd Q;
  VectorXd q;
  MatrixXd H;
  VectorXd h;
};

// ½zᵀQz + qᵀz, Hz = h, from the unpreconditioned block data
DenseSubproblem dense_subproblem(const SubproblemData& sp);

struct DensePreconditioned {
  MatrixXd L, L_inv;
  MatrixXd H_hat;
  VectorXd h_hat;
  VectorXd q_hat;
  double lambda = 1.0;
  SpectralResult sigma_max, sigma_min;
};

// the textbook preconditioner with a numerical Cholesky factorization
DensePreconditioned hypersphere_generic(const DenseSubproblem& d, const SpectralOptions& o,
                                        std::optional<double> lambda_override = std::nullopt);

// equality-constrained QP: min ½zᵀQz + qᵀz s.t. Hz = h, Cz = c
VectorXd kkt_solve(const MatrixXd& Q, const VectorXd& q, const MatrixXd& H, const VectorXd& h,
                   const MatrixXd& C, const VectorXd& c);

}  // namespace seco
