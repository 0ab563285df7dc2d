#pragma once

#include "seco/projection.hpp"
#include "seco/subproblem.hpp"
#include "seco/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace seco {

struct StateCholesky {
  double l_x1 = 1.0, l_x2 = 0.0, l_xi = 1.0, l_u = 1.0, l_s = 1.0;
  double l_x1_inv = 1.0, l_x2_inv = 0.0, l_xi_inv = 1.0, l_u_inv = 1.0, l_s_inv = 1.0;
};

// closed-form factors of W_state = [[w_tr+w_vse, −w_vse], [−w_vse, w_vse]] and of w_tr, w_tr_s
StateCholesky chol_state(double w_tr, double w_vse, double w_tr_s = 1.0);

struct SpectralOptions {
  double eps_abs = 1e-9;
  double eps_rel = 1e-6;
  double eps_buff = 0.05;
  int j_max = 500;
  std::uint64_t seed = 20240607;
};

struct SpectralResult {
  double sigma = 0.0;      // buffered
  double raw = 0.0;        // before buffering
  int iterations = 0;
  bool converged = false;
};

using LinearMap = std::function<VectorXd(const VectorXd&)>;

SpectralResult power_iteration(const LinearMap& H, const LinearMap& Ht, VectorXd z,
                               const SpectralOptions& o);
SpectralResult shifted_power_iteration(const LinearMap& H, const LinearMap& Ht, VectorXd w,
                                       const SpectralOptions& o, double sigma_max);

// primal blocks (x, ξ, u, s) and dual blocks (one per interval)
struct PrimalBlocks {
  StateSeq x, xi;
  ControlSeq u;
  double s = 0.0;

  static PrimalBlocks zeros(int N);
};
using DualBlocks = StateSeq;

// Preconditioned subproblem: Â⁺ and Ê⁺ are diagonal after row normalization.
struct PreconditionedData {
  int N = 0;
  StateCholesky l;
  double lambda = 1.0;
  SpectralResult sigma_max, sigma_min;

  std::vector<Mat15> Am, Em;
  std::vector<Vec15> Ap, Ep;
  std::vector<Mat15x6> Bm, Bp;
  std::vector<Vec15> S, d;

  StateSeq q_x, q_xi;
  ControlSeq q_u;
  double q_s = 0.0;

  ProjectionSet D_x1;
  std::vector<ProjectionSet> D_xi, D_u;
  ProjectionSet D_s;

  StateSeq x1_ref;  // l_x1 x̄_1 in slot 0 only
  StateSeq xi_ref;  // l_ξ x̄_k
  ControlSeq u_ref; // l_u ū_k
  double s_ref = 0.0;
};

// w = Ĥ z
void apply_H(const PreconditionedData& p, const PrimalBlocks& z, DualBlocks& w);
// z = Ĥᵀ w
void apply_Ht(const PreconditionedData& p, const DualBlocks& w, PrimalBlocks& z);

SpectralResult power_iteration_custom(const PreconditionedData& p, PrimalBlocks z, const SpectralOptions& o);
SpectralResult shifted_power_iteration_custom(const PreconditionedData& p, DualBlocks w,
                                              const SpectralOptions& o, double sigma_max);

// deterministic pseudo-random seeds for the spectral estimators
PrimalBlocks random_primal(int N, std::uint64_t seed);
DualBlocks random_dual(int N, std::uint64_t seed);

// Hatted blocks, row normalization and set scaling; no spectral estimates, λ = 1, q̂ unscaled.
PreconditionedData precondition_blocks(const SubproblemData& sp);
PreconditionedData precondition(const SubproblemData& sp, const SpectralOptions& o,
                                std::optional<double> lambda_override = std::nullopt);

}  // namespace seco
