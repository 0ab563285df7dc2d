#pragma once

#include "seco/precondition.hpp"
#include "seco/types.hpp"

#include <functional>
#include <vector>

namespace seco {

struct StepParams {
  double lambda = 1.0;
  double sigma = 1.0;
  double omega = 1.0;
  double rho = 1.6;
  double alpha = 0.0;
  double beta = 0.0;
};

// α = 2/(λ + √(λ² + 4ωσ)), β = ωα
StepParams step_sizes(double lambda, double sigma, double omega = 1.0, double rho = 1.6);

struct StopTolerances {
  double eps_abs = 1e-8;
  double eps_rel = 1e-6;
  int j_check = 10;
  int j_max = 20000;

  void validate() const;
};

bool stopping(const PrimalBlocks& cur, const PrimalBlocks& prev, const DualBlocks& w_cur,
              const DualBlocks& w_prev, double eps_abs, double eps_rel);

// deviations in the prescaled (pre-hat) frame, and the transformed dual
struct WarmStart {
  PrimalBlocks z;
  DualBlocks w;

  static WarmStart zeros(int N);
};

struct PipgResult {
  PrimalBlocks z;       // recovered deviations
  PrimalBlocks z_hat;   // last projected iterate, hatted frame
  DualBlocks w;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // ‖Ĥẑ − ĥ‖∞ at exit
};

// called after every iteration with the projected primal and the new dual
using PipgObserver = std::function<void(int j, const PrimalBlocks& z_hat, const DualBlocks& w)>;

PipgResult pipg_custom(const PreconditionedData& p, const StepParams& step, const StopTolerances& tol,
                       const WarmStart& warm, const PipgObserver& observer = {});

// Vectorized problem for the generic listing; z = (x_1..x_N, ξ_1..ξ_N, u_1..u_N, s).
struct GenericProblem {
  VectorXd q_hat;
  MatrixXd H;
  VectorXd h;
  std::function<void(VecRef)> project;
  MatrixXd L, L_inv;
};

struct GenericResult {
  VectorXd z;
  VectorXd z_hat;
  VectorXd w;
  int iterations = 0;
  bool converged = false;
};

using GenericObserver = std::function<void(int j, const VectorXd& z_hat, const VectorXd& w)>;

GenericResult pipg_generic(const GenericProblem& g, const StepParams& step, const StopTolerances& tol,
                           const VectorXd& z_warm, const VectorXd& w_warm, const GenericObserver& observer = {});

}  // namespace seco
