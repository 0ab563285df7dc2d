#pragma once

#include "seco/constraints.hpp"
#include "seco/dynamics.hpp"
#include "seco/projection.hpp"
#include "seco/scaling.hpp"
#include "seco/types.hpp"

#include <vector>

namespace seco {

struct Weights {
  double w_m = 1.0;
  double w_tr = 2.0;
  double w_tr_s = 0.1;
  double w_vse = 3000.0;

  void validate() const;
};

// Deviation-form subproblem in prescaled coordinates (before preconditioning).
//   minimize  qᵀz + ½ w_tr Σ(‖Δx‖² + ‖Δu‖²) + ½ w_tr_s Δs² + ½ w_vse Σ‖Δx − Δξ‖²
//   s.t.      A_k Δx_k − Δx_{k+1} + B⁻_k Δu_k + B⁺_k Δu_{k+1} + S_k Δs + d_k = 0
//             x̄_1 + Δx_1 ∈ D_x1,  Δξ_1 = 0,  x̄_k + Δξ_k ∈ D_ξk,  ū_k + Δu_k ∈ D_uk,  s̄ + Δs ∈ D_s
struct SubproblemData {
  int N = 0;
  Weights weights;
  std::vector<Mat15> A;
  std::vector<Mat15x6> B_minus, B_plus;
  std::vector<Vec15> S, d;
  StateSeq q_x, q_xi;
  ControlSeq q_u;
  double q_s = 0.0;
  ProjectionSet D_x1;
  std::vector<ProjectionSet> D_xi;  // index 0 unused (pinned)
  std::vector<ProjectionSet> D_u;
  ProjectionSet D_s;
  StateSeq x_ref;
  ControlSeq u_ref;
  double s_ref = 0.0;
  std::vector<int> psi;

  void validate() const;
};

std::vector<int> trigger_values(const StateSeq& x_ref_phys, const ConstraintParams& c);

SubproblemData assemble(const DiscreteDynamics& dd, const StateSeq& x_ref, const ControlSeq& u_ref,
                        double s_ref, const Weights& w, const ConstraintParams& c,
                        const Scaling& sc, const Range& s_bounds);

}  // namespace seco
