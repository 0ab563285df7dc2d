#include "seco/subproblem.hpp"

#include "seco/error.hpp"

#include <string>

namespace seco {

void Weights::validate() const {
  if (!(w_m > 0.0)) throw Error(ErrorCode::invalid_config, "weights.w_m: must be positive");
  if (!(w_tr > 0.0)) throw Error(ErrorCode::invalid_config, "weights.w_tr: must be positive");
  if (!(w_tr_s > 0.0)) throw Error(ErrorCode::invalid_config, "weights.w_tr_s: must be positive");
  if (!(w_vse > 0.0)) throw Error(ErrorCode::invalid_config, "weights.w_vse: must be positive");
}

void SubproblemData::validate() const {
  const auto n = static_cast<size_t>(N);
  if (N < 2 || A.size() != n - 1 || B_minus.size() != n - 1 || B_plus.size() != n - 1 ||
      S.size() != n - 1 || d.size() != n - 1 || q_x.size() != n || q_xi.size() != n ||
      q_u.size() != n || D_xi.size() != n || D_u.size() != n || x_ref.size() != n || u_ref.size() != n)
    throw Error(ErrorCode::invalid_input, "subproblem: inconsistent block dimensions");
  weights.validate();
}

std::vector<int> trigger_values(const StateSeq& x_ref, const ConstraintParams& c) {
  std::vector<int> psi(x_ref.size());
  for (size_t k = 0; k < x_ref.size(); ++k)
    psi[k] = trigger(2.0 * x_ref[k].segment<4>(kQd).norm(), c.rho_min, c.rho_max);
  return psi;
}

SubproblemData assemble(const DiscreteDynamics& dd, const StateSeq& x_ref, const ControlSeq& u_ref,
                        double s_ref, const Weights& w, const ConstraintParams& c,
                        const Scaling& sc, const Range& s_bounds) {
  w.validate();
  const int N = static_cast<int>(x_ref.size());
  if (N < 2 || static_cast<int>(u_ref.size()) != N || static_cast<int>(dd.intervals.size()) != N - 1)
    throw Error(ErrorCode::invalid_input, "assemble: blocks missing or mismatched");

  SubproblemData sp;
  sp.N = N;
  sp.weights = w;
  sp.A.resize(N - 1);
  sp.B_minus.resize(N - 1);
  sp.B_plus.resize(N - 1);
  sp.S.resize(N - 1);
  sp.d.resize(N - 1);
  const Vec15 xw_inv = sc.x_w.cwiseInverse();
  for (int k = 0; k < N - 1; ++k) {
    const IntervalBlocks& ib = dd.intervals[k];
    sp.A[k] = xw_inv.asDiagonal() * ib.A * sc.x_w.asDiagonal();
    sp.B_minus[k] = xw_inv.asDiagonal() * ib.B_minus * sc.u_w.asDiagonal();
    sp.B_plus[k] = xw_inv.asDiagonal() * ib.B_plus * sc.u_w.asDiagonal();
    sp.S[k] = xw_inv.cwiseProduct(ib.S) * sc.s_w;
    sp.d[k] = xw_inv.cwiseProduct(ib.d);
  }

  sp.q_x.assign(N, Vec15::Zero());
  sp.q_xi.assign(N, Vec15::Zero());
  sp.q_u.assign(N, Vec6::Zero());
  sp.q_s = 0.0;
  sp.q_x[N - 1](kMass) = -w.w_m;

  sp.x_ref.resize(N);
  sp.u_ref.resize(N);
  for (int k = 0; k < N; ++k) {
    sp.x_ref[k] = sc.scale_x(x_ref[k]);
    sp.u_ref[k] = sc.scale_u(u_ref[k]);
  }
  sp.s_ref = sc.scale_s(s_ref);

  sp.psi = trigger_values(x_ref, c);
  const BoundarySets bs = boundary_sets(c);
  sp.D_x1 = bs.initial.preimage(sc.x_lo, sc.x_w);
  sp.D_xi.assign(N, ProjectionSet(kNx));
  for (int k = 1; k < N - 1; ++k) {
    try {
      sp.D_xi[k] = combined_state_set(sp.psi[k], x_ref[k], c).preimage(sc.x_lo, sc.x_w);
    } catch (const Error& e) {
      throw Error(e.code(), "node " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  sp.D_xi[N - 1] = bs.terminal.preimage(sc.x_lo, sc.x_w);
  const auto us = combined_control_sets(u_ref, s_ref, c);
  sp.D_u.resize(N);
  for (int k = 0; k < N; ++k) sp.D_u[k] = us[k].preimage(sc.u_lo, sc.u_w);
  sp.D_s = ProjectionSet(1);
  sp.D_s.add("dilation", 0, Box{VectorXd::Constant(1, sc.scale_s(s_bounds.lo)), VectorXd::Constant(1, sc.scale_s(s_bounds.hi))});
  return sp;
}

}  // namespace seco
