#pragma once

#include "seco/projection.hpp"
#include "seco/quat.hpp"
#include "seco/types.hpp"

#include <optional>
#include <vector>

namespace seco {

struct ConstraintParams {
  double T_min = 600.0;
  double T_max = 3000.0;
  double Tdot_max = 1800.0;
  double delta_max = 0.0;
  double deltadot_max = 0.0;
  double phidot_max = 0.0;
  double tau_max = 50.0;
  double theta_max = 0.0;
  double theta_stc = 0.0;
  double omega_max = 0.0;
  double omega_stc = 0.0;
  double v_max = 90.0;
  double v_stc = 30.0;
  double h_min = 100.0;
  double rho_min = 500.0;
  double rho_max = 1250.0;
  double mu_stc = 0.0;
  Vec3 p_B = Vec3(0.5, 0.0, -0.8660254037844386);

  double m_i = 1500.0;
  double m_f = 750.0;
  Vec3 r_i = Vec3::Zero();
  Vec3 r_f = Vec3::Zero();
  Vec3 v_i = Vec3::Zero();
  double v_zf = 0.0;
  Quaternion q_i;
  Quaternion q_f;
  Vec3 omega_i = Vec3::Zero();

  // acute angle between p_B and the body z axis
  double gamma_boresight() const;
  void validate() const;
  Vec15 initial_state() const;
  DualQuaternion final_pose() const;
};

// angle between p_B and the body-frame direction to the landing site
double los_angle(const Vec15& x, const Vec3& p_B);
// angle between the body and inertial z axes
double tilt_angle(const Vec15& x);
Vec3 position(const Vec15& x);

int trigger(double position_norm, double rho_min, double rho_max);

// q̂ᵀ M q̂ forms: altitude and line of sight
Mat8 altitude_form();
Mat8 los_form(const Vec3& p_B);

// per node, 6-dim sets on u (slices "thrust" = T,δ,φ and "torque")
std::vector<ProjectionSet> combined_control_sets(const ControlSeq& u_ref, double s_ref,
                                                 const ConstraintParams& c);

std::optional<Halfspace> tilt_halfspace(const Vec8& dq_ref, double half_angle_sin);
Halfspace linearize_min_altitude(const Vec8& dq_ref, double h_min);
Halfspace linearize_los(const Vec8& dq_ref, double mu, const Vec3& p_B);
// linearization of the LoS form divided by ‖q_r‖² (value unchanged on unit dual quaternions,
// insensitive to drift of the real-part norm)
Halfspace linearize_los_unit(const Vec8& dq_ref, double mu, const Vec3& p_B);

// 15-dim set on ξ for one node
ProjectionSet combined_state_set(int psi, const Vec15& x_ref, const ConstraintParams& c);
// entries for nodes 2..N−1; first and last entries left empty (boundary nodes)
std::vector<ProjectionSet> combined_state_sets(const std::vector<int>& psi, const StateSeq& x_ref,
                                               const ConstraintParams& c);

struct BoundarySets {
  ProjectionSet initial;
  ProjectionSet terminal;
};
BoundarySets boundary_sets(const ConstraintParams& c);

}  // namespace seco
