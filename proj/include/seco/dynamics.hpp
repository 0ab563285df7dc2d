#pragma once

#include "seco/quat.hpp"
#include "seco/types.hpp"

#include <vector>

namespace seco {

struct VehicleParams {
  double g = 1.625;
  double alpha_me = 1.0 / (300.0 * 9.81);
  double alpha_rcs = 1.0 / (200.0 * 9.81);
  double l_cm = 1.0;
  Mat3 J = Vec3(4.2, 4.2, 0.6).asDiagonal();
  Mat3 J_inv = Vec3(1.0 / 4.2, 1.0 / 4.2, 1.0 / 0.6).asDiagonal();
  double m_i = 1500.0;
  double m_f = 750.0;

  // sets J and its closed-form 3x3 inverse (adjugate / determinant)
  void set_inertia(const Mat3& j);
  void validate() const;
};

struct VehicleState {
  double m = 0.0;
  DualQuaternion dq;
  DualVelocity dv;

  Vec15 vec() const;
  static VehicleState from_vec(const Vec15& x);
};

struct ControlInput {
  double T = 0.0;
  double delta = 0.0;
  double phi = 0.0;
  Vec3 tau = Vec3::Zero();

  Vec6 vec() const;
  static ControlInput from_vec(const Vec6& u);
};

struct Jacobians {
  Mat15 A;
  Mat15x6 B;
  Vec15 S;
};

struct IntervalBlocks {
  Mat15 A;
  Mat15x6 B_minus;
  Mat15x6 B_plus;
  Vec15 S;
  Vec15 d;
  Vec15 x_prop;
};

struct DiscreteDynamics {
  std::vector<IntervalBlocks> intervals;
};

Vec3 thrust_vector(const Vec6& u);

Vec15 eom(const Vec15& x, const Vec6& u, const VehicleParams& p);
Vec15 eom(const VehicleState& x, const ControlInput& u, const VehicleParams& p);
Vec15 dilated_eom(double tau, const Vec15& x, const Vec6& u, double s, const VehicleParams& p);

// Jacobians of the dilated dynamics s·f(x,u)
Jacobians jacobians(const Vec15& x, const Vec6& u, double s, const VehicleParams& p);

Vec6 foh(const Vec6& u_k, const Vec6& u_k1, double tau, double tau_k, double tau_k1);

DiscreteDynamics discretize(const StateSeq& x_ref, const ControlSeq& u_ref, double s_ref,
                            const VehicleParams& p, int substeps = 20);

StateSeq single_shot(const Vec15& x1, const ControlSeq& u, double s, const VehicleParams& p,
                     int substeps = 20);

}  // namespace seco
