#include "seco/constraints.hpp"

#include "seco/error.hpp"
#include "seco/log.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace seco {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::invalid_config, msg);
}

void window(double center, double rate, double dt, double lo_mag, double hi_mag, double& lo,
            double& hi, const char* what, int k) {
  lo = std::max(lo_mag, center - rate * dt);
  hi = std::min(hi_mag, center + rate * dt);
  if (lo > hi + 1e-12)
    throw Error(ErrorCode::infeasible_reference,
                std::string("empty ") + what + " window at node " + std::to_string(k + 1));
  if (lo > hi) hi = lo;
}

}  // namespace

double ConstraintParams::gamma_boresight() const {
  const double c = std::abs(p_B.z()) / p_B.norm();
  return std::acos(std::min(1.0, c));
}

void ConstraintParams::validate() const {
  require(T_min > 0.0 && T_max > T_min, "constraints.T_min/T_max: require 0 < T_min < T_max");
  require(Tdot_max > 0.0, "constraints.Tdot_max: must be positive");
  require(delta_max > 0.0 && delta_max < 0.5 * std::numbers::pi, "constraints.delta_max: must be in (0, 90) deg");
  require(deltadot_max > 0.0, "constraints.deltadot_max: must be positive");
  require(phidot_max > 0.0, "constraints.phidot_max: must be positive");
  require(tau_max > 0.0, "constraints.tau_max: must be positive");
  require(theta_max > theta_stc && theta_stc > 0.0 && theta_max <= std::numbers::pi,
          "constraints.theta_max/theta_stc: require 0 < theta_stc < theta_max <= 180 deg");
  require(omega_max > omega_stc && omega_stc > 0.0, "constraints.omega_max/omega_stc: require 0 < stc < max");
  require(v_max > v_stc && v_stc > 0.0, "constraints.v_max/v_stc: require 0 < stc < max");
  require(h_min >= 0.0, "constraints.h_min: must be nonnegative");
  require(rho_max > rho_min && rho_min > 0.0, "constraints.rho_min/rho_max: require 0 < rho_min < rho_max");
  require(mu_stc > 0.0 && mu_stc < 0.5 * std::numbers::pi, "constraints.mu_stc: must be in (0, 90) deg");
  require(std::abs(p_B.norm() - 1.0) < 1e-9, "constraints.p_B: must be a unit vector");
  require(theta_stc <= 0.5 * std::numbers::pi - mu_stc - gamma_boresight() + 1e-12,
          "constraints.theta_stc: infeasible, exceeds 90 deg - mu_stc - boresight angle");
  require(m_i > m_f && m_f > 0.0, "boundary.m_i/m_f: require m_i > m_f > 0");
  require(std::abs(q_i.norm() - 1.0) < 1e-9, "boundary.q_i: must be normalized");
  require(std::abs(q_f.norm() - 1.0) < 1e-9, "boundary.q_f: must be normalized");
  require(r_f.z() >= h_min, "boundary.r_f: terminal altitude below h_min");
}

Vec15 ConstraintParams::initial_state() const {
  Vec15 x;
  x(kMass) = m_i;
  x.segment<8>(kDq) = dq_from_pose(q_i, r_i).vec();
  x.segment<3>(kOmega) = omega_i;
  x.segment<3>(kVel) = rotate_to_body(q_i, v_i);
  return x;
}

DualQuaternion ConstraintParams::final_pose() const { return dq_from_pose(q_f, r_f); }

Vec3 position(const Vec15& x) { return extract_position(DualQuaternion::from_vec(x.segment<8>(kDq))); }

double los_angle(const Vec15& x, const Vec3& p_B) {
  const DualQuaternion dq = DualQuaternion::from_vec(x.segment<8>(kDq));
  const Vec3 r = extract_position(dq);
  const double n = r.norm();
  if (n == 0.0) throw Error(ErrorCode::undefined_geometry, "line of sight undefined at the target");
  const Vec3 to_site = rotate_to_body(dq.real.normalized(), -r) / n;
  return std::acos(std::clamp(p_B.dot(to_site) / p_B.norm(), -1.0, 1.0));
}

double tilt_angle(const Vec15& x) {
  const Vec4 q = x.segment<4>(kQr).normalized();
  const double c = 1.0 - 2.0 * (q(0) * q(0) + q(1) * q(1));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

int trigger(double n, double rho_min, double rho_max) {
  const double v = (rho_max - n) * (n - rho_min);
  return (v > 0.0) - (v < 0.0);
}

Mat8 altitude_form() {
  const Mat4 Z = left_matrix(Quaternion::pure(Vec3::UnitZ()));
  Mat8 M = Mat8::Zero();
  M.topRightCorner<4, 4>() = Z.transpose();
  M.bottomLeftCorner<4, 4>() = Z;
  return M;
}

Mat8 los_form(const Vec3& p_B) {
  const Mat4 P = right_matrix(Quaternion::pure(p_B));
  Mat8 M = Mat8::Zero();
  M.topRightCorner<4, 4>() = P.transpose();
  M.bottomLeftCorner<4, 4>() = P;
  return M;
}

std::vector<ProjectionSet> combined_control_sets(const ControlSeq& u_ref, double s_ref,
                                                 const ConstraintParams& c) {
  const int N = static_cast<int>(u_ref.size());
  if (N < 2) throw Error(ErrorCode::invalid_input, "combined_control_sets: need N >= 2");
  const double dt = s_ref / (N - 1);
  std::vector<ProjectionSet> sets;
  sets.reserve(N);
  const Eigen::Vector3d tau_hi = Eigen::Vector3d::Constant(c.tau_max);
  for (int k = 0; k < N; ++k) {
    Eigen::Vector3d lo, hi;
    if (k == 0) {
      lo << c.T_min, 0.0, 0.0;
      hi << c.T_max, c.delta_max, kTwoPi;
    } else {
      const Vec6& up = u_ref[k - 1];
      window(up(kThrust), c.Tdot_max, dt, c.T_min, c.T_max, lo(0), hi(0), "thrust", k);
      window(up(kDelta), c.deltadot_max, dt, 0.0, c.delta_max, lo(1), hi(1), "gimbal", k);
      window(up(kPhi), c.phidot_max, dt, 0.0, kTwoPi, lo(2), hi(2), "azimuth", k);
    }
    ProjectionSet s(kNu);
    s.add("thrust", kThrust, Box{lo, hi});
    s.add("torque", kTorque, Box{-tau_hi, tau_hi});
    sets.push_back(std::move(s));
  }
  return sets;
}

std::optional<Halfspace> tilt_halfspace(const Vec8& dq_ref, double half_angle_sin) {
  const Eigen::Vector2d q12 = dq_ref.head<2>();
  const double n = q12.norm();
  if (n == 0.0) return std::nullopt;
  Halfspace h{VectorXd::Zero(8), n * half_angle_sin};
  h.a.head<2>() = q12;
  return h;
}

Halfspace linearize_min_altitude(const Vec8& dq_ref, double h_min) {
  const Mat8 M = altitude_form();
  const Vec8 grad = 2.0 * M * dq_ref;
  const double val = dq_ref.dot(M * dq_ref);
  // val + gradᵀ(q − q̄) ≥ h_min
  return Halfspace{-grad, val - h_min - grad.dot(dq_ref)};
}

Halfspace linearize_los(const Vec8& dq_ref, double mu, const Vec3& p_B) {
  const Mat8 M = los_form(p_B);
  const Vec4 qd = dq_ref.tail<4>();
  const double nd = qd.norm();
  if (nd == 0.0) throw Error(ErrorCode::undefined_geometry, "line of sight undefined at the target");
  const double cm = std::cos(mu);
  Vec8 grad = 2.0 * M * dq_ref;
  grad.tail<4>() += cm * 2.0 * qd / nd;
  const double val = dq_ref.dot(M * dq_ref) + cm * 2.0 * nd;
  // val + gradᵀ(q − q̄) ≤ 0
  return Halfspace{grad, grad.dot(dq_ref) - val};
}

Halfspace linearize_los_unit(const Vec8& dq_ref, double mu, const Vec3& p_B) {
  const Mat8 M = los_form(p_B);
  const Vec4 qd = dq_ref.tail<4>();
  const double nd = qd.norm();
  const double nr = dq_ref.head<4>().norm();
  if (nd == 0.0) throw Error(ErrorCode::undefined_geometry, "line of sight undefined at the target");
  if (nr == 0.0) throw Error(ErrorCode::undefined_geometry, "zero real part in reference dual quaternion");
  const double cm = std::cos(mu);
  const double Q = dq_ref.dot(M * dq_ref);
  const double D = 2.0 * nd;
  // g = Q/nr² + cm·D/nr
  Vec8 grad = 2.0 * M * dq_ref / (nr * nr);
  grad.tail<4>() += cm * 2.0 * qd / (nd * nr);
  grad.head<4>() -= (2.0 * Q / (nr * nr * nr) + cm * D / (nr * nr)) * dq_ref.head<4>() / nr;
  const double val = Q / (nr * nr) + cm * D / nr;
  return Halfspace{grad, grad.dot(dq_ref) - val};
}

ProjectionSet combined_state_set(int psi, const Vec15& x_ref, const ConstraintParams& c) {
  ProjectionSet s(kNx);
  const Vec8 dq = x_ref.segment<8>(kDq);
  const bool stc = psi >= 0;
  const double wb = std::max(-psi * c.omega_max, c.omega_stc);
  const double vb = std::max(-psi * c.v_max, c.v_stc);
  const double theta = stc ? c.theta_stc : c.theta_max;
  const Halfspace second = stc ? linearize_los_unit(dq, c.mu_stc, c.p_B) : linearize_min_altitude(dq, c.h_min);
  const auto tilt = tilt_halfspace(dq, std::sin(0.5 * theta));
  if (tilt) {
    s.add("dq", kDq, TwoHalfspaces{*tilt, second});
  } else {
    log::debug("tilt halfspace dropped: upright reference");
    s.add("dq", kDq, second);
  }
  s.add("omega", kOmega, Box{VectorXd::Constant(3, -wb), VectorXd::Constant(3, wb)});
  s.add("vel", kVel, Ball{VectorXd::Zero(3), vb});
  return s;
}

std::vector<ProjectionSet> combined_state_sets(const std::vector<int>& psi, const StateSeq& x_ref,
                                               const ConstraintParams& c) {
  const int N = static_cast<int>(x_ref.size());
  if (static_cast<int>(psi.size()) != N) throw Error(ErrorCode::invalid_input, "combined_state_sets: size mismatch");
  std::vector<ProjectionSet> sets(N, ProjectionSet(kNx));
  for (int k = 1; k < N - 1; ++k) sets[k] = combined_state_set(psi[k], x_ref[k], c);
  return sets;
}

BoundarySets boundary_sets(const ConstraintParams& c) {
  BoundarySets b{ProjectionSet(kNx), ProjectionSet(kNx)};
  b.initial.add("state", 0, Singleton{c.initial_state()});

  b.terminal.add("mass", kMass, Halfspace{VectorXd::Constant(1, -1.0), -c.m_f});
  b.terminal.add("tilt", kQr, Singleton{VectorXd::Zero(2)});
  const Mat4 R = left_matrix(Quaternion::pure(c.r_f));
  const MatrixXd K = 0.5 * R.rightCols<2>();
  b.terminal.add("position", kQr + 2, AffineSubspace::graph(K));
  VectorXd dv = VectorXd::Zero(6);
  dv(5) = c.v_zf;
  b.terminal.add("velocity", kOmega, Singleton{dv});
  return b;
}

}  // namespace seco
