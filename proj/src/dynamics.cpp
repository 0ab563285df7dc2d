#include "seco/dynamics.hpp"

#include "seco/discretize.hpp"
#include "seco/error.hpp"

#include <cmath>
#include <string>

namespace seco {

void VehicleParams::set_inertia(const Mat3& j) {
  J = j;
  Mat3 adj;
  adj(0, 0) = j(1, 1) * j(2, 2) - j(1, 2) * j(2, 1);
  adj(0, 1) = j(0, 2) * j(2, 1) - j(0, 1) * j(2, 2);
  adj(0, 2) = j(0, 1) * j(1, 2) - j(0, 2) * j(1, 1);
  adj(1, 0) = j(1, 2) * j(2, 0) - j(1, 0) * j(2, 2);
  adj(1, 1) = j(0, 0) * j(2, 2) - j(0, 2) * j(2, 0);
  adj(1, 2) = j(0, 2) * j(1, 0) - j(0, 0) * j(1, 2);
  adj(2, 0) = j(1, 0) * j(2, 1) - j(1, 1) * j(2, 0);
  adj(2, 1) = j(0, 1) * j(2, 0) - j(0, 0) * j(2, 1);
  adj(2, 2) = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
  const double det = j(0, 0) * adj(0, 0) + j(0, 1) * adj(1, 0) + j(0, 2) * adj(2, 0);
  if (!(std::abs(det) > 0.0)) throw Error(ErrorCode::invalid_config, "inertia: singular matrix");
  J_inv = adj / det;
}

void VehicleParams::validate() const {
  if (!(g > 0.0)) throw Error(ErrorCode::invalid_config, "vehicle.g: must be positive");
  if (!(alpha_me >= 0.0) || !(alpha_rcs >= 0.0))
    throw Error(ErrorCode::invalid_config, "vehicle.isp: must be positive");
  if (!(l_cm > 0.0)) throw Error(ErrorCode::invalid_config, "vehicle.l_cm: must be positive");
  if (!(m_f > 0.0) || !(m_i > m_f))
    throw Error(ErrorCode::invalid_config, "vehicle.m_i/m_f: require m_i > m_f > 0");
  if ((J - J.transpose()).cwiseAbs().maxCoeff() > 1e-12 * J.cwiseAbs().maxCoeff())
    throw Error(ErrorCode::invalid_config, "vehicle.J: must be symmetric");
  const double m1 = J(0, 0);
  const double m2 = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
  if (!(m1 > 0.0) || !(m2 > 0.0) || !(J.determinant() > 0.0))
    throw Error(ErrorCode::invalid_config, "vehicle.J: must be positive definite");
}

Vec15 VehicleState::vec() const {
  Vec15 x;
  x(kMass) = m;
  x.segment<8>(kDq) = dq.vec();
  x.segment<3>(kOmega) = dv.omega_B;
  x.segment<3>(kVel) = dv.v_B;
  return x;
}

VehicleState VehicleState::from_vec(const Vec15& x) {
  return {x(kMass), DualQuaternion::from_vec(x.segment<8>(kDq)),
          {x.segment<3>(kOmega), x.segment<3>(kVel)}};
}

Vec6 ControlInput::vec() const {
  Vec6 u;
  u << T, delta, phi, tau;
  return u;
}

ControlInput ControlInput::from_vec(const Vec6& u) {
  return {u(kThrust), u(kDelta), u(kPhi), u.segment<3>(kTorque)};
}

Vec3 thrust_vector(const Vec6& u) {
  const double T = u(kThrust), sd = std::sin(u(kDelta)), cd = std::cos(u(kDelta));
  const double sp = std::sin(u(kPhi)), cp = std::cos(u(kPhi));
  return T * Vec3(sd * cp, sd * sp, cd);
}

namespace {

struct VehicleModel {
  static constexpr int nx = kNx;
  static constexpr int nu = kNu;
  const VehicleParams& p;

  Vec3 arm() const { return Vec3(0.0, 0.0, -p.l_cm); }

  Vec15 f(const Vec15& x, const Vec6& u) const {
    const double m = x(kMass);
    if (!(m > 0.0)) throw Error(ErrorCode::singular_mass, "mass must be positive");
    const Quaternion q = Quaternion::from_vec(x.segment<4>(kQr));
    const Quaternion d = Quaternion::from_vec(x.segment<4>(kQd));
    const Vec3 w = x.segment<3>(kOmega);
    const Vec3 v = x.segment<3>(kVel);
    const Vec3 tau = u.segment<3>(kTorque);
    const Vec3 F = thrust_vector(u);

    Vec15 dx;
    dx(kMass) = -(p.alpha_me * u(kThrust) + p.alpha_rcs * tau.norm() / p.l_cm);
    const Quaternion qw = quat_mul(q, Quaternion::pure(w));
    const Quaternion qv = quat_mul(q, Quaternion::pure(v));
    const Quaternion dw = quat_mul(d, Quaternion::pure(w));
    dx.segment<4>(kQr) = 0.5 * qw.vec();
    dx.segment<4>(kQd) = 0.5 * (qv.vec() + dw.vec());
    const Vec3 g_B = rotate_to_body(q, Vec3(0.0, 0.0, -p.g));
    dx.segment<3>(kOmega) = p.J_inv * (-w.cross(p.J * w) + (arm().cross(F) + tau) / m);
    dx.segment<3>(kVel) = -w.cross(v) + F / m + g_B;
    return dx;
  }

  void jac(const Vec15& x, const Vec6& u, Mat15& A, Mat15x6& B) const {
    const double m = x(kMass);
    if (!(m > 0.0)) throw Error(ErrorCode::singular_mass, "mass must be positive");
    const Quaternion q = Quaternion::from_vec(x.segment<4>(kQr));
    const Quaternion d = Quaternion::from_vec(x.segment<4>(kQd));
    const Vec3 w = x.segment<3>(kOmega);
    const Vec3 v = x.segment<3>(kVel);
    const Vec3 tau = u.segment<3>(kTorque);
    const Vec3 F = thrust_vector(u);
    const Mat3 L = skew(arm());

    A.setZero();
    B.setZero();

    const Mat4 Lq = left_matrix(q);
    const Mat4 Ld = left_matrix(d);
    A.block<4, 4>(kQr, kQr) = 0.5 * right_matrix(Quaternion::pure(w));
    A.block<4, 3>(kQr, kOmega) = 0.5 * Lq.leftCols<3>();
    A.block<4, 4>(kQd, kQr) = 0.5 * right_matrix(Quaternion::pure(v));
    A.block<4, 4>(kQd, kQd) = 0.5 * right_matrix(Quaternion::pure(w));
    A.block<4, 3>(kQd, kOmega) = 0.5 * Ld.leftCols<3>();
    A.block<4, 3>(kQd, kVel) = 0.5 * Lq.leftCols<3>();

    const Vec3 Jw = p.J * w;
    A.block<3, 3>(kOmega, kOmega) = p.J_inv * (skew(Jw) - skew(w) * p.J);
    A.block<3, 1>(kOmega, kMass) = -p.J_inv * (L * F + tau) / (m * m);

    const Quaternion gI = Quaternion::pure(Vec3(0.0, 0.0, -p.g));
    const Mat4 C = Vec4(-1.0, -1.0, -1.0, 1.0).asDiagonal();
    const Mat4 dg = right_matrix(quat_mul(gI, q)) * C + left_matrix(quat_mul(quat_conj(q), gI));
    A.block<3, 4>(kVel, kQr) = dg.topRows<3>();
    A.block<3, 3>(kVel, kOmega) = skew(v);
    A.block<3, 3>(kVel, kVel) = -skew(w);
    A.block<3, 1>(kVel, kMass) = -F / (m * m);

    const double T = u(kThrust), sd = std::sin(u(kDelta)), cd = std::cos(u(kDelta));
    const double sp = std::sin(u(kPhi)), cp = std::cos(u(kPhi));
    Eigen::Matrix3d dF;
    dF.col(0) = Vec3(sd * cp, sd * sp, cd);
    dF.col(1) = T * Vec3(cd * cp, cd * sp, -sd);
    dF.col(2) = T * Vec3(-sd * sp, sd * cp, 0.0);

    B(kMass, kThrust) = -p.alpha_me;
    const double tn = tau.norm();
    if (tn > 0.0) B.block<1, 3>(kMass, kTorque) = -p.alpha_rcs / (tn * p.l_cm) * tau.transpose();
    B.block<3, 3>(kOmega, kThrust) = p.J_inv * L * dF / m;
    B.block<3, 3>(kOmega, kTorque) = p.J_inv / m;
    B.block<3, 3>(kVel, kThrust) = dF / m;
  }
};

}  // namespace

Vec15 eom(const Vec15& x, const Vec6& u, const VehicleParams& p) { return VehicleModel{p}.f(x, u); }

Vec15 eom(const VehicleState& x, const ControlInput& u, const VehicleParams& p) {
  return eom(x.vec(), u.vec(), p);
}

Vec15 dilated_eom(double, const Vec15& x, const Vec6& u, double s, const VehicleParams& p) {
  if (!(s > 0.0)) throw Error(ErrorCode::invalid_input, "dilation factor must be positive");
  return s * eom(x, u, p);
}

Jacobians jacobians(const Vec15& x, const Vec6& u, double s, const VehicleParams& p) {
  const VehicleModel model{p};
  Jacobians j;
  model.jac(x, u, j.A, j.B);
  j.A *= s;
  j.B *= s;
  j.S = model.f(x, u);
  return j;
}

Vec6 foh(const Vec6& u_k, const Vec6& u_k1, double tau, double tau_k, double tau_k1) {
  if (!(tau_k1 > tau_k) || tau < tau_k || tau >= tau_k1)
    throw Error(ErrorCode::invalid_input, "foh: tau outside [tau_k, tau_k+1)");
  const double sp = (tau - tau_k) / (tau_k1 - tau_k);
  return (1.0 - sp) * u_k + sp * u_k1;
}

DiscreteDynamics discretize(const StateSeq& x_ref, const ControlSeq& u_ref, double s_ref,
                            const VehicleParams& p, int substeps) {
  const int N = static_cast<int>(x_ref.size());
  if (N < 2 || static_cast<int>(u_ref.size()) != N)
    throw Error(ErrorCode::invalid_input, "discretize: need N >= 2 matching states and controls");
  if (substeps < 1) throw Error(ErrorCode::invalid_input, "discretize: substeps must be >= 1");
  const VehicleModel model{p};
  const double dtau = 1.0 / (N - 1);
  DiscreteDynamics out;
  out.intervals.resize(N - 1);
  for (int k = 0; k < N - 1; ++k) {
    try {
      const auto blk = foh_interval(model, x_ref[k], u_ref[k], u_ref[k + 1], s_ref, dtau, substeps);
      IntervalBlocks& ib = out.intervals[k];
      ib.A = blk.A;
      ib.B_minus = blk.B_minus;
      ib.B_plus = blk.B_plus;
      ib.S = blk.S;
      ib.x_prop = blk.x_prop;
      ib.d = blk.x_prop - x_ref[k + 1];
    } catch (const Error& e) {
      throw Error(e.code(), "interval " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return out;
}

StateSeq single_shot(const Vec15& x1, const ControlSeq& u, double s, const VehicleParams& p,
                     int substeps) {
  const int N = static_cast<int>(u.size());
  if (N < 2) throw Error(ErrorCode::invalid_input, "single_shot: need N >= 2");
  if (!(s > 0.0)) throw Error(ErrorCode::invalid_input, "single_shot: s must be positive");
  const VehicleModel model{p};
  const double dtau = 1.0 / (N - 1);
  StateSeq xs(N);
  xs[0] = x1;
  for (int k = 0; k < N - 1; ++k) {
    Vec15 x;
    try {
      x = foh_propagate(model, xs[k], u[k], u[k + 1], s, dtau, substeps);
    } catch (const Error& e) {
      throw Error(e.code(), "interval " + std::to_string(k + 1) + ": " + e.what());
    }
    DualQuaternion dq = DualQuaternion::from_vec(x.segment<8>(kDq));
    if (dq_unit_defect(dq) > 1e-9) x.segment<8>(kDq) = dq_normalize(dq).vec();
    xs[k + 1] = x;
  }
  return xs;
}

}  // namespace seco
