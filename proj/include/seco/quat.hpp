#pragma once

#include "seco/types.hpp"

namespace seco {

// Scalar-last quaternion (x, y, z, w), Hamilton product.
struct Quaternion {
  Vec3 v = Vec3::Zero();
  double w = 1.0;

  Quaternion() = default;
  Quaternion(const Vec3& vec, double scalar) : v(vec), w(scalar) {}
  Quaternion(double x, double y, double z, double s) : v(x, y, z), w(s) {}

  static Quaternion identity() { return {}; }
  static Quaternion zero() { return {Vec3::Zero(), 0.0}; }
  static Quaternion pure(const Vec3& vec) { return {vec, 0.0}; }
  static Quaternion from_vec(const Vec4& c) { return {c.head<3>(), c(3)}; }

  Vec4 vec() const { return {v.x(), v.y(), v.z(), w}; }
  double norm() const { return vec().norm(); }
  Quaternion normalized() const;
};

struct DualQuaternion {
  Quaternion real;
  Quaternion dual = Quaternion::zero();

  static DualQuaternion identity() { return {}; }
  static DualQuaternion from_vec(const Vec8& c) {
    return {Quaternion::from_vec(c.head<4>()), Quaternion::from_vec(c.tail<4>())};
  }
  Vec8 vec() const;
};

struct DualVelocity {
  Vec3 omega_B = Vec3::Zero();
  Vec3 v_B = Vec3::Zero();

  // 8-dim form with zero scalar slots
  DualQuaternion lift() const { return {Quaternion::pure(omega_B), Quaternion::pure(v_B)}; }
};

Quaternion quat_mul(const Quaternion& a, const Quaternion& b);
Quaternion quat_conj(const Quaternion& a);
Quaternion quat_cross(const Quaternion& a, const Quaternion& b);
Mat3 skew(const Vec3& v);

// [a]_⊗ b = a ⊗ b ;  [b]_⊗* a = a ⊗ b
Mat4 left_matrix(const Quaternion& a);
Mat4 right_matrix(const Quaternion& b);

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }

DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b);
DualQuaternion dq_conj(const DualQuaternion& a);
DualQuaternion dq_cross(const DualQuaternion& a, const DualQuaternion& b);
Mat8 dq_left_matrix(const DualQuaternion& a);
Mat8 dq_right_matrix(const DualQuaternion& b);

inline DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) { return dq_mul(a, b); }

DualQuaternion dq_from_pose(const Quaternion& q, const Vec3& r_I);
Vec3 extract_position(const DualQuaternion& dq);
Vec3 rotate_to_body(const Quaternion& q, const Vec3& v_I);
Vec3 rotate_to_inertial(const Quaternion& q, const Vec3& v_B);

// real part normalized, dual part made orthogonal to it
DualQuaternion dq_normalize(const DualQuaternion& dq);
// |‖real‖ − 1| and |realᵀ dual|
double dq_unit_defect(const DualQuaternion& dq);

DualQuaternion sclerp(const DualQuaternion& dq0, const DualQuaternion& dq1, double t);

}  // namespace seco
