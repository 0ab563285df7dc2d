#include "seco/quat.hpp"

#include "seco/error.hpp"

#include <cmath>

namespace seco {

Quaternion Quaternion::normalized() const {
  const double n = norm();
  return {v / n, w / n};
}

Vec8 DualQuaternion::vec() const {
  Vec8 out;
  out << real.vec(), dual.vec();
  return out;
}

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.v + b.w * a.v + a.v.cross(b.v), a.w * b.w - a.v.dot(b.v)};
}

Quaternion quat_conj(const Quaternion& a) { return {-a.v, a.w}; }

Quaternion quat_cross(const Quaternion& a, const Quaternion& b) {
  Quaternion p = quat_mul(a, b);
  p.w = 0.0;
  return p;
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Mat4 left_matrix(const Quaternion& a) {
  Mat4 m;
  m.topLeftCorner<3, 3>() = a.w * Mat3::Identity() + skew(a.v);
  m.topRightCorner<3, 1>() = a.v;
  m.bottomLeftCorner<1, 3>() = -a.v.transpose();
  m(3, 3) = a.w;
  return m;
}

Mat4 right_matrix(const Quaternion& b) {
  Mat4 m;
  m.topLeftCorner<3, 3>() = b.w * Mat3::Identity() - skew(b.v);
  m.topRightCorner<3, 1>() = b.v;
  m.bottomLeftCorner<1, 3>() = -b.v.transpose();
  m(3, 3) = b.w;
  return m;
}

DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b) {
  const Quaternion d1 = quat_mul(a.real, b.dual);
  const Quaternion d2 = quat_mul(a.dual, b.real);
  return {quat_mul(a.real, b.real), {d1.v + d2.v, d1.w + d2.w}};
}

DualQuaternion dq_conj(const DualQuaternion& a) { return {quat_conj(a.real), quat_conj(a.dual)}; }

DualQuaternion dq_cross(const DualQuaternion& a, const DualQuaternion& b) {
  const Quaternion d1 = quat_cross(a.real, b.dual);
  const Quaternion d2 = quat_cross(a.dual, b.real);
  return {quat_cross(a.real, b.real), {d1.v + d2.v, 0.0}};
}

Mat8 dq_left_matrix(const DualQuaternion& a) {
  Mat8 m = Mat8::Zero();
  const Mat4 l1 = left_matrix(a.real);
  m.topLeftCorner<4, 4>() = l1;
  m.bottomRightCorner<4, 4>() = l1;
  m.bottomLeftCorner<4, 4>() = left_matrix(a.dual);
  return m;
}

Mat8 dq_right_matrix(const DualQuaternion& b) {
  Mat8 m = Mat8::Zero();
  const Mat4 r1 = right_matrix(b.real);
  m.topLeftCorner<4, 4>() = r1;
  m.bottomRightCorner<4, 4>() = r1;
  m.bottomLeftCorner<4, 4>() = right_matrix(b.dual);
  return m;
}

DualQuaternion dq_from_pose(const Quaternion& q, const Vec3& r_I) {
  if (std::abs(q.norm() - 1.0) > 1e-6)
    throw Error(ErrorCode::invalid_input, "dq_from_pose: attitude quaternion is not unit");
  const Quaternion d = quat_mul(Quaternion::pure(r_I), q);
  return {q, {0.5 * d.v, 0.5 * d.w}};
}

Vec3 extract_position(const DualQuaternion& dq) {
  return 2.0 * quat_mul(dq.dual, quat_conj(dq.real)).v;
}

Vec3 rotate_to_body(const Quaternion& q, const Vec3& v_I) {
  return quat_mul(quat_mul(quat_conj(q), Quaternion::pure(v_I)), q).v;
}

Vec3 rotate_to_inertial(const Quaternion& q, const Vec3& v_B) {
  return quat_mul(quat_mul(q, Quaternion::pure(v_B)), quat_conj(q)).v;
}

DualQuaternion dq_normalize(const DualQuaternion& dq) {
  const double n = dq.real.norm();
  const Vec4 r = dq.real.vec() / n;
  Vec4 d = dq.dual.vec() / n;
  d -= r.dot(d) * r;
  return {Quaternion::from_vec(r), Quaternion::from_vec(d)};
}

double dq_unit_defect(const DualQuaternion& dq) {
  return std::max(std::abs(dq.real.norm() - 1.0), std::abs(dq.real.vec().dot(dq.dual.vec())));
}

namespace {

// (cos θ̂/2, sin θ̂/2 n̂) raised to t via screw parameters
DualQuaternion screw_power(const DualQuaternion& d, double t) {
  const double s = d.real.v.norm();
  const double c = d.real.w;
  if (s < 1e-12) {
    // pure translation
    const Vec3 trans = 2.0 * quat_mul(d.dual, quat_conj(d.real)).v;
    return dq_from_pose(Quaternion::identity(), t * trans);
  }
  const double theta = 2.0 * std::atan2(s, c);
  const Vec3 n = d.real.v / s;
  const double pitch = -2.0 * d.dual.w / s;
  const Vec3 m = (d.dual.v - n * (0.5 * pitch * c)) / s;

  const double th = t * theta;
  const double pt = t * pitch;
  const double st = std::sin(0.5 * th);
  const double ct = std::cos(0.5 * th);
  return {{st * n, ct}, {st * m + n * (0.5 * pt * ct), -0.5 * pt * st}};
}

}  // namespace

DualQuaternion sclerp(const DualQuaternion& dq0, const DualQuaternion& dq1, double t) {
  if (t <= 0.0) return dq0;
  if (t >= 1.0) return dq1;
  DualQuaternion target = dq1;
  if (dq0.real.vec().dot(dq1.real.vec()) < 0.0)
    target = {{-dq1.real.v, -dq1.real.w}, {-dq1.dual.v, -dq1.dual.w}};
  const DualQuaternion delta = dq_mul(dq_conj(dq0), target);
  return dq_normalize(dq_mul(dq0, screw_power(delta, t)));
}

}  // namespace seco
