#pragma once

#include <Eigen/Dense>

#include <vector>

namespace seco {

inline constexpr int kNx = 15;
inline constexpr int kNu = 6;

// state layout: m | q_real(4) q_dual(4) | omega_B(3) v_B(3)
inline constexpr int kMass = 0;
inline constexpr int kDq = 1;
inline constexpr int kQr = 1;
inline constexpr int kQd = 5;
inline constexpr int kOmega = 9;
inline constexpr int kVel = 12;

// control layout: T delta phi | tau(3)
inline constexpr int kThrust = 0;
inline constexpr int kDelta = 1;
inline constexpr int kPhi = 2;
inline constexpr int kTorque = 3;

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec15 = Eigen::Matrix<double, kNx, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat15 = Eigen::Matrix<double, kNx, kNx>;
using Mat15x6 = Eigen::Matrix<double, kNx, kNu>;

using StateSeq = std::vector<Vec15>;
using ControlSeq = std::vector<Vec6>;

}  // namespace seco
