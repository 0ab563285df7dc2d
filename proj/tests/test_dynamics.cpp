#include "testkit.hpp"

#include "seco/discretize.hpp"

#include <doctest.h>

#include <cmath>

using namespace seco;
using testkit::Rng;

namespace {

const MissionConfig& mission() {
  static const MissionConfig m = default_mission();
  return m;
}

}  // namespace

TEST_CASE("mass depletion") {
  const VehicleParams& p = mission().problem.vehicle;
  Vec15 x = mission().problem.constraints.initial_state();
  Vec6 u = Vec6::Zero();
  u(kThrust) = 3000.0;
  CHECK(eom(x, u, p)(kMass) == doctest::Approx(-1.01937).epsilon(1e-5));
  u(kTorque) = 3.0;
  u(kTorque + 1) = 4.0;
  CHECK(eom(x, u, p)(kMass) == doctest::Approx(-3000.0 / 2943.0 - 5.0 / 1962.0).epsilon(1e-12));
}

TEST_CASE("hover is an equilibrium") {
  const VehicleParams& p = mission().problem.vehicle;
  VehicleState st;
  st.m = 1200.0;
  st.dq = dq_from_pose(Quaternion::identity(), Vec3(0, 0, 500));
  ControlInput u;
  u.T = st.m * p.g;
  const Vec15 f = eom(st, u, p);
  CHECK(f.segment<8>(kDq).norm() == 0.0);
  CHECK(f.segment<6>(kOmega).norm() < 1e-12);
}

TEST_CASE("rates match Newton-Euler written out") {
  const Problem& pr = mission().problem;
  Rng rng(21);
  double worst = 0.0;
  for (int n = 0; n < 500; ++n) {
    const Vec15 x = testkit::random_state(rng, pr);
    const Vec6 u = testkit::random_control(rng, pr.constraints);
    const Vec15 f = eom(x, u, pr.vehicle);
    const Vec3 wd = testkit::oracle_omega_dot(x, u, pr.vehicle);
    const Vec3 vd = testkit::oracle_v_dot(x, u, pr.vehicle);
    worst = std::max(worst, (f.segment<3>(kOmega) - wd).norm() / (1.0 + wd.norm()));
    worst = std::max(worst, (f.segment<3>(kVel) - vd).norm() / (1.0 + vd.norm()));
    // kinematics: q̇ = ½ q ⊗ ω
    const Vec4 qd = 0.5 * testkit::hamilton(x.segment<4>(kQr), Vec4(x(kOmega), x(kOmega + 1), x(kOmega + 2), 0.0));
    worst = std::max(worst, (f.segment<4>(kQr) - qd).norm());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("time dilation is linear in s") {
  const Problem& pr = mission().problem;
  Rng rng(22);
  const Vec15 x = testkit::random_state(rng, pr);
  const Vec6 u = testkit::random_control(rng, pr.constraints);
  const Vec15 f = eom(x, u, pr.vehicle);
  CHECK((dilated_eom(0.3, x, u, 1.0, pr.vehicle) - f).norm() == 0.0);
  CHECK((dilated_eom(0.3, x, u, 2.0, pr.vehicle) - 2.0 * f).norm() < 1e-12 * f.norm());
  CHECK((jacobians(x, u, 2.5, pr.vehicle).S - f).norm() == 0.0);
}

TEST_CASE("nonpositive mass is rejected") {
  Vec15 x = mission().problem.constraints.initial_state();
  x(kMass) = 0.0;
  try {
    eom(x, Vec6::Zero(), mission().problem.vehicle);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_mass);
  }
}

TEST_CASE("jacobians against central differences") {
  const Problem& pr = mission().problem;
  Rng rng(23);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec15 x = testkit::random_state(rng, pr);
    const Vec6 u = testkit::random_control(rng, pr.constraints);
    const double s = rng.uniform(50.0, 150.0);
    const Jacobians J = jacobians(x, u, s, pr.vehicle);
    CHECK(J.A.row(kMass).norm() == 0.0);
    auto F = [&](const Vec15& xx, const Vec6& uu) { return dilated_eom(0.0, xx, uu, s, pr.vehicle); };
    auto err = [](double a, double fd) { return std::abs(a - fd) / std::max(1e-6, 1e-4 * std::abs(a)); };
    for (int i = 0; i < kNx; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
      Vec15 xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const Vec15 col = (F(xp, u) - F(xm, u)) / (2.0 * h);
      for (int r = 0; r < kNx; ++r) worst = std::max(worst, err(J.A(r, i), col(r)));
    }
    for (int i = 0; i < kNu; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(u(i)));
      Vec6 up = u, um = u;
      up(i) += h;
      um(i) -= h;
      const Vec15 col = (F(x, up) - F(x, um)) / (2.0 * h);
      for (int r = 0; r < kNx; ++r) worst = std::max(worst, err(J.B(r, i), col(r)));
    }
  }
  CHECK(worst <= 1.0);
}

TEST_CASE("first-order hold") {
  Vec6 a = Vec6::Constant(1.0), b = Vec6::Constant(3.0);
  CHECK((foh(a, b, 0.5, 0.0, 1.0) - Vec6::Constant(2.0)).norm() == 0.0);
  CHECK((foh(a, b, 0.0, 0.0, 1.0) - a).norm() == 0.0);
  CHECK((foh(a, a, 0.37, 0.0, 1.0) - a).norm() == 0.0);
  CHECK((foh(a, b, 2.25, 2.0, 3.0) - Vec6::Constant(1.5)).norm() < 1e-15);
  CHECK_THROWS_AS(foh(a, b, 1.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(foh(a, b, -0.1, 0.0, 1.0), Error);
}

TEST_CASE("LTI discretization matches the augmented matrix exponential") {
  testkit::DoubleIntegrator model;
  Eigen::Matrix2d A;
  Eigen::Matrix<double, 2, 1> B;
  model.jac(Eigen::Vector2d::Zero(), Eigen::Matrix<double, 1, 1>::Zero(), A, B);
  Rng rng(24);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const Eigen::Vector2d x0(rng.uniform(), rng.uniform());
    Eigen::Matrix<double, 1, 1> u0, u1;
    u0 << rng.uniform();
    u1 << rng.uniform();
    const double s = rng.uniform(0.5, 20.0), dtau = rng.uniform(0.01, 0.2);
    const auto b = foh_interval(model, x0, u0, u1, s, dtau, 20);
    const testkit::LtiFoh o = testkit::lti_foh_expm(A, B, x0, u0, u1, s, dtau);
    auto rel = [](const MatrixXd& a, const MatrixXd& r) {
      return (a - r).lpNorm<Eigen::Infinity>() / std::max(1.0, r.lpNorm<Eigen::Infinity>());
    };
    worst = std::max({worst, rel(b.A, o.A), rel(b.B_minus, o.B_minus), rel(b.B_plus, o.B_plus), rel(b.S, o.S),
                      rel(b.x_prop, o.x_prop)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("zero deviations reproduce the propagated nodes") {
  const MissionConfig& m = mission();
  for (int N : {5, 15}) {
    const Trajectory ref = initial_guess(m.problem, N, m.solver.s_guess);
    const DiscreteDynamics dd = discretize(ref.x, ref.u, ref.s, m.problem.vehicle, m.solver.substeps);
    REQUIRE(static_cast<int>(dd.intervals.size()) == N - 1);
    for (int k = 0; k < N - 1; ++k) {
      const IntervalBlocks& b = dd.intervals[k];
      const double scale = std::max(1.0, b.x_prop.lpNorm<Eigen::Infinity>());
      CHECK((ref.x[k + 1] + b.d - b.x_prop).lpNorm<Eigen::Infinity>() / scale < 1e-10);
      const StateSeq xs = single_shot(ref.x[k], {ref.u[k], ref.u[k + 1]}, ref.s / (N - 1), m.problem.vehicle,
                                      m.solver.substeps);
      CHECK((xs[1] - b.x_prop).lpNorm<Eigen::Infinity>() / scale < 1e-10);
    }
  }
}

TEST_CASE("vanishing duration") {
  const MissionConfig& m = mission();
  Trajectory ref = initial_guess(m.problem, 3, m.solver.s_guess);
  ref.x[1] = ref.x[0];
  ref.x[2] = ref.x[0];
  const double s = 1e-9;
  const DiscreteDynamics dd = discretize(ref.x, ref.u, s, m.problem.vehicle, 4);
  for (int k = 0; k < 2; ++k) {
    const IntervalBlocks& b = dd.intervals[k];
    const Vec15 f = eom(ref.x[0], 0.5 * (ref.u[k] + ref.u[k + 1]), m.problem.vehicle);
    // A − I ≈ s·Δτ·∂f/∂x, whose dual-quaternion entries scale with the range (~700 here)
    const Mat15 Jx = jacobians(ref.x[0], 0.5 * (ref.u[k] + ref.u[k + 1]), 1.0, m.problem.vehicle).A;
    CHECK((b.A - Mat15::Identity()).lpNorm<Eigen::Infinity>() < 1e-6);
    CHECK((b.A - Mat15::Identity() - s * 0.5 * Jx).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK(b.B_minus.lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK(b.B_plus.lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK(b.d.lpNorm<Eigen::Infinity>() < 1e-6);
    // S is ∂x/∂s, which tends to f·Δτ rather than zero
    CHECK((b.S - 0.5 * f).lpNorm<Eigen::Infinity>() < 1e-6 * (1.0 + f.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("single shot") {
  const MissionConfig& m = mission();
  const VehicleParams& p = m.problem.vehicle;
  // hover holds position (no propellant flow, so the mass stays put)
  VehicleParams p0 = p;
  p0.alpha_me = 0.0;
  VehicleState st;
  st.m = 1200.0;
  st.dq = dq_from_pose(Quaternion::identity(), Vec3(10, 20, 500));
  Vec6 u = Vec6::Zero();
  u(kThrust) = st.m * p.g;
  ControlSeq us(6, u);
  const StateSeq xs = single_shot(st.vec(), us, 30.0, p0);
  CHECK((position(xs.back()) - Vec3(10, 20, 500)).norm() < 1e-9);
  CHECK(xs.back().segment<3>(kVel).norm() < 1e-12);

  // refinement: halving the step barely changes the answer
  const Trajectory ref = initial_guess(m.problem, 10, m.solver.s_guess);
  const StateSeq a = single_shot(ref.x[0], ref.u, ref.s, p, 20);
  const StateSeq b = single_shot(ref.x[0], ref.u, ref.s, p, 40);
  CHECK((a.back() - b.back()).lpNorm<Eigen::Infinity>() / b.back().lpNorm<Eigen::Infinity>() < 1e-8);
  for (const Vec15& x : a) CHECK(dq_unit_defect(DualQuaternion::from_vec(x.segment<8>(kDq))) <= 1e-9);
}

TEST_CASE("unit-norm drift within an interval stays small") {
  const MissionConfig& m = mission();
  const Trajectory ref = initial_guess(m.problem, 15, m.solver.s_guess);
  const DiscreteDynamics dd = discretize(ref.x, ref.u, ref.s, m.problem.vehicle, m.solver.substeps);
  for (const IntervalBlocks& b : dd.intervals)
    CHECK(dq_unit_defect(DualQuaternion::from_vec(b.x_prop.segment<8>(kDq))) <= 1e-7);
}

TEST_CASE("inertia inverse in closed form") {
  VehicleParams p;
  Mat3 J;
  J << 4.0, 0.1, 0.2, 0.1, 3.0, 0.3, 0.2, 0.3, 1.0;
  p.set_inertia(J);
  CHECK((p.J_inv * J - Mat3::Identity()).norm() < 1e-14);
  Mat3 bad = Mat3::Zero();
  CHECK_THROWS_AS(p.set_inertia(bad), Error);
}
