#pragma once
// Independent oracles and generators shared by the unit suites and the acceptance binary.

#include "seco/config.hpp"
#include "seco/seco.hpp"
#include "seco/vectorize.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testkit {

using namespace seco;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
  VectorXd vec(int n, double scale = 1.0);
  Quaternion unit_quat();
  MatrixXd mat(int r, int c, double scale = 1.0);
};

// plain textbook Hamilton product on (x, y, z, w) components
Vec4 hamilton(const Vec4& a, const Vec4& b);

// physical state with a unit dual quaternion, mass in [m_f, m_i]
Vec15 random_state(Rng& rng, const Problem& p);
Vec6 random_control(Rng& rng, const ConstraintParams& c);

// Newton-Euler rates written out directly: v̇ = F/m + g_B − ω×v,  ω̇ = (mJ)⁻¹(l×F + τ − ω×(mJω))
Vec3 oracle_omega_dot(const Vec15& x, const Vec6& u, const VehicleParams& p);
Vec3 oracle_v_dot(const Vec15& x, const Vec6& u, const VehicleParams& p);

// ẋ = [x₂, u] in one dimension
struct DoubleIntegrator {
  static constexpr int nx = 2;
  static constexpr int nu = 1;
  Eigen::Vector2d f(const Eigen::Vector2d& x, const Eigen::Matrix<double, 1, 1>& u) const {
    return {x(1), u(0)};
  }
  void jac(const Eigen::Vector2d&, const Eigen::Matrix<double, 1, 1>&, Eigen::Matrix2d& A,
           Eigen::Matrix<double, 2, 1>& B) const {
    A << 0.0, 1.0, 0.0, 0.0;
    B << 0.0, 1.0;
  }
};

// first-order-hold blocks of an LTI system from one augmented matrix exponential
struct LtiFoh {
  MatrixXd A, B_minus, B_plus;
  VectorXd S, x_prop;
};
LtiFoh lti_foh_expm(const MatrixXd& A, const MatrixXd& B, const VectorXd& x0, const VectorXd& u0,
                    const VectorXd& u1, double s, double dtau);

// projection onto {a1ᵀx ≤ b1, a2ᵀx ≤ b2} by enumerating active sets
VectorXd two_halfspace_oracle(const TwoHalfspaces& t, const VectorXd& x);

// random N-node subproblem with near-identity dynamics; sets are free apart from the
// pinned initial state unless `with_sets`
SubproblemData toy_subproblem(std::uint64_t seed, int N, bool with_sets);

// equality-constrained optimum of a toy subproblem without inequality sets
VectorXd toy_kkt(const SubproblemData& sp);

struct PipgComparison {
  double iterate_error = 0.0;  // worst per-iterate relative ∞-norm difference
  int iterations_custom = 0;
  int iterations_generic = 0;
};
PipgComparison compare_pipg(const PreconditionedData& pd, int j_max, double omega = 1.0, double rho = 1.6);

// static scan of the solve-path sources for dense factorizations or solves
struct AuditFinding {
  std::string file;
  int line = 0;
  std::string token;
};
std::vector<std::string> solve_path_sources();
std::vector<AuditFinding> static_audit(const std::string& source_dir);

// converged solution of the bundled mission at N nodes
struct Solved {
  MissionConfig m;
  Trajectory t;
  SecoReport report;
  double wall = 0.0;
};
Solved solve_mission(int N);

// worst violation of the window and global bounds on a node sequence (deg, deg/s, m/s)
struct StcMetrics {
  int window_nodes = 0;
  double los_max = 0.0, tilt_max = 0.0, rate_max = 0.0, speed_max = 0.0;  // inside the window
  double out_tilt = 0.0, out_rate = 0.0, out_speed = 0.0, out_alt_min = 1e300;
};
StcMetrics stc_metrics(const StateSeq& x, const ConstraintParams& c);

double rad(double deg);
double deg(double rad);

}  // namespace testkit
