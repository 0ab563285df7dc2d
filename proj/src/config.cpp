#include "seco/config.hpp"

#include "seco/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace seco {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kG0 = 9.81;

[[noreturn]] void bad(const std::string& key, const std::string& msg) {
  throw Error(ErrorCode::invalid_config, key + ": " + msg);
}

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad(path_, "expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }
  std::string key(const char* k) const { return path_ + "." + k; }

  void num(const char* k, double& out, double scale = 1.0) {
    if (!take(k)) return;
    const json& v = j_.at(k);
    if (!v.is_number()) bad(key(k), "expected a number");
    out = v.get<double>() * scale;
    if (!std::isfinite(out)) bad(key(k), "must be finite");
  }

  void integer(const char* k, int& out) {
    if (!take(k)) return;
    const json& v = j_.at(k);
    if (!v.is_number_integer()) bad(key(k), "expected an integer");
    out = v.get<int>();
  }

  void boolean(const char* k, bool& out) {
    if (!take(k)) return;
    const json& v = j_.at(k);
    if (!v.is_boolean()) bad(key(k), "expected true or false");
    out = v.get<bool>();
  }

  template <int Dim>
  void vec(const char* k, Eigen::Matrix<double, Dim, 1>& out, double scale = 1.0) {
    if (!take(k)) return;
    const json& v = j_.at(k);
    if (!v.is_array() || v.size() != Dim) bad(key(k), "expected an array of " + std::to_string(Dim) + " numbers");
    for (int i = 0; i < Dim; ++i) {
      if (!v[i].is_number()) bad(key(k), "expected numbers");
      out(i) = v[i].get<double>() * scale;
    }
  }

  void quat(const char* k, Quaternion& out) {
    Vec4 c = out.vec();
    vec<4>(k, c);
    if (!(c.norm() > 0.0)) bad(key(k), "zero quaternion");
    out = Quaternion::from_vec(c.normalized());
  }

  Section sub(const char* k) {
    take(k);
    return Section(j_.at(k), key(k));
  }

  const json& raw(const char* k) {
    take(k);
    return j_.at(k);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) bad(path_ + "." + it.key(), "unknown key");
  }

 private:
  bool take(const char* k) {
    used_.insert(k);
    return j_.contains(k);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

json vec_json(const Eigen::VectorXd& v, double scale = 1.0) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i) / scale);
  return a;
}

}  // namespace

MissionConfig default_mission() {
  MissionConfig m;
  VehicleParams& v = m.problem.vehicle;
  v.g = 1.625;
  v.alpha_me = 1.0 / (300.0 * kG0);
  v.alpha_rcs = 1.0 / (200.0 * kG0);
  v.l_cm = 1.0;
  v.set_inertia(Vec3(4.2, 4.2, 0.6).asDiagonal());
  v.m_i = 1500.0;
  v.m_f = 750.0;

  ConstraintParams& c = m.problem.constraints;
  c.T_min = 600.0;
  c.T_max = 3000.0;
  c.Tdot_max = 0.75 * (c.T_max - c.T_min);
  c.delta_max = 5.0 * kDeg;
  c.deltadot_max = 5.0 * kDeg;
  c.phidot_max = 5.0 * kDeg;
  c.tau_max = 50.0;
  c.theta_max = 90.0 * kDeg;
  c.theta_stc = 20.0 * kDeg;
  c.omega_max = 5.0 * kDeg;
  c.omega_stc = 1.0 * kDeg;
  c.v_max = 90.0;
  c.v_stc = 30.0;
  c.h_min = 100.0;
  c.rho_min = 500.0;
  c.rho_max = 1250.0;
  c.mu_stc = 2.0 * kDeg;
  c.p_B = Vec3(0.5, 0.0, -std::sqrt(3.0) / 2.0);
  c.m_i = v.m_i;
  c.m_f = v.m_f;
  c.r_i = Vec3(3000.0, 600.0, 3000.0);
  c.r_f = Vec3(0.0, 0.0, 100.0);
  c.v_i = Vec3(-60.0, 30.0, -30.0);
  c.v_zf = -2.0;
  c.q_i = Quaternion(-0.15, 0.3, -1.0, 1.0).normalized();
  c.q_f = Quaternion(0.0, 0.0, -1.25, 1.0).normalized();
  c.omega_i = Vec3::Zero();

  m.solver.spectral.seed = m.seed;
  return m;
}

MissionConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_config, std::string("config: JSON parse error: ") + e.what());
  }
  MissionConfig m = default_mission();
  Section root(doc, "config");
  int version = 0;
  root.integer("schema_version", version);
  if (!root.has("schema_version")) bad("config.schema_version", "missing");
  if (version != kSchemaVersion) bad("config.schema_version", "unsupported version " + std::to_string(version));

  VehicleParams& v = m.problem.vehicle;
  ConstraintParams& c = m.problem.constraints;
  if (root.has("vehicle")) {
    Section s = root.sub("vehicle");
    double g0 = kG0, isp_me = 300.0, isp_rcs = 200.0;
    s.num("g", v.g);
    s.num("g0", g0);
    s.num("isp_me", isp_me);
    s.num("isp_rcs", isp_rcs);
    if (!(g0 > 0.0 && isp_me > 0.0 && isp_rcs > 0.0)) bad("config.vehicle.isp_me/isp_rcs/g0", "must be positive");
    v.alpha_me = 1.0 / (isp_me * g0);
    v.alpha_rcs = 1.0 / (isp_rcs * g0);
    s.num("l_cm", v.l_cm);
    if (s.has("J")) {
      const json& jj = s.raw("J");
      Mat3 J = Mat3::Zero();
      if (jj.is_array() && jj.size() == 3 && jj[0].is_number()) {
        for (int i = 0; i < 3; ++i) J(i, i) = jj[i].get<double>();
      } else if (jj.is_array() && jj.size() == 3) {
        for (int i = 0; i < 3; ++i) {
          if (!jj[i].is_array() || jj[i].size() != 3) bad("config.vehicle.J", "expected 3 numbers or a 3x3 array");
          for (int k = 0; k < 3; ++k) {
            if (!jj[i][k].is_number()) bad("config.vehicle.J", "expected numbers");
            J(i, k) = jj[i][k].get<double>();
          }
        }
      } else {
        bad("config.vehicle.J", "expected 3 numbers or a 3x3 array");
      }
      v.set_inertia(J);
    }
    s.num("m_i", v.m_i);
    s.num("m_f", v.m_f);
    s.finish();
  }
  c.m_i = v.m_i;
  c.m_f = v.m_f;

  if (root.has("constraints")) {
    Section s = root.sub("constraints");
    s.num("T_min", c.T_min);
    s.num("T_max", c.T_max);
    c.Tdot_max = 0.75 * (c.T_max - c.T_min);
    s.num("Tdot_max", c.Tdot_max);
    s.num("delta_max_deg", c.delta_max, kDeg);
    s.num("deltadot_max_dps", c.deltadot_max, kDeg);
    s.num("phidot_max_dps", c.phidot_max, kDeg);
    s.num("tau_max", c.tau_max);
    s.num("theta_max_deg", c.theta_max, kDeg);
    s.num("theta_stc_deg", c.theta_stc, kDeg);
    s.num("omega_max_dps", c.omega_max, kDeg);
    s.num("omega_stc_dps", c.omega_stc, kDeg);
    s.num("v_max", c.v_max);
    s.num("v_stc", c.v_stc);
    s.num("h_min", c.h_min);
    s.num("rho_min", c.rho_min);
    s.num("rho_max", c.rho_max);
    s.num("mu_stc_deg", c.mu_stc, kDeg);
    s.vec<3>("p_B", c.p_B);
    if (!(c.p_B.norm() > 0.0)) bad("config.constraints.p_B", "zero vector");
    c.p_B.normalize();
    s.finish();
  }

  if (root.has("boundary")) {
    Section s = root.sub("boundary");
    s.vec<3>("r_i", c.r_i);
    s.vec<3>("r_f", c.r_f);
    s.vec<3>("v_i", c.v_i);
    s.num("v_zf", c.v_zf);
    s.quat("q_i", c.q_i);
    s.quat("q_f", c.q_f);
    s.vec<3>("omega_i_dps", c.omega_i, kDeg);
    s.finish();
  }

  SecoConfig& o = m.solver;
  if (root.has("solver")) {
    Section s = root.sub("solver");
    s.integer("N", o.N);
    s.integer("max_iterations", o.max_iterations);
    s.boolean("fixed_iterations", o.fixed_iterations);
    s.num("pos_tol", o.pos_tol);
    s.num("vel_tol", o.vel_tol);
    s.num("step_tol", o.step_tol);
    s.num("s_guess", o.s_guess);
    if (s.has("s_bounds")) {
      Eigen::Matrix<double, 2, 1> b(o.s_bounds.lo, o.s_bounds.hi);
      s.vec<2>("s_bounds", b);
      o.s_bounds = {b(0), b(1)};
    }
    s.integer("substeps", o.substeps);
    s.num("omega", o.omega);
    s.num("rho", o.rho);
    if (s.has("lambda")) {
      const json& l = s.raw("lambda");
      if (l.is_null()) o.lambda.reset();
      else if (l.is_number()) o.lambda = l.get<double>();
      else bad("config.solver.lambda", "expected a number or null");
    }
    s.boolean("abort_on_pipg_failure", o.abort_on_pipg_failure);
    if (s.has("weights")) {
      Section w = s.sub("weights");
      w.num("w_m", o.weights.w_m);
      w.num("w_tr", o.weights.w_tr);
      w.num("w_tr_s", o.weights.w_tr_s);
      w.num("w_vse", o.weights.w_vse);
      w.finish();
    }
    if (s.has("stop")) {
      Section t = s.sub("stop");
      t.num("eps_abs", o.stop.eps_abs);
      t.num("eps_rel", o.stop.eps_rel);
      t.integer("j_check", o.stop.j_check);
      t.integer("j_max", o.stop.j_max);
      t.finish();
    }
    if (s.has("spectral")) {
      Section t = s.sub("spectral");
      t.num("eps_abs", o.spectral.eps_abs);
      t.num("eps_rel", o.spectral.eps_rel);
      t.num("eps_buff", o.spectral.eps_buff);
      t.integer("j_max", o.spectral.j_max);
      t.finish();
    }
    s.finish();
  }

  if (root.has("seed")) {
    const json& sd = root.raw("seed");
    if (!sd.is_number_unsigned()) bad("config.seed", "expected a nonnegative integer");
    m.seed = sd.get<std::uint64_t>();
  }
  o.spectral.seed = m.seed;
  root.finish();

  m.problem.validate();
  o.validate();
  return m;
}

MissionConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const MissionConfig& m) {
  const VehicleParams& v = m.problem.vehicle;
  const ConstraintParams& c = m.problem.constraints;
  const SecoConfig& o = m.solver;
  json j;
  j["schema_version"] = kSchemaVersion;
  json J = json::array();
  for (int i = 0; i < 3; ++i) J.push_back(vec_json(v.J.row(i).transpose()));
  j["vehicle"] = {{"g", v.g},
                  {"g0", kG0},
                  {"isp_me", 1.0 / (v.alpha_me * kG0)},
                  {"isp_rcs", 1.0 / (v.alpha_rcs * kG0)},
                  {"l_cm", v.l_cm},
                  {"J", J},
                  {"m_i", v.m_i},
                  {"m_f", v.m_f}};
  j["constraints"] = {{"T_min", c.T_min},
                      {"T_max", c.T_max},
                      {"Tdot_max", c.Tdot_max},
                      {"delta_max_deg", c.delta_max / kDeg},
                      {"deltadot_max_dps", c.deltadot_max / kDeg},
                      {"phidot_max_dps", c.phidot_max / kDeg},
                      {"tau_max", c.tau_max},
                      {"theta_max_deg", c.theta_max / kDeg},
                      {"theta_stc_deg", c.theta_stc / kDeg},
                      {"omega_max_dps", c.omega_max / kDeg},
                      {"omega_stc_dps", c.omega_stc / kDeg},
                      {"v_max", c.v_max},
                      {"v_stc", c.v_stc},
                      {"h_min", c.h_min},
                      {"rho_min", c.rho_min},
                      {"rho_max", c.rho_max},
                      {"mu_stc_deg", c.mu_stc / kDeg},
                      {"p_B", vec_json(c.p_B)}};
  j["boundary"] = {{"r_i", vec_json(c.r_i)},
                   {"r_f", vec_json(c.r_f)},
                   {"v_i", vec_json(c.v_i)},
                   {"v_zf", c.v_zf},
                   {"q_i", vec_json(c.q_i.vec())},
                   {"q_f", vec_json(c.q_f.vec())},
                   {"omega_i_dps", vec_json(c.omega_i, kDeg)}};
  j["solver"] = {{"N", o.N},
                 {"max_iterations", o.max_iterations},
                 {"fixed_iterations", o.fixed_iterations},
                 {"pos_tol", o.pos_tol},
                 {"vel_tol", o.vel_tol},
                 {"step_tol", o.step_tol},
                 {"s_guess", o.s_guess},
                 {"s_bounds", {o.s_bounds.lo, o.s_bounds.hi}},
                 {"substeps", o.substeps},
                 {"omega", o.omega},
                 {"rho", o.rho},
                 {"lambda", o.lambda ? json(*o.lambda) : json(nullptr)},
                 {"abort_on_pipg_failure", o.abort_on_pipg_failure},
                 {"weights", {{"w_m", o.weights.w_m}, {"w_tr", o.weights.w_tr},
                              {"w_tr_s", o.weights.w_tr_s}, {"w_vse", o.weights.w_vse}}},
                 {"stop", {{"eps_abs", o.stop.eps_abs}, {"eps_rel", o.stop.eps_rel},
                           {"j_check", o.stop.j_check}, {"j_max", o.stop.j_max}}},
                 {"spectral", {{"eps_abs", o.spectral.eps_abs}, {"eps_rel", o.spectral.eps_rel},
                               {"eps_buff", o.spectral.eps_buff}, {"j_max", o.spectral.j_max}}}};
  j["seed"] = m.seed;
  return j.dump(2);
}

}  // namespace seco
