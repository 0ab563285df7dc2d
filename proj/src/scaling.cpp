#include "seco/scaling.hpp"

#include "seco/error.hpp"

#include <string>

namespace seco {

namespace {

double width(const Range& r, const char* name) {
  const double w = r.hi - r.lo;
  if (!(w > 0.0)) throw Error(ErrorCode::invalid_config, std::string("scaling.") + name + ": zero or negative width");
  return w;
}

}  // namespace

Scaling Scaling::from_ranges(const ScalingRanges& r) {
  Scaling s;
  auto fill_x = [&](int off, int n, const Range& g, const char* name) {
    s.x_lo.segment(off, n).setConstant(g.lo);
    s.x_w.segment(off, n).setConstant(width(g, name));
  };
  fill_x(kMass, 1, r.mass, "mass");
  fill_x(kQr, 4, r.quat, "quat");
  fill_x(kQd, 4, r.dual, "dual");
  fill_x(kOmega, 3, r.omega, "omega");
  fill_x(kVel, 3, r.vel, "vel");
  auto fill_u = [&](int off, int n, const Range& g, const char* name) {
    s.u_lo.segment(off, n).setConstant(g.lo);
    s.u_w.segment(off, n).setConstant(width(g, name));
  };
  fill_u(kThrust, 1, r.thrust, "thrust");
  fill_u(kDelta, 1, r.delta, "delta");
  fill_u(kPhi, 1, r.phi, "phi");
  fill_u(kTorque, 3, r.torque, "torque");
  s.s_lo = r.time.lo;
  s.s_w = width(r.time, "time");
  return s;
}

}  // namespace seco
