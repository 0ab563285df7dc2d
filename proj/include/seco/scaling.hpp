#pragma once

#include "seco/types.hpp"

namespace seco {

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

// physical [lo, hi] per variable group, mapped to [0, 1]
struct ScalingRanges {
  Range mass, quat, dual, omega, vel;
  Range thrust, delta, phi, torque;
  Range time;
};

struct Scaling {
  Vec15 x_lo, x_w;
  Vec6 u_lo, u_w;
  double s_lo = 0.0, s_w = 1.0;

  static Scaling from_ranges(const ScalingRanges& r);

  Vec15 scale_x(const Vec15& x) const { return (x - x_lo).cwiseQuotient(x_w); }
  Vec15 unscale_x(const Vec15& y) const { return x_lo + x_w.cwiseProduct(y); }
  Vec6 scale_u(const Vec6& u) const { return (u - u_lo).cwiseQuotient(u_w); }
  Vec6 unscale_u(const Vec6& y) const { return u_lo + u_w.cwiseProduct(y); }
  double scale_s(double s) const { return (s - s_lo) / s_w; }
  double unscale_s(double y) const { return s_lo + s_w * y; }
};

}  // namespace seco
