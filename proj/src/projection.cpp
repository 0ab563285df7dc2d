#include "seco/projection.hpp"

#include "seco/error.hpp"

#include <cmath>

namespace seco {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void project_halfspace(const Halfspace& h, VecRef x) {
  const double v = h.a.dot(x) - h.b;
  if (v > 0.0) x -= (v / h.a.squaredNorm()) * h.a;
}

void project_two(const TwoHalfspaces& s, VecRef x) {
  const VectorXd& a1 = s.h1.a;
  const VectorXd& a2 = s.h2.a;
  const double v1 = a1.dot(x) - s.h1.b;
  const double v2 = a2.dot(x) - s.h2.b;
  if (v1 <= 0.0 && v2 <= 0.0) return;
  const double n11 = a1.squaredNorm();
  const double n22 = a2.squaredNorm();
  const double n12 = a1.dot(a2);
  if (v1 > 0.0) {
    const double l1 = v1 / n11;
    if (v2 - l1 * n12 <= 0.0) {
      x -= l1 * a1;
      return;
    }
  }
  if (v2 > 0.0) {
    const double l2 = v2 / n22;
    if (v1 - l2 * n12 <= 0.0) {
      x -= l2 * a2;
      return;
    }
  }
  const double det = n11 * n22 - n12 * n12;
  if (det <= 1e-14 * n11 * n22) {
    // parallel normals with an empty or degenerate intersection
    if (v1 / std::sqrt(n11) >= v2 / std::sqrt(n22))
      x -= (v1 / n11) * a1;
    else
      x -= (v2 / n22) * a2;
    return;
  }
  const double l1 = (n22 * v1 - n12 * v2) / det;
  const double l2 = (n11 * v2 - n12 * v1) / det;
  x -= l1 * a1 + l2 * a2;
}

double halfspace_violation(const Halfspace& h, ConstVecRef x) {
  return h.a.dot(x) - h.b;
}

bool halfspace_ok(const Halfspace& h, ConstVecRef x, double tol) {
  return halfspace_violation(h, x) <= tol * (1.0 + std::abs(h.b) + h.a.norm() * x.norm());
}

bool uniform(ConstVecRef w) {
  return (w.array() - w(0)).abs().maxCoeff() <= 1e-15 * std::abs(w(0));
}

}  // namespace

AffineSubspace AffineSubspace::graph(const MatrixXd& K) {
  const int r = static_cast<int>(K.rows());
  const int c = static_cast<int>(K.cols());
  const MatrixXd KtK = K.transpose() * K;
  const double c2 = c > 0 ? KtK(0, 0) : 0.0;
  if ((KtK - c2 * MatrixXd::Identity(c, c)).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + c2))
    throw Error(ErrorCode::invalid_input, "graph subspace: K columns must be orthogonal with equal norm");
  AffineSubspace s;
  s.M.resize(r, c + r);
  s.M << K, -MatrixXd::Identity(r, r);
  s.b = VectorXd::Zero(r);
  const MatrixXd G = MatrixXd::Identity(r, r) - K * K.transpose() / (1.0 + c2);
  s.P = s.M.transpose() * G;
  s.graph_cols = c;
  return s;
}

int set_dim(const BasicSet& s) {
  return std::visit(overloaded{
                        [](const Free& f) { return f.dim; },
                        [](const Box& b) { return static_cast<int>(b.lo.size()); },
                        [](const Ball& b) { return static_cast<int>(b.center.size()); },
                        [](const Halfspace& h) { return static_cast<int>(h.a.size()); },
                        [](const TwoHalfspaces& t) { return static_cast<int>(t.h1.a.size()); },
                        [](const Singleton& v) { return static_cast<int>(v.value.size()); },
                        [](const AffineSubspace& a) { return static_cast<int>(a.M.cols()); },
                    },
                    s);
}

void validate_set(const BasicSet& s) {
  std::visit(overloaded{
                 [](const Free&) {},
                 [](const Box& b) {
                   if (b.lo.size() != b.hi.size() || (b.lo.array() > b.hi.array()).any())
                     throw Error(ErrorCode::invalid_input, "box: lo must not exceed hi");
                 },
                 [](const Ball& b) {
                   if (!(b.radius >= 0.0)) throw Error(ErrorCode::invalid_input, "ball: negative radius");
                 },
                 [](const Halfspace& h) {
                   if (!(h.a.norm() > 0.0)) throw Error(ErrorCode::invalid_input, "halfspace: zero normal");
                 },
                 [](const TwoHalfspaces& t) {
                   if (!(t.h1.a.norm() > 0.0) || !(t.h2.a.norm() > 0.0) || t.h1.a.size() != t.h2.a.size())
                     throw Error(ErrorCode::invalid_input, "two halfspaces: zero or mismatched normals");
                 },
                 [](const Singleton&) {},
                 [](const AffineSubspace& a) {
                   if (a.P.rows() != a.M.cols() || a.P.cols() != a.M.rows() || a.b.size() != a.M.rows())
                     throw Error(ErrorCode::invalid_input, "subspace: inconsistent dimensions");
                 },
             },
             s);
}

void project(const BasicSet& s, VecRef x) {
  std::visit(overloaded{
                 [](const Free&) {},
                 [&](const Box& b) { x = x.cwiseMax(b.lo).cwiseMin(b.hi); },
                 [&](const Ball& b) {
                   const double n = (x - b.center).norm();
                   if (n > b.radius) x = b.center + (b.radius / n) * (x - b.center);
                 },
                 [&](const Halfspace& h) { project_halfspace(h, x); },
                 [&](const TwoHalfspaces& t) { project_two(t, x); },
                 [&](const Singleton& v) { x = v.value; },
                 [&](const AffineSubspace& a) { x -= a.P * (a.M * x - a.b); },
             },
             s);
}

bool contains(const BasicSet& s, ConstVecRef x, double tol) {
  return std::visit(
      overloaded{
          [](const Free&) { return true; },
          [&](const Box& b) {
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              if (x(i) < b.lo(i) - tol * (1.0 + std::abs(b.lo(i)))) return false;
              if (x(i) > b.hi(i) + tol * (1.0 + std::abs(b.hi(i)))) return false;
            }
            return true;
          },
          [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol * (1.0 + b.radius); },
          [&](const Halfspace& h) { return halfspace_ok(h, x, tol); },
          [&](const TwoHalfspaces& t) { return halfspace_ok(t.h1, x, tol) && halfspace_ok(t.h2, x, tol); },
          [&](const Singleton& v) {
            return (x - v.value).cwiseAbs().maxCoeff() <= tol * (1.0 + v.value.cwiseAbs().maxCoeff());
          },
          [&](const AffineSubspace& a) {
            const VectorXd r = a.M * x - a.b;
            return r.cwiseAbs().maxCoeff() <= tol * (1.0 + a.M.cwiseAbs().maxCoeff() * x.cwiseAbs().sum());
          },
      },
      s);
}

BasicSet scale_set(const BasicSet& s, double l) {
  if (!(l > 0.0)) throw Error(ErrorCode::invalid_input, "set scaling factor must be positive");
  return std::visit(overloaded{
                        [](const Free& f) -> BasicSet { return f; },
                        [&](const Box& b) -> BasicSet { return Box{l * b.lo, l * b.hi}; },
                        [&](const Ball& b) -> BasicSet { return Ball{l * b.center, l * b.radius}; },
                        [&](const Halfspace& h) -> BasicSet { return Halfspace{h.a, l * h.b}; },
                        [&](const TwoHalfspaces& t) -> BasicSet {
                          return TwoHalfspaces{{t.h1.a, l * t.h1.b}, {t.h2.a, l * t.h2.b}};
                        },
                        [&](const Singleton& v) -> BasicSet { return Singleton{l * v.value}; },
                        [&](const AffineSubspace& a) -> BasicSet {
                          AffineSubspace o = a;
                          o.b = l * a.b;
                          return o;
                        },
                    },
                    s);
}

BasicSet preimage(const BasicSet& s, ConstVecRef lo, ConstVecRef w) {
  if ((w.array() <= 0.0).any()) throw Error(ErrorCode::invalid_config, "scaling widths must be positive");
  return std::visit(
      overloaded{
          [](const Free& f) -> BasicSet { return f; },
          [&](const Box& b) -> BasicSet {
            return Box{(b.lo - lo).cwiseQuotient(w), (b.hi - lo).cwiseQuotient(w)};
          },
          [&](const Ball& b) -> BasicSet {
            if (!uniform(w)) throw Error(ErrorCode::invalid_config, "ball slice needs a uniform scaling width");
            return Ball{(b.center - lo) / w(0), b.radius / w(0)};
          },
          [&](const Halfspace& h) -> BasicSet { return Halfspace{h.a.cwiseProduct(w), h.b - h.a.dot(lo)}; },
          [&](const TwoHalfspaces& t) -> BasicSet {
            return TwoHalfspaces{{t.h1.a.cwiseProduct(w), t.h1.b - t.h1.a.dot(lo)},
                                 {t.h2.a.cwiseProduct(w), t.h2.b - t.h2.a.dot(lo)}};
          },
          [&](const Singleton& v) -> BasicSet { return Singleton{(v.value - lo).cwiseQuotient(w)}; },
          [&](const AffineSubspace& a) -> BasicSet {
            if (uniform(w)) {
              AffineSubspace o = a;
              o.M = a.M * w(0);
              o.b = a.b - a.M * lo;
              o.P = a.P / w(0);
              return o;
            }
            const int c = a.graph_cols;
            const int r = static_cast<int>(a.M.rows());
            if (c > 0 && a.b.isZero(0.0) && lo.isZero(0.0) && uniform(w.head(c)) && uniform(w.tail(r))) {
              return AffineSubspace::graph(a.M.leftCols(c) * (w(0) / w(c)));
            }
            throw Error(ErrorCode::invalid_config, "subspace slice: unsupported scaling");
          },
      },
      s);
}

ProjectionSet::ProjectionSet(int dim, BasicSet whole) : dim_(dim) { add("all", 0, std::move(whole)); }

void ProjectionSet::add(std::string name, int offset, BasicSet set) {
  validate_set(set);
  const int n = set_dim(set);
  if (offset < 0 || offset + n > dim_)
    throw Error(ErrorCode::invalid_input, "slice '" + name + "' out of range");
  for (const Slice& s : slices_) {
    const int m = set_dim(s.set);
    if (offset < s.offset + m && s.offset < offset + n)
      throw Error(ErrorCode::invalid_input, "slice '" + name + "' overlaps '" + s.name + "'");
  }
  slices_.push_back({std::move(name), offset, std::move(set)});
}

void ProjectionSet::project(VecRef x) const {
  for (const Slice& s : slices_) seco::project(s.set, x.segment(s.offset, set_dim(s.set)));
}

bool ProjectionSet::contains(ConstVecRef x, double tol) const {
  for (const Slice& s : slices_)
    if (!seco::contains(s.set, x.segment(s.offset, set_dim(s.set)), tol)) return false;
  return true;
}

ProjectionSet ProjectionSet::scaled(double l) const {
  ProjectionSet out(dim_);
  for (const Slice& s : slices_) out.slices_.push_back({s.name, s.offset, scale_set(s.set, l)});
  return out;
}

ProjectionSet ProjectionSet::preimage(ConstVecRef lo, ConstVecRef w) const {
  ProjectionSet out(dim_);
  for (const Slice& s : slices_) {
    const int n = set_dim(s.set);
    out.slices_.push_back({s.name, s.offset, seco::preimage(s.set, lo.segment(s.offset, n), w.segment(s.offset, n))});
  }
  return out;
}

}  // namespace seco
