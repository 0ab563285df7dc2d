#pragma once

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

namespace seco {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using VecRef = Eigen::Ref<VectorXd>;
using ConstVecRef = Eigen::Ref<const VectorXd>;

struct Free {
  int dim = 0;
};

struct Box {
  VectorXd lo, hi;
};

struct Ball {
  VectorXd center;
  double radius = 0.0;
};

// aᵀx ≤ b
struct Halfspace {
  VectorXd a;
  double b = 0.0;
};

struct TwoHalfspaces {
  Halfspace h1, h2;
};

struct Singleton {
  VectorXd value;
};

// {z : M z = b}; P = Mᵀ(MMᵀ)⁻¹ supplied in closed form by the constructor
struct AffineSubspace {
  MatrixXd M;
  VectorXd b;
  MatrixXd P;
  int graph_cols = 0;  // > 0: M = [K, −I] with KᵀK = c·I and K having graph_cols columns

  // {(a, d) : d = K a} for K with orthogonal equal-norm columns
  static AffineSubspace graph(const MatrixXd& K);
};

using BasicSet = std::variant<Free, Box, Ball, Halfspace, TwoHalfspaces, Singleton, AffineSubspace>;

int set_dim(const BasicSet& s);
void validate_set(const BasicSet& s);
void project(const BasicSet& s, VecRef x);
bool contains(const BasicSet& s, ConstVecRef x, double tol);
BasicSet scale_set(const BasicSet& s, double l);
// set seen in y where x = lo + w ⊙ y
BasicSet preimage(const BasicSet& s, ConstVecRef lo, ConstVecRef w);

struct Slice {
  std::string name;
  int offset = 0;
  BasicSet set;
};

// Cartesian product over named slices; uncovered coordinates are free.
class ProjectionSet {
 public:
  ProjectionSet() = default;
  explicit ProjectionSet(int dim) : dim_(dim) {}
  ProjectionSet(int dim, BasicSet whole);

  int dim() const { return dim_; }
  const std::vector<Slice>& slices() const { return slices_; }
  void add(std::string name, int offset, BasicSet set);
  bool empty() const { return slices_.empty(); }

  void project(VecRef x) const;
  bool contains(ConstVecRef x, double tol) const;
  ProjectionSet scaled(double l) const;
  ProjectionSet preimage(ConstVecRef lo, ConstVecRef w) const;

 private:
  int dim_ = 0;
  std::vector<Slice> slices_;
};

}  // namespace seco
