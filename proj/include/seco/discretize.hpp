#pragma once

#include "seco/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace seco {

// Model concept:
//   static constexpr int nx, nu;
//   Vector<nx> f(x, u) const;                         undilated dynamics
//   void jac(x, u, Matrix<nx,nx>& A, Matrix<nx,nu>& B) const;
template <int NX, int NU>
struct FohBlocks {
  Eigen::Matrix<double, NX, NX> A;
  Eigen::Matrix<double, NX, NU> B_minus;
  Eigen::Matrix<double, NX, NU> B_plus;
  Eigen::Matrix<double, NX, 1> S;
  Eigen::Matrix<double, NX, 1> x_prop;
};

template <class Model>
FohBlocks<Model::nx, Model::nu> foh_interval(const Model& model,
                                            const Eigen::Matrix<double, Model::nx, 1>& x_k,
                                            const Eigen::Matrix<double, Model::nu, 1>& u_k,
                                            const Eigen::Matrix<double, Model::nu, 1>& u_k1,
                                            double s, double dtau, int substeps) {
  constexpr int NX = Model::nx;
  constexpr int NU = Model::nu;
  using VX = Eigen::Matrix<double, NX, 1>;
  using VU = Eigen::Matrix<double, NU, 1>;
  using MX = Eigen::Matrix<double, NX, NX>;
  using MU = Eigen::Matrix<double, NX, NU>;

  struct Aug {
    VX x;
    MX PA;
    MU PBm, PBp;
    VX PS;
  };

  auto rhs = [&](double t, const Aug& y, Aug& dy) {
    const double sp = t / dtau;
    const double sm = 1.0 - sp;
    const VU u = sm * u_k + sp * u_k1;
    const VX f = model.f(y.x, u);
    MX A;
    MU B;
    model.jac(y.x, u, A, B);
    A *= s;
    B *= s;
    dy.x.noalias() = s * f;
    dy.PA.noalias() = A * y.PA;
    dy.PBm.noalias() = A * y.PBm;
    dy.PBm.noalias() += sm * B;
    dy.PBp.noalias() = A * y.PBp;
    dy.PBp.noalias() += sp * B;
    dy.PS.noalias() = A * y.PS;
    dy.PS += f;
  };

  Aug y{x_k, MX::Identity(), MU::Zero(), MU::Zero(), VX::Zero()};
  Aug k1, k2, k3, k4, tmp;
  const double h = dtau / substeps;
  auto axpy = [](const Aug& a, double c, const Aug& k, Aug& out) {
    out.x = a.x + c * k.x;
    out.PA = a.PA + c * k.PA;
    out.PBm = a.PBm + c * k.PBm;
    out.PBp = a.PBp + c * k.PBp;
    out.PS = a.PS + c * k.PS;
  };
  for (int i = 0; i < substeps; ++i) {
    const double t = i * h;
    rhs(t, y, k1);
    axpy(y, 0.5 * h, k1, tmp);
    rhs(t + 0.5 * h, tmp, k2);
    axpy(y, 0.5 * h, k2, tmp);
    rhs(t + 0.5 * h, tmp, k3);
    axpy(y, h, k3, tmp);
    rhs(t + h, tmp, k4);
    const double c = h / 6.0;
    y.x += c * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    y.PA += c * (k1.PA + 2.0 * k2.PA + 2.0 * k3.PA + k4.PA);
    y.PBm += c * (k1.PBm + 2.0 * k2.PBm + 2.0 * k3.PBm + k4.PBm);
    y.PBp += c * (k1.PBp + 2.0 * k2.PBp + 2.0 * k3.PBp + k4.PBp);
    y.PS += c * (k1.PS + 2.0 * k2.PS + 2.0 * k3.PS + k4.PS);
  }
  if (!y.x.allFinite() || !y.PA.allFinite())
    throw Error(ErrorCode::integration_failure, "non-finite value in interval integration");
  return {y.PA, y.PBm, y.PBp, y.PS, y.x};
}

template <class Model>
Eigen::Matrix<double, Model::nx, 1> foh_propagate(const Model& model,
                                                 Eigen::Matrix<double, Model::nx, 1> x,
                                                 const Eigen::Matrix<double, Model::nu, 1>& u_k,
                                                 const Eigen::Matrix<double, Model::nu, 1>& u_k1,
                                                 double s, double dtau, int substeps) {
  using VX = Eigen::Matrix<double, Model::nx, 1>;
  const double h = dtau / substeps;
  auto F = [&](double t, const VX& y) -> VX {
    const double sp = t / dtau;
    return s * model.f(y, (1.0 - sp) * u_k + sp * u_k1);
  };
  for (int i = 0; i < substeps; ++i) {
    const double t = i * h;
    const VX k1 = F(t, x);
    const VX k2 = F(t + 0.5 * h, x + 0.5 * h * k1);
    const VX k3 = F(t + 0.5 * h, x + 0.5 * h * k2);
    const VX k4 = F(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!x.allFinite()) throw Error(ErrorCode::integration_failure, "non-finite state in propagation");
  return x;
}

}  // namespace seco
