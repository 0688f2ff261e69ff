#include "cluster/rdm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace cluster {

TwoSiteRDM build_rdm(const CorrelatorSet& c, double B) {
  TwoSiteRDM state;
  state.B = B;
  state.R = c.R;
  Eigen::Matrix4cd& rho = state.rho;
  rho.setZero();
  rho(0, 0) = (1.0 + 2.0 * c.z + c.zz) / 4.0;
  rho(1, 1) = (1.0 - c.zz) / 4.0;
  rho(2, 2) = (1.0 - c.zz) / 4.0;
  rho(3, 3) = (1.0 - 2.0 * c.z + c.zz) / 4.0;
  rho(1, 2) = rho(2, 1) = (c.xx + c.yy) / 4.0;
  rho(0, 3) = rho(3, 0) = (c.xx - c.yy) / 4.0;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw PhysicalityError(
        "build_rdm: reconstructed state is not positive semidefinite; "
        "check upstream correlator accuracy");
  return state;
}

RDMDiagnostics validate_rdm(const TwoSiteRDM& state) {
  const Eigen::Matrix4cd& rho = state.rho;
  RDMDiagnostics d;
  d.hermiticity_residual = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_residual = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  // entries that must vanish for an X state: (0,1),(0,2),(1,3),(2,3) + h.c.
  d.x_sparsity_residual = std::max(
      {std::abs(rho(0, 1)), std::abs(rho(0, 2)), std::abs(rho(1, 3)),
       std::abs(rho(2, 3)), std::abs(rho(1, 0)), std::abs(rho(2, 0)),
       std::abs(rho(3, 1)), std::abs(rho(3, 2))});
  d.pass = d.hermiticity_residual < 1e-12 && d.trace_residual < 1e-12 &&
           d.min_eigenvalue > -1e-9 && d.x_sparsity_residual < 1e-12;
  return d;
}

Eigen::Vector4d x_state_eigenvalues(const Eigen::Matrix4cd& rho) {
  const auto block_eigs = [](double a, double d, std::complex<double> c) {
    const double mean = 0.5 * (a + d);
    const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(c));
    return std::pair<double, double>{mean - radius, mean + radius};
  };
  const auto [o1, o2] = block_eigs(rho(0, 0).real(), rho(3, 3).real(), rho(0, 3));
  const auto [i1, i2] = block_eigs(rho(1, 1).real(), rho(2, 2).real(), rho(1, 2));
  Eigen::Vector4d ev;
  ev << o1, o2, i1, i2;
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace cluster
