#pragma once

#include <Eigen/Dense>

#include "cluster/correlators.hpp"
#include "cluster/errors.hpp"

// Two-site reduced density matrix.  The model's Z2 symmetry (conservation of
// the global sigma^z parity) kills every Pauli coefficient with an odd
// number of x or y factors, so the two-site state is an X state:
//
//   rho = (1/4) [ 1 + z (sz x 1 + 1 x sz) + xx sx sx + yy sy sy + zz sz sz ]
//
// with diagonal (1 + 2z + zz, 1 - zz, 1 - zz, 1 - 2z + zz)/4, inner
// anti-diagonal (xx + yy)/4 and outer anti-diagonal (xx - yy)/4 — all real.

namespace cluster {

struct TwoSiteRDM {
  Eigen::Matrix4cd rho;
  double B = 0.0;  // provenance
  int R = 0;
};

struct RDMDiagnostics {
  double hermiticity_residual = 0.0;
  double trace_residual = 0.0;
  double min_eigenvalue = 0.0;
  double x_sparsity_residual = 0.0;  // largest entry off the X pattern
  bool pass = false;
};

// Build the X state from a correlator set.  Throws PhysicalityError if the
// result fails positivity beyond -1e-9 (a sign of upstream quadrature
// trouble), since every exact correlator set yields a valid state.
TwoSiteRDM build_rdm(const CorrelatorSet& c, double B = 0.0);

RDMDiagnostics validate_rdm(const TwoSiteRDM& state);

// Closed-form spectrum of an X-shaped matrix from its two 2x2 blocks
// (outer {0,3} and inner {1,2}); cross-checks the dense eigensolver.
Eigen::Vector4d x_state_eigenvalues(const Eigen::Matrix4cd& rho);

}  // namespace cluster
