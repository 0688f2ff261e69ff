#pragma once

#include <complex>
#include <vector>

#include "cluster/errors.hpp"

// The fermionic contraction G_r = <A_0 B_r> (A = c - c^dag, B = c + c^dag)
// is the single ground-state quantity from which every spin correlator is
// assembled by Wick's theorem.  In the thermodynamic limit
//
//   G_R = -(1/4pi) \int_{-2pi}^{2pi} e^{iRr/2} (B - e^{-ir})
//                  (1 + B^2 - 2B cos r)^{-1/2} dr,
//
// whose imaginary part vanishes by r -> -r antisymmetry, leaving
//
//   G_R = -(1/2pi) \int_0^{2pi} [cos(Rr/2)(B - cos r) - sin(Rr/2) sin r]
//                  / eps(r) dr.
//
// G_r = 0 exactly for odd r: the two sublattices decouple, and A_0, B_r
// then live on different chains.  At B = 0 the window collapses to
// G_r = delta_{r,2} (the cluster-state fingerprint); at B = 1 the integrand
// reduces to -sin((R-1)r/2), giving G_R = 2 / (pi (R-1)) for even R.

namespace cluster {

struct GVector {
  double B = 0.0;
  int r_max = 0;
  std::vector<double> values;  // index r + r_max, r in [-r_max, r_max]
  double est_error = 0.0;      // worst per-entry quadrature error estimate
  double tol = 0.0;

  double at(int r) const {
    if (r < -r_max || r > r_max)
      throw WindowError("GVector: offset outside the computed window");
    return values[static_cast<std::size_t>(r + r_max)];
  }
};

// Evaluate the contraction integral by adaptive Gauss-Kronrod quadrature to
// absolute tolerance tol.  The domain is split at pi so that the |B| = 1
// kink points (r = 0, 2pi for B = 1; r = pi for B = -1) always sit on panel
// boundaries, which the interior-node rule never samples.
// Throws QuadratureError (carrying the achieved estimate) on non-convergence.
double g_integral(double B, int r, double tol = 1e-10);

// Full complex evaluation over [-2pi, 2pi] without the symmetry reduction;
// used to verify that the imaginary residual really is below tolerance.
std::complex<double> g_integral_unreduced(double B, int r, double tol = 1e-10);

// Finite-chain momentum sum over k_p = 2 pi p / N, p = -N/2 ... N/2 - 1:
//   G_R = -(1/N) sum_p e^{i k_p R} e^{2 i theta(k_p)}.
// Throws DegeneratePointError if any eps(k_p) < 1e-14 (happens at |B| = 1).
double g_finite_sum(double B, int r, int N);

// Fill the window [-r_max, r_max] via g_integral.  Results are memoized
// process-wide by (B, r, tol) so sweeps sharing a field value reuse entries;
// the cache is guarded by a mutex and never changes a stored value, so
// concurrent readers and writers see identical numbers.
GVector g_vector(double B, int r_max, double tol = 1e-10);

// Drop all memoized entries (test hook).
void g_cache_clear();

}  // namespace cluster
