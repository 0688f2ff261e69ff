#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cluster/model.hpp"
#include "cluster/rdm.hpp"

// Independent ground truth: dense exact diagonalization of the spin chain.
//
// Basis: computational product states indexed by an integer whose bit i is
// site i (bit 0 = spin up, sigma^z = +1).  The Hamiltonian conserves the
// global parity Prod_i sigma^z_i, so every solve splits into two blocks of
// dimension 2^{N-1}, found by popcount parity.  Dense solves keep every
// degeneracy visible, which is the point of this module: the fourfold
// topological ground space of the open chain at B = 0 and its exponentially
// small splitting at 0 < |B| < 1 come out exactly.

namespace cluster {

inline constexpr int kEDMaxSites = 14;  // dense 2^N x 2^N memory guard

struct SpectrumResult {
  Eigen::VectorXd lowest_energies;  // sorted ascending
  int degeneracy = 0;               // states within tol of the minimum
  double tol = 0.0;
};

// Dense 2^N x 2^N matrix (test and diagnostic use; the solvers below work
// per parity sector and never materialize this).
Eigen::MatrixXd build_hamiltonian(const ModelParams& params);

// Full spectrum merged over both parity sectors; lowest n_lowest returned.
SpectrumResult degeneracy(const ModelParams& params, double tol = 1e-10,
                          int n_lowest = 8);

// Orthonormal basis of the ground manifold (all states within tol of the
// minimum), embedded in the full 2^N space.
struct GroundSpace {
  double energy = 0.0;
  std::vector<Eigen::VectorXd> states;
  double tol = 0.0;
};

GroundSpace ground_space(const ModelParams& params, double tol = 1e-10);

// Partial trace onto sites (i, j) of the uniform mixture over a ground
// manifold: basis-independent, no symmetry breaking by hand.
TwoSiteRDM two_site_rdm_from(const GroundSpace& space, const ModelParams& params,
                             int i, int j);
TwoSiteRDM two_site_rdm_ed(const ModelParams& params, int i, int j);

// <S_c> for every interior centre c (all centres when periodic); the ground
// state at B = 0 is the common +1 eigenspace of these stabilizers.
std::vector<double> stabilizer_expectations(const ModelParams& params);

enum class SplittingMethod { automatic, ed, bdg };

// Ground-manifold width E_4 - E_1 of the open chain versus N.  ED up to
// N = 14; larger chains go through the quadratic-solver path, which measures
// the same quantity (the two edge-mode energies).
std::vector<std::pair<int, double>> splitting_curve(
    double B, const std::vector<int>& lengths,
    SplittingMethod method = SplittingMethod::automatic);

}  // namespace cluster
