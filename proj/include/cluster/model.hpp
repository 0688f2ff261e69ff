#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cluster/errors.hpp"

// The chain under study is
//
//   H = -J sum_i ( sigma^x_{i-1} sigma^z_i sigma^x_{i+1} + B sigma^z_i ),
//
// a cluster-like triplet interaction plus a transverse field (J > 0, B in
// units of J).  A Jordan-Wigner transformation maps it to free fermions
// hopping between next-nearest neighbours, so the even and odd sublattices
// decouple into two independent transverse-field-Ising-like chains.  This
// module holds the analytic periodic-chain solution (dispersion and
// Bogoliubov angle) and a dense Bogoliubov-de Gennes solver for finite open
// chains, used for the topological-protection checks.

namespace cluster {

enum class Boundary { open, periodic };

struct ModelParams {
  double J = 1.0;       // overall coupling, must be > 0
  double B = 0.0;       // transverse field in units of J
  int N = 0;            // site count; 0 marks the thermodynamic limit
  Boundary boundary = Boundary::open;

  bool thermodynamic() const { return N == 0; }
  void validate() const;  // J > 0, N >= 4 when finite
};

// Quasiparticle energy at momentum k for the periodic chain:
//   eps_k = sqrt(1 + B^2 - 2 B cos 2k)    (units of J).
// The cos 2k reflects the range-2 hopping of the fermion chain; the gap
// closes at |B| = 1.
double dispersion(double B, double k);

// e^{2 i theta_k} = (B - e^{-2ik}) / eps_k.  Defining the phase directly
// avoids the branch ambiguity of tan 2theta_k = sin 2k / (B - cos 2k).
// Throws DegeneratePointError when eps_k < 1e-14 (gap-closing momentum).
std::complex<double> bogoliubov_phase(double B, double k);

// Periodic-chain solution on the N momenta k_p = 2 pi p / N,
// p = -N/2 ... N/2 - 1.
struct FreeFermionSolution {
  Eigen::VectorXd momenta;
  Eigen::VectorXd energies;        // eps_k >= 0
  Eigen::VectorXcd phases;         // e^{2 i theta_k}, unit modulus
};

FreeFermionSolution free_fermion_solution(double B, int N);

// Finite open chain.  In Majorana form H = iJ sum_{mn} b_m K_{mn} a_n with
//   K = B * Id  +  (-1) on the (i-1, i+1) entries for interior centres i,
// where a_j = A_j = c_j - c_j^dag up to the factor convention below and the
// SVD K = U S V^T yields quasiparticle energies e_k = 2 J s_k, ground
// energy -J sum_k s_k, and the ground-state contraction table
//   <A_i B_j> = -(U V^T)_{ij},   A_i = c_i - c_i^dag,  B_j = c_j + c_j^dag.
struct BdGSolution {
  Eigen::VectorXd quasiparticle_energies;  // sorted ascending, length N, >= 0
  Eigen::MatrixXd contraction_table;       // (i,j) = <A_i B_j>, entries in [-1,1]
  double ground_energy = 0.0;
};

BdGSolution bdg_solve(const ModelParams& params);

// Number of zero modes of the particle-hole-doubled BdG spectrum {+-e_k}
// below the threshold: each physical zero mode is counted twice.  The open
// chain at B = 0 has one exact zero mode per sublattice chain, hence 4.
int zero_mode_count(const BdGSolution& sol, double threshold = 1e-10);

// Width E_4 - E_1 of the four-dimensional quasi-degenerate ground manifold
// of the open chain, i.e. the sum of the two smallest quasiparticle
// energies (one edge mode per sublattice chain; they are exactly equal by
// mirror symmetry).  This is the quantity the exact-diagonalization
// splitting curve measures.  Requires |B| < 1 (elsewhere there is no
// edge-mode manifold to split).
double edge_splitting(double B, int N);

// Ground energy of the periodic fermion chain at finite N via the momentum
// sum -J sum_p eps(k_p), and its thermodynamic-limit density
// -(J/pi) int_0^pi sqrt(1 + B^2 - 2B cos u) du.
double ground_energy_periodic(double B, int N, double J = 1.0);
double ground_energy_density(double B, double tol = 1e-10);

}  // namespace cluster
