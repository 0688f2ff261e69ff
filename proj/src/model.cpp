#include "cluster/model.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cluster/quadrature.hpp"

namespace cluster {

void ModelParams::validate() const {
  if (!(J > 0.0)) throw std::invalid_argument("ModelParams: J must be positive");
  if (!thermodynamic() && N < 4)
    throw std::invalid_argument("ModelParams: finite chains need N >= 4");
}

double dispersion(double B, double k) {
  return std::sqrt(1.0 + B * B - 2.0 * B * std::cos(2.0 * k));
}

std::complex<double> bogoliubov_phase(double B, double k) {
  const double eps = dispersion(B, k);
  if (eps < 1e-14)
    throw DegeneratePointError("bogoliubov_phase: momentum hits a gap-closing point");
  return (B - std::exp(std::complex<double>(0.0, -2.0 * k))) / eps;
}

FreeFermionSolution free_fermion_solution(double B, int N) {
  if (N < 8 || N % 2 != 0)
    throw std::invalid_argument("free_fermion_solution: N must be even and >= 8");
  FreeFermionSolution sol;
  sol.momenta.resize(N);
  sol.energies.resize(N);
  sol.phases.resize(N);
  for (int p = -N / 2; p < N / 2; ++p) {
    const int idx = p + N / 2;
    const double k = 2.0 * std::numbers::pi * double(p) / double(N);
    sol.momenta[idx] = k;
    sol.energies[idx] = dispersion(B, k);
    sol.phases[idx] = bogoliubov_phase(B, k);
  }
  return sol;
}

BdGSolution bdg_solve(const ModelParams& params) {
  params.validate();
  if (params.thermodynamic() || params.boundary != Boundary::open)
    throw std::invalid_argument("bdg_solve: finite open chains only");
  const int N = params.N;

  // Majorana coupling matrix: the field puts B on the diagonal, the triplet
  // term hops across each interior centre i, coupling sites i-1 and i+1.
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
  K.diagonal().setConstant(params.B);
  for (int i = 1; i + 1 < N; ++i) K(i - 1, i + 1) = -1.0;

  BdGSolution sol;
  if (N <= 64) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();  // descending
    sol.quasiparticle_energies = 2.0 * params.J * s.reverse();
    sol.ground_energy = -params.J * s.sum();
    sol.contraction_table = -(svd.matrixU() * svd.matrixV().transpose());
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    sol.quasiparticle_energies = 2.0 * params.J * s.reverse();
    sol.ground_energy = -params.J * s.sum();
    sol.contraction_table = -(svd.matrixU() * svd.matrixV().transpose());
  }
  return sol;
}

int zero_mode_count(const BdGSolution& sol, double threshold) {
  int physical = 0;
  for (int i = 0; i < sol.quasiparticle_energies.size(); ++i)
    if (sol.quasiparticle_energies[i] < threshold) ++physical;
  return 2 * physical;  // the +-e doubling of the BdG spectrum
}

double edge_splitting(double B, int N) {
  if (std::abs(B) >= 1.0)
    throw std::invalid_argument("edge_splitting: requires |B| < 1 (topological phase)");
  ModelParams params;
  params.B = B;
  params.N = N;
  const BdGSolution sol = bdg_solve(params);
  return sol.quasiparticle_energies[0] + sol.quasiparticle_energies[1];
}

double ground_energy_periodic(double B, int N, double J) {
  if (N < 8 || N % 2 != 0)
    throw std::invalid_argument("ground_energy_periodic: N must be even and >= 8");
  // Energies only: well defined even at |B| = 1 where the phase is not.
  double sum = 0.0;
  for (int p = -N / 2; p < N / 2; ++p)
    sum += dispersion(B, 2.0 * std::numbers::pi * double(p) / double(N));
  return -J * sum;
}

double ground_energy_density(double B, double tol) {
  const auto eps = [B](double u) { return std::sqrt(1.0 + B * B - 2.0 * B * std::cos(u)); };
  const auto res = quadrature::integrate(eps, 0.0, std::numbers::pi, tol);
  if (!res.converged)
    throw QuadratureError("ground_energy_density: tolerance not reached", res.error);
  return -res.value / std::numbers::pi;
}

}  // namespace cluster
