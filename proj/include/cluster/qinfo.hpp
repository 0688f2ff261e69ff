#pragma once

#include <Eigen/Dense>
#include <complex>

// Quantum-information measures on two-qubit states (all entropies in bits).
//
//   mutual information  I = S(rho_A) + S(rho_B) - S(rho_AB)
//   concurrence         C = max(0, l1 - l2 - l3 - l4), l_i the sqrt
//                           eigenvalues of rho (sy x sy) rho^* (sy x sy)
//   EoF                 E = h((1 + sqrt(1 - C^2))/2), h binary entropy
//   discord             D = I - max_basis [ S(rho_A) - sum_i p_i S(rho_A|i) ]
//
// The discord minimization runs over rank-1 projective measurements on the
// second qubit, parameterized by a Bloch direction (theta, phi):
//   |m0> = (cos(theta/2), e^{i phi} sin(theta/2)),
//   |m1> = (-e^{-i phi} sin(theta/2), cos(theta/2)).

namespace cluster {

struct MeasurementBasis {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  Eigen::Vector2cd ket0() const;
  Eigen::Vector2cd ket1() const;
};

struct OptimizerReport {
  int grid_theta = 0;
  int grid_phi = 0;
  int refine_iterations = 0;
  bool converged = false;
};

struct DiscordResult {
  double discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  MeasurementBasis optimal_basis;
  OptimizerReport optimizer_report;
};

// Von Neumann entropy in bits; eigenvalues below 1e-12 are clamped out
// (their mass is discarded, not redistributed).
double entropy(const Eigen::MatrixXcd& rho);

Eigen::Matrix2cd partial_trace_first(const Eigen::Matrix4cd& rho);   // keeps qubit B
Eigen::Matrix2cd partial_trace_second(const Eigen::Matrix4cd& rho);  // keeps qubit A

double mutual_information(const Eigen::Matrix4cd& rho);

double concurrence(const Eigen::Matrix4cd& rho);
double eof_from_concurrence(double c);
double eof(const Eigen::Matrix4cd& rho);

// sum_i p_i S(rho_A | outcome i on B); branches with p_i < 1e-14
// contribute zero.
double measured_conditional_entropy(const Eigen::Matrix4cd& rho,
                                    const MeasurementBasis& basis);

// Deterministic minimization: a coarse theta x phi grid (theta midpoints,
// phi left edges; ties broken toward the lexicographically lowest cell)
// followed by Nelder-Mead refinement from the best cell.
DiscordResult discord(const Eigen::Matrix4cd& rho, int n_theta = 64, int n_phi = 32);

}  // namespace cluster
