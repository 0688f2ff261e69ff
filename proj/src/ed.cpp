#include "cluster/ed.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace cluster {

namespace {

void check_size(const ModelParams& params) {
  params.validate();
  if (params.thermodynamic())
    throw std::invalid_argument("ed: finite N required");
  if (params.N > kEDMaxSites)
    throw SizeGuardError("ed: dense diagonalization limited to N <= 14");
}

int sz_of(unsigned b, int site) { return ((b >> site) & 1u) ? -1 : +1; }

std::vector<int> centre_sites(const ModelParams& params) {
  std::vector<int> centres;
  if (params.boundary == Boundary::periodic) {
    for (int i = 0; i < params.N; ++i) centres.push_back(i);
  } else {
    for (int i = 1; i + 1 < params.N; ++i) centres.push_back(i);
  }
  return centres;
}

unsigned flip_mask(const ModelParams& params, int centre) {
  const int left = (centre - 1 + params.N) % params.N;
  const int right = (centre + 1) % params.N;
  return (1u << left) | (1u << right);
}

// One parity sector: basis listing plus the dense Hamiltonian block.
struct Sector {
  std::vector<unsigned> states;            // sector index -> basis state
  Eigen::MatrixXd h;
};

Sector build_sector(const ModelParams& params, int parity) {
  const unsigned dim_full = 1u << params.N;
  Sector sector;
  sector.states.reserve(dim_full / 2);
  std::vector<int> index_of(dim_full, -1);
  for (unsigned b = 0; b < dim_full; ++b) {
    if ((std::popcount(b) & 1) == parity) {
      index_of[b] = static_cast<int>(sector.states.size());
      sector.states.push_back(b);
    }
  }
  const int dim = static_cast<int>(sector.states.size());
  sector.h = Eigen::MatrixXd::Zero(dim, dim);

  const auto centres = centre_sites(params);
  for (int row = 0; row < dim; ++row) {
    const unsigned b = sector.states[static_cast<std::size_t>(row)];
    double field = 0.0;
    for (int site = 0; site < params.N; ++site) field += sz_of(b, site);
    sector.h(row, row) += -params.J * params.B * field;
    for (int centre : centres) {
      const unsigned target = b ^ flip_mask(params, centre);
      sector.h(index_of[target], row) += -params.J * sz_of(b, centre);
    }
  }
  return sector;
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const ModelParams& params) {
  check_size(params);
  const unsigned dim = 1u << params.N;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const auto centres = centre_sites(params);
  for (unsigned b = 0; b < dim; ++b) {
    double field = 0.0;
    for (int site = 0; site < params.N; ++site) field += sz_of(b, site);
    h(b, b) += -params.J * params.B * field;
    for (int centre : centres)
      h(b ^ flip_mask(params, centre), b) += -params.J * sz_of(b, centre);
  }
  return h;
}

SpectrumResult degeneracy(const ModelParams& params, double tol, int n_lowest) {
  check_size(params);
  std::vector<double> energies;
  for (int parity = 0; parity < 2; ++parity) {
    const Sector sector = build_sector(params, parity);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector.h, Eigen::EigenvaluesOnly);
    energies.insert(energies.end(), es.eigenvalues().begin(), es.eigenvalues().end());
  }
  std::sort(energies.begin(), energies.end());

  SpectrumResult result;
  result.tol = tol;
  const int keep = std::min<int>(n_lowest, static_cast<int>(energies.size()));
  result.lowest_energies =
      Eigen::Map<const Eigen::VectorXd>(energies.data(), keep);
  result.degeneracy = 0;
  for (double e : energies)
    if (e <= energies.front() + tol) ++result.degeneracy;
  return result;
}

GroundSpace ground_space(const ModelParams& params, double tol) {
  check_size(params);
  const unsigned dim_full = 1u << params.N;

  struct Candidate {
    double energy;
    Eigen::VectorXd state;
  };
  std::vector<Candidate> candidates;
  double e_min = std::numeric_limits<double>::infinity();

  for (int parity = 0; parity < 2; ++parity) {
    const Sector sector = build_sector(params, parity);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector.h);
    e_min = std::min(e_min, es.eigenvalues()[0]);
    // keep a generous low-lying handful per sector; trimmed below
    const int keep = std::min<int>(8, static_cast<int>(es.eigenvalues().size()));
    for (int idx = 0; idx < keep; ++idx) {
      Eigen::VectorXd full = Eigen::VectorXd::Zero(dim_full);
      for (std::size_t row = 0; row < sector.states.size(); ++row)
        full[sector.states[row]] = es.eigenvectors()(static_cast<Eigen::Index>(row), idx);
      candidates.push_back({es.eigenvalues()[idx], std::move(full)});
    }
  }

  GroundSpace space;
  space.energy = e_min;
  space.tol = tol;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.energy < b.energy; });
  for (auto& c : candidates)
    if (c.energy <= e_min + tol) space.states.push_back(std::move(c.state));
  return space;
}

TwoSiteRDM two_site_rdm_from(const GroundSpace& space, const ModelParams& params,
                             int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= params.N || j >= params.N)
    throw std::invalid_argument("two_site_rdm_from: need two distinct sites in range");
  if (space.states.empty())
    throw std::invalid_argument("two_site_rdm_from: empty ground space");
  const unsigned dim_full = 1u << params.N;

  // rho_{(ab),(cd)} = avg over ground basis of sum_rest psi[a b rest] psi[c d rest],
  // a = site i, b = site j (bit 0 = up), matching the X-state index order.
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const unsigned mask_i = 1u << i;
  const unsigned mask_j = 1u << j;
  for (const Eigen::VectorXd& psi : space.states) {
    Eigen::Matrix4d contrib = Eigen::Matrix4d::Zero();
    for (unsigned b = 0; b < dim_full; ++b) {
      if (b & (mask_i | mask_j)) continue;  // enumerate rest patterns once
      Eigen::Vector4d amp;
      amp[0] = psi[b];                    // i up,   j up
      amp[1] = psi[b | mask_j];           // i up,   j down
      amp[2] = psi[b | mask_i];           // i down, j up
      amp[3] = psi[b | mask_i | mask_j];  // i down, j down
      contrib.noalias() += amp * amp.transpose();
    }
    rho += contrib.cast<std::complex<double>>();
  }
  rho /= double(space.states.size());

  TwoSiteRDM state;
  state.rho = rho;
  state.B = params.B;
  state.R = std::abs(j - i);
  return state;
}

TwoSiteRDM two_site_rdm_ed(const ModelParams& params, int i, int j) {
  return two_site_rdm_from(ground_space(params), params, i, j);
}

std::vector<double> stabilizer_expectations(const ModelParams& params) {
  const GroundSpace space = ground_space(params);
  const auto centres = centre_sites(params);
  const unsigned dim_full = 1u << params.N;
  std::vector<double> expectations;
  expectations.reserve(centres.size());
  for (int centre : centres) {
    const unsigned mask = flip_mask(params, centre);
    double acc = 0.0;
    for (const Eigen::VectorXd& psi : space.states) {
      double value = 0.0;
      for (unsigned b = 0; b < dim_full; ++b)
        value += sz_of(b, centre) * psi[b ^ mask] * psi[b];
      acc += value;
    }
    expectations.push_back(acc / double(space.states.size()));
  }
  return expectations;
}

std::vector<std::pair<int, double>> splitting_curve(double B,
                                                    const std::vector<int>& lengths,
                                                    SplittingMethod method) {
  if (std::abs(B) >= 1.0)
    throw std::invalid_argument("splitting_curve: requires |B| < 1");
  std::vector<std::pair<int, double>> curve;
  curve.reserve(lengths.size());
  for (int n : lengths) {
    const bool use_ed = (method == SplittingMethod::ed) ||
                        (method == SplittingMethod::automatic && n <= 12);
    double width = 0.0;
    if (use_ed) {
      ModelParams params;
      params.B = B;
      params.N = n;
      const SpectrumResult spectrum = degeneracy(params, 1e-10, 4);
      width = spectrum.lowest_energies[3] - spectrum.lowest_energies[0];
    } else {
      width = edge_splitting(B, n);
    }
    curve.emplace_back(n, width);
  }
  return curve;
}

}  // namespace cluster
