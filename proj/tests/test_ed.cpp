#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "cluster/ed.hpp"
#include "cluster/errors.hpp"
#include "cluster/model.hpp"

using namespace cluster;

namespace {

ModelParams chain(double B, int N, Boundary boundary = Boundary::open) {
  ModelParams p;
  p.B = B;
  p.N = N;
  p.boundary = boundary;
  return p;
}

// choose(n, m) for the stabilizer-counting argument below
double choose(int n, int m) {
  double v = 1.0;
  for (int i = 0; i < m; ++i) v = v * double(n - i) / double(i + 1);
  return v;
}

}  // namespace

TEST_SUITE("ed") {

TEST_CASE("Hamiltonian is Hermitian and parity-block-diagonal") {
  for (Boundary b : {Boundary::open, Boundary::periodic}) {
    const Eigen::MatrixXd h = build_hamiltonian(chain(0.7, 8, b));
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    // every term flips an even number of spins, so matrix elements between
    // configurations of different magnetization parity vanish
    double off_parity = 0.0;
    for (int a = 0; a < h.rows(); ++a)
      for (int c = 0; c < h.cols(); ++c)
        if ((std::popcount(unsigned(a)) + std::popcount(unsigned(c))) % 2 == 1)
          off_parity = std::max(off_parity, std::abs(h(a, c)));
    CHECK(off_parity < 1e-12);
  }
}

TEST_CASE("periodic chain at B = 0: commuting-stabilizer spectrum") {
  // the six ring stabilizers are independent, so the spectrum is -6 + 2m
  // with binomial multiplicity choose(6, m)
  const Eigen::MatrixXd h = build_hamiltonian(chain(0.0, 6, Boundary::periodic));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  int idx = 0;
  for (int m = 0; m <= 6; ++m) {
    const double level = -6.0 + 2.0 * m;
    for (int rep = 0; rep < int(choose(6, m)); ++rep, ++idx)
      REQUIRE(ev[idx] == doctest::Approx(level).epsilon(1e-10));
  }
  CHECK(idx == 64);
}

TEST_CASE("ground degeneracy: fourfold open, unique periodic and polarized") {
  CHECK(degeneracy(chain(0.0, 8)).degeneracy == 4);
  CHECK(degeneracy(chain(0.0, 8, Boundary::periodic)).degeneracy == 1);
  CHECK(degeneracy(chain(2.0, 8)).degeneracy == 1);
}

TEST_CASE("two-site RDM: maximally mixed pair inside the B = 0 manifold") {
  const TwoSiteRDM state = two_site_rdm_ed(chain(0.0, 10), 4, 6);
  CHECK((state.rho - Eigen::Matrix4cd::Identity() / 4.0).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK(state.R == 2);
}

TEST_CASE("two-site RDM: strong field polarizes the pair") {
  // residual transverse correlations scale as 1/(2B)
  const TwoSiteRDM state = two_site_rdm_ed(chain(100.0, 8), 3, 5);
  Eigen::Matrix4cd up = Eigen::Matrix4cd::Zero();
  up(0, 0) = 1.0;
  CHECK((state.rho - up).cwiseAbs().maxCoeff() < 5e-3);
}

TEST_CASE("RDM marginal agrees with the direct magnetization expectation") {
  const ModelParams params = chain(1.3, 10);
  const GroundSpace space = ground_space(params);
  REQUIRE(space.states.size() == 1);
  const int i = 4, j = 6;
  const TwoSiteRDM state = two_site_rdm_from(space, params, i, j);
  const double z_rdm = std::real(state.rho(0, 0) + state.rho(1, 1) -
                                 state.rho(2, 2) - state.rho(3, 3));
  double z_direct = 0.0;
  const Eigen::VectorXd& psi = space.states[0];
  for (int b = 0; b < psi.size(); ++b) {
    const double sz = ((b >> i) & 1) ? -1.0 : 1.0;
    z_direct += sz * psi[b] * psi[b];
  }
  CHECK(z_rdm == doctest::Approx(z_direct).epsilon(1e-12));
}

TEST_CASE("stabilizer expectations: exactly 1 at B = 0, uniformly reduced at B = 2") {
  for (Boundary b : {Boundary::open, Boundary::periodic}) {
    const std::vector<double> s = stabilizer_expectations(chain(0.0, 10, b));
    CHECK(s.size() == (b == Boundary::open ? 8u : 10u));
    for (double v : s) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  const std::vector<double> weak = stabilizer_expectations(chain(2.0, 10));
  for (double v : weak) {
    CHECK(v > 0.24);
    CHECK(v < 0.27);
  }
}

TEST_CASE("splitting curve: exact zero at B = 0, exponential decay at B = 0.3") {
  for (const auto& point : splitting_curve(0.0, {8, 10}))
    CHECK(std::abs(point.second) < 1e-12);
  const auto curve = splitting_curve(0.3, {6, 8, 10, 12});
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    CHECK(curve[i].second > 0.0);
    CHECK(curve[i + 1].second < curve[i].second);
  }
}

TEST_CASE("splitting: dense diagonalization equals the quadratic solver") {
  const double ed_gap = splitting_curve(0.3, {12}, SplittingMethod::ed)[0].second;
  const double bdg_gap = splitting_curve(0.3, {12}, SplittingMethod::bdg)[0].second;
  CHECK(ed_gap == doctest::Approx(bdg_gap).epsilon(1e-8));
  // the automatic method picks whichever of the two applies at each size
  const auto mixed = splitting_curve(0.5, {8, 16});
  CHECK(mixed[0].second ==
        doctest::Approx(splitting_curve(0.5, {8}, SplittingMethod::ed)[0].second)
            .epsilon(1e-13));
  CHECK(mixed[1].second ==
        doctest::Approx(splitting_curve(0.5, {16}, SplittingMethod::bdg)[0].second)
            .epsilon(1e-13));
  CHECK_THROWS_AS(splitting_curve(1.5, {8}), std::invalid_argument);
}

TEST_CASE("full low spectrum is reconstructed from quasiparticle energies") {
  // every many-body level of the quadratic chain is the ground energy plus a
  // subset sum of quasiparticle energies; the lowest eight must match dense
  // diagonalization with no free parameters
  for (double B : {0.0, 0.3, 0.7, 2.0}) {
    for (int N : {8, 10}) {
      CAPTURE(B);
      CAPTURE(N);
      const ModelParams params = chain(B, N);
      const BdGSolution sol = bdg_solve(params);
      std::vector<double> levels{sol.ground_energy};
      for (int k = 0; k < sol.quasiparticle_energies.size(); ++k) {
        const double e = sol.quasiparticle_energies[k];
        const std::size_t count = levels.size();
        for (std::size_t s = 0; s < count; ++s) levels.push_back(levels[s] + e);
      }
      std::sort(levels.begin(), levels.end());
      const SpectrumResult exact = degeneracy(params);
      for (int s = 0; s < exact.lowest_energies.size(); ++s)
        CHECK(exact.lowest_energies[s] ==
              doctest::Approx(levels[s]).epsilon(1e-8));
    }
  }
}

TEST_CASE("periodic energy density approaches the thermodynamic integral") {
  const SpectrumResult spec = degeneracy(chain(2.0, 12, Boundary::periodic));
  const double density = spec.lowest_energies[0] / 12.0;
  CHECK(density == doctest::Approx(ground_energy_density(2.0)).epsilon(1e-2));
}

TEST_CASE("size guard rejects chains that would not fit in dense form") {
  CHECK_THROWS_AS(build_hamiltonian(chain(1.0, 16)), SizeGuardError);
  CHECK_THROWS_AS(degeneracy(chain(1.0, 16)), SizeGuardError);
  CHECK_THROWS_AS(two_site_rdm_ed(chain(1.0, 16), 2, 4), SizeGuardError);
}

}  // TEST_SUITE
