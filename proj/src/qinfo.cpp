#include "cluster/qinfo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace cluster {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEigenvalueClamp = 1e-12;

double entropy_term(double lambda) {
  return (lambda > kEigenvalueClamp) ? -lambda * std::log2(lambda) : 0.0;
}

// Closed-form entropy of a 2x2 Hermitian matrix with trace p (p <= 1).
double entropy_2x2(const Eigen::Matrix2cd& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double radius =
      std::sqrt(std::max(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)), 0.0));
  return entropy_term(mean + radius) + entropy_term(mean - radius);
}

}  // namespace

Eigen::Vector2cd MeasurementBasis::ket0() const {
  const std::complex<double> e_iphi = std::exp(std::complex<double>(0.0, phi));
  return {std::cos(0.5 * theta), e_iphi * std::sin(0.5 * theta)};
}

Eigen::Vector2cd MeasurementBasis::ket1() const {
  const std::complex<double> e_miphi = std::exp(std::complex<double>(0.0, -phi));
  return {-e_miphi * std::sin(0.5 * theta), std::cos(0.5 * theta)};
}

double entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    s += entropy_term(es.eigenvalues()[i]);
  return s;
}

Eigen::Matrix2cd partial_trace_first(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd out;
  for (int b = 0; b < 2; ++b)
    for (int d = 0; d < 2; ++d)
      out(b, d) = rho(0 * 2 + b, 0 * 2 + d) + rho(1 * 2 + b, 1 * 2 + d);
  return out;
}

Eigen::Matrix2cd partial_trace_second(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd out;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      out(a, c) = rho(a * 2 + 0, c * 2 + 0) + rho(a * 2 + 1, c * 2 + 1);
  return out;
}

double mutual_information(const Eigen::Matrix4cd& rho) {
  return entropy(partial_trace_second(rho)) + entropy(partial_trace_first(rho)) -
         entropy(rho);
}

double concurrence(const Eigen::Matrix4cd& rho) {
  // spin-flipped state: (sy x sy) rho^* (sy x sy) reverses the anti-diagonal
  // with signs; build it explicitly.
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd m = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, false);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i)
    lambda[static_cast<std::size_t>(i)] =
        std::sqrt(std::max(es.eigenvalues()[i].real(), 0.0));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  const double f = 0.5 * (1.0 + std::sqrt(std::max(1.0 - c * c, 0.0)));
  if (f >= 1.0) return 0.0;  // c == 0 limit; c == 1 gives f = 1/2 below
  return entropy_term(f) + entropy_term(1.0 - f);
}

double eof(const Eigen::Matrix4cd& rho) { return eof_from_concurrence(concurrence(rho)); }

double measured_conditional_entropy(const Eigen::Matrix4cd& rho,
                                    const MeasurementBasis& basis) {
  const std::array<Eigen::Vector2cd, 2> kets = {basis.ket0(), basis.ket1()};
  double out = 0.0;
  for (const auto& v : kets) {
    // unnormalized conditional state of A: m_ac = <v|_B rho |v>_B
    Eigen::Matrix2cd m;
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        std::complex<double> acc = 0.0;
        for (int b = 0; b < 2; ++b)
          for (int d = 0; d < 2; ++d)
            acc += std::conj(v[b]) * rho(a * 2 + b, c * 2 + d) * v[d];
        m(a, c) = acc;
      }
    const double p = (m(0, 0) + m(1, 1)).real();
    if (p > 1e-14) out += p * entropy_2x2(m / p);
  }
  return out;
}

namespace {

struct SimplexVertex {
  double theta;
  double phi;
  double value;
};

// Deterministic Nelder-Mead on the (theta, phi) plane.  The conditional
// entropy is periodic and smooth, so unconstrained steps are safe; the
// best point is wrapped back into range afterwards.
SimplexVertex nelder_mead(const Eigen::Matrix4cd& rho, double theta0, double phi0,
                          double step_theta, double step_phi, int max_iter,
                          int& iterations, bool& converged) {
  const auto eval = [&rho](double t, double p) {
    return measured_conditional_entropy(rho, {t, p});
  };
  std::array<SimplexVertex, 3> simplex = {
      SimplexVertex{theta0, phi0, eval(theta0, phi0)},
      SimplexVertex{theta0 + step_theta, phi0, eval(theta0 + step_theta, phi0)},
      SimplexVertex{theta0, phi0 + step_phi, eval(theta0, phi0 + step_phi)}};

  converged = false;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const SimplexVertex& a, const SimplexVertex& b) {
                if (a.value != b.value) return a.value < b.value;
                if (a.theta != b.theta) return a.theta < b.theta;
                return a.phi < b.phi;
              });
    const double spread = simplex[2].value - simplex[0].value;
    const double diameter = std::max(
        std::hypot(simplex[1].theta - simplex[0].theta, simplex[1].phi - simplex[0].phi),
        std::hypot(simplex[2].theta - simplex[0].theta, simplex[2].phi - simplex[0].phi));
    if (spread < 1e-8) converged = true;  // no basis improves the value further
    if ((spread < 1e-10 && diameter < 1e-7)) break;

    const double ct = 0.5 * (simplex[0].theta + simplex[1].theta);
    const double cp = 0.5 * (simplex[0].phi + simplex[1].phi);
    const auto try_point = [&](double coeff) {
      const double t = ct + coeff * (ct - simplex[2].theta);
      const double p = cp + coeff * (cp - simplex[2].phi);
      return SimplexVertex{t, p, eval(t, p)};
    };

    const SimplexVertex reflected = try_point(1.0);
    if (reflected.value < simplex[0].value) {
      const SimplexVertex expanded = try_point(2.0);
      simplex[2] = (expanded.value < reflected.value) ? expanded : reflected;
    } else if (reflected.value < simplex[1].value) {
      simplex[2] = reflected;
    } else {
      const SimplexVertex contracted =
          try_point(reflected.value < simplex[2].value ? 0.5 : -0.5);
      if (contracted.value < std::min(reflected.value, simplex[2].value)) {
        simplex[2] = contracted;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          simplex[i].theta = 0.5 * (simplex[i].theta + simplex[0].theta);
          simplex[i].phi = 0.5 * (simplex[i].phi + simplex[0].phi);
          simplex[i].value = eval(simplex[i].theta, simplex[i].phi);
        }
      }
    }
  }
  iterations = iter;
  std::sort(simplex.begin(), simplex.end(),
            [](const SimplexVertex& a, const SimplexVertex& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.theta != b.theta) return a.theta < b.theta;
              return a.phi < b.phi;
            });
  return simplex[0];
}

MeasurementBasis wrap_basis(double theta, double phi) {
  const double two_pi = 2.0 * kPi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > kPi) {  // (theta, phi) and (2pi - theta, phi + pi) give the same pair
    theta = two_pi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  return {theta, phi};
}

}  // namespace

DiscordResult discord(const Eigen::Matrix4cd& rho, int n_theta, int n_phi) {
  DiscordResult result;
  result.optimizer_report.grid_theta = n_theta;
  result.optimizer_report.grid_phi = n_phi;

  const Eigen::Matrix2cd rho_a = partial_trace_second(rho);
  const Eigen::Matrix2cd rho_b = partial_trace_first(rho);
  const double s_a = entropy(rho_a);
  result.mutual_information = s_a + entropy(rho_b) - entropy(rho);

  // coarse grid; strict improvement keeps the lexicographically first minimizer
  double best_value = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  double best_phi = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = kPi * (double(i) + 0.5) / double(n_theta);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * double(j) / double(n_phi);
      const double value = measured_conditional_entropy(rho, {theta, phi});
      if (value < best_value) {
        best_value = value;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }

  int iterations = 0;
  bool converged = false;
  const SimplexVertex refined =
      nelder_mead(rho, best_theta, best_phi, 0.5 * kPi / double(n_theta),
                  kPi / double(n_phi), 400, iterations, converged);
  result.optimizer_report.refine_iterations = iterations;
  result.optimizer_report.converged = converged;

  double min_ce = best_value;
  MeasurementBasis best_basis = wrap_basis(best_theta, best_phi);
  if (refined.value < min_ce) {
    min_ce = refined.value;
    best_basis = wrap_basis(refined.theta, refined.phi);
  }

  result.optimal_basis = best_basis;
  result.classical_correlation = s_a - min_ce;
  result.discord = std::max(result.mutual_information - result.classical_correlation, 0.0);
  return result;
}

}  // namespace cluster
