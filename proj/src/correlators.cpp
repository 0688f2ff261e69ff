#include "cluster/correlators.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cluster {

namespace {

void require_even_separation(int R) {
  if (R < 2 || R % 2 != 0)
    throw std::invalid_argument(
        "correlators: separation must be even and >= 2 (odd separations "
        "vanish by sublattice decoupling)");
}

}  // namespace

double LogDet::value() const {
  if (sign == 0) return 0.0;
  // exp underflows to 0 for log_abs below roughly -745; that is the correct
  // limit for a correlator smaller than the smallest double.
  return double(sign) * std::exp(log_abs);
}

LogDet logdet(const Eigen::MatrixXd& m) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const auto& u_diag = lu.matrixLU().diagonal();
  double log_abs = 0.0;
  int sign = (lu.permutationP().determinant() > 0) ? 1 : -1;
  for (Eigen::Index i = 0; i < u_diag.size(); ++i) {
    const double d = u_diag[i];
    if (d == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    log_abs += std::log(std::abs(d));
    if (d < 0.0) sign = -sign;
  }
  return {log_abs, sign};
}

double magnetization(const GVector& g) {
  return kSignConvention * g.at(0);
}

double zz_correlator(const GVector& g, int R) {
  require_even_separation(R);
  const double g0 = g.at(0);
  return g0 * g0 - g.at(R) * g.at(-R);
}

namespace {

// Toeplitz determinant with entries G_{j-k+offset}.
double toeplitz_correlator(const GVector& g, int R, int offset) {
  Eigen::MatrixXd m(R, R);
  for (int j = 0; j < R; ++j)
    for (int k = 0; k < R; ++k) m(j, k) = g.at(j - k + offset);
  return logdet(m).value();
}

}  // namespace

double xx_correlator(const GVector& g, int R) {
  require_even_separation(R);
  return toeplitz_correlator(g, R, +1);  // window [-R+2, R]
}

double yy_correlator(const GVector& g, int R) {
  require_even_separation(R);
  return toeplitz_correlator(g, R, -1);  // window [-R, R-2]
}

double string_correlator(const GVector& g, int n) {
  if (n < 1) throw std::invalid_argument("string_correlator: n must be >= 1");
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = g.at(2 * (k - j));
  const double det = logdet(m).value();
  return (n % 2 == 0) ? det : kSignConvention * det;
}

CorrelatorSet correlator_set(const GVector& g, int R) {
  require_even_separation(R);
  CorrelatorSet c;
  c.R = R;
  c.z = magnetization(g);
  c.zz = zz_correlator(g, R);
  c.xx = xx_correlator(g, R);
  c.yy = yy_correlator(g, R);
  return c;
}

CorrelatorSet correlator_set(double B, int R, double tol) {
  require_even_separation(R);
  return correlator_set(g_vector(B, R, tol), R);
}

}  // namespace cluster
