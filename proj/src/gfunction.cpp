#include "cluster/gfunction.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "cluster/model.hpp"
#include "cluster/quadrature.hpp"

namespace cluster {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex g_cache_mutex;
std::map<std::tuple<double, int, double>, std::pair<double, double>> g_cache;

// value + error estimate, no caching
std::pair<double, double> g_integral_raw(double B, int r, double tol) {
  const double R = static_cast<double>(r);
  const auto integrand = [B, R](double x) {
    const double eps = std::sqrt(1.0 + B * B - 2.0 * B * std::cos(x));
    return (std::cos(0.5 * R * x) * (B - std::cos(x)) -
            std::sin(0.5 * R * x) * std::sin(x)) /
           eps;
  };
  const std::array<double, 3> breaks = {0.0, kPi, 2.0 * kPi};
  const auto res = quadrature::integrate_split(integrand, breaks, tol);
  if (!res.converged)
    throw QuadratureError("g_integral: requested tolerance not reached", res.error);
  return {-res.value / (2.0 * kPi), res.error / (2.0 * kPi)};
}

}  // namespace

double g_integral(double B, int r, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("g_integral: tol must be positive");
  const auto key = std::make_tuple(B, r, tol);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    const auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second.first;
  }
  const auto computed = g_integral_raw(B, r, tol);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  const auto [it, inserted] = g_cache.emplace(key, computed);
  return it->second.first;  // first writer wins; identical anyway
}

std::complex<double> g_integral_unreduced(double B, int r, double tol) {
  const double R = static_cast<double>(r);
  const auto real_part = [B, R](double x) {
    const double eps = std::sqrt(1.0 + B * B - 2.0 * B * std::cos(x));
    return (std::cos(0.5 * R * x) * (B - std::cos(x)) -
            std::sin(0.5 * R * x) * std::sin(x)) /
           eps;
  };
  const auto imag_part = [B, R](double x) {
    const double eps = std::sqrt(1.0 + B * B - 2.0 * B * std::cos(x));
    return (std::sin(0.5 * R * x) * (B - std::cos(x)) +
            std::cos(0.5 * R * x) * std::sin(x)) /
           eps;
  };
  const std::array<double, 5> breaks = {-2.0 * kPi, -kPi, 0.0, kPi, 2.0 * kPi};
  const auto re = quadrature::integrate_split(real_part, breaks, tol);
  const auto im = quadrature::integrate_split(imag_part, breaks, tol);
  if (!re.converged || !im.converged)
    throw QuadratureError("g_integral_unreduced: tolerance not reached",
                          re.error + im.error);
  return {-re.value / (4.0 * kPi), -im.value / (4.0 * kPi)};
}

double g_finite_sum(double B, int r, int N) {
  if (N < 8 || N % 2 != 0)
    throw std::invalid_argument("g_finite_sum: N must be even and >= 8");
  std::complex<double> sum = 0.0;
  for (int p = -N / 2; p < N / 2; ++p) {
    const double k = 2.0 * kPi * double(p) / double(N);
    // bogoliubov_phase throws DegeneratePointError at a gap-closing momentum
    const std::complex<double> phase = bogoliubov_phase(B, k);
    sum += std::exp(std::complex<double>(0.0, k * double(r))) * phase;
  }
  return -sum.real() / double(N);
}

GVector g_vector(double B, int r_max, double tol) {
  if (r_max < 1) throw std::invalid_argument("g_vector: r_max must be >= 1");
  GVector gv;
  gv.B = B;
  gv.r_max = r_max;
  gv.tol = tol;
  gv.values.resize(static_cast<std::size_t>(2 * r_max + 1));
  for (int r = -r_max; r <= r_max; ++r) {
    gv.values[static_cast<std::size_t>(r + r_max)] = g_integral(B, r, tol);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    const auto it = g_cache.find(std::make_tuple(B, r, tol));
    if (it != g_cache.end()) gv.est_error = std::max(gv.est_error, it->second.second);
  }
  return gv;
}

void g_cache_clear() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.clear();
}

}  // namespace cluster
