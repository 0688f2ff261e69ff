#pragma once

#include <stdexcept>
#include <string>

namespace cluster {

// Quadrature failed to reach the requested tolerance; carries the error
// estimate that was actually achieved so callers can decide what to do.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double achieved_error)
      : std::runtime_error(msg), achieved(achieved_error) {}
  double achieved;
};

// A momentum hit a gap-closing point (quasiparticle energy below 1e-14), so
// the Bogoliubov phase e^{2i theta_k} is undefined there.
struct DegeneratePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A correlator asked for G entries outside the window a GVector holds.
struct WindowError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Exact-diagonalization size guard (dense 2^N x 2^N storage).
struct SizeGuardError : std::length_error {
  using std::length_error::length_error;
};

// A reconstructed density matrix failed positivity beyond tolerance,
// signalling an upstream correlator accuracy problem.
struct PhysicalityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cluster
