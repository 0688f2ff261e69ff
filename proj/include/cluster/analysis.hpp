#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cluster/correlators.hpp"
#include "cluster/qinfo.hpp"
#include "cluster/rdm.hpp"

// Fits and scans over the (B, R) plane: exponential decay lengths away from
// criticality, power-law exponents at B = 1, the entanglement birth field,
// and the sweep driver that produces the full correlation table.

namespace cluster {

enum class FitKind { exponential, power_law };

struct FitResult {
  FitKind kind = FitKind::exponential;
  double parameter = 0.0;  // decay length xi (sites) or power-law exponent
  double r_squared = 0.0;
  int R_min = 0;           // fit window actually used, after filtering
  int R_max = 0;
  double floor = 0.0;      // values with |v| <= floor were discarded
  int n_points = 0;
  bool decaying = true;    // false flags a non-decaying (positive-slope) fit
};

// Least-squares line on (R, ln|value|); decay length = -1/slope.
// Throws std::invalid_argument if fewer than 4 points survive the floor.
FitResult exp_decay_fit(const std::vector<std::pair<int, double>>& points,
                        double floor = 1e-12);

// Least-squares line on (ln R, ln|value|); exponent = -slope.
FitResult power_fit(const std::vector<std::pair<int, double>>& points,
                    double floor = 1e-12);

// Dispatch to the fit matching `kind`, first dropping R = 2: the shortest
// separation carries visible lattice corrections in both regimes and would
// otherwise bias every window that includes it.
FitResult fit_points(std::vector<std::pair<int, double>> points, FitKind kind,
                     double floor = 1e-12);

// Field at which nearest-even-neighbour entanglement switches on, located by
// bisection of concurrence(build_rdm(B, R)) against `threshold`.  Requires
// concurrence <= threshold at B_lo and > threshold at B_hi.
double entanglement_birth(int R, double B_lo, double B_hi, double tol_B = 1e-5,
                          double threshold = 1e-10, double tol = 1e-10);

// Which of the derived quantum-information columns a sweep evaluates; the
// determinant correlators (z, xx, yy, zz) are always computed since every
// selected measure needs the density matrix anyway.  Discord is the only
// genuinely expensive column (basis optimization per cell).
struct MeasureSet {
  bool mi = true;
  bool discord = true;
  bool concurrence = true;
  bool eof = true;
};

struct SweepConfig {
  std::vector<double> B_values;
  std::vector<int> R_values;
  MeasureSet measures;
  double tol = 1e-10;
  int jobs = 0;  // 0: one worker per hardware thread
};

struct SweepRow {
  double B = 0.0;
  int R = 0;
  double z = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;
  double mi = 0.0;
  double discord = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  std::string flags;  // semicolon-joined; empty on a clean even-R cell
};

// Dense (B, R) table in B-major order.  Odd separations vanish structurally,
// so odd-R rows carry the actual magnetization, zz = z^2, zeros elsewhere,
// and the flag "odd_r".  Per-cell numerical failures are recorded in-row
// (flag "error=...") rather than aborting the sweep.  Output is independent
// of the worker count.
std::vector<SweepRow> sweep(const SweepConfig& config);

enum class Measure { z, xx, yy, zz_connected, mi, discord, concurrence, eof };

// Extract (R, value) pairs for one B from a sweep table, skipping odd-R and
// errored rows.  zz_connected is zz - z^2, the piece that actually decays.
std::vector<std::pair<int, double>> measure_points(
    const std::vector<SweepRow>& rows, double B, Measure measure);

// Grid parsing shared with the CLI: "lo:hi:step" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_grid(const std::string& text);
MeasureSet parse_measures(const std::string& text);

int resolve_jobs(int jobs);

}  // namespace cluster
