#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "cluster/analysis.hpp"

using namespace cluster;

namespace {

std::vector<std::pair<int, double>> exp_points(double xi, double noise = 0.0) {
  std::vector<std::pair<int, double>> pts;
  double wiggle = noise;
  for (int R = 4; R <= 40; R += 2) {
    pts.emplace_back(R, std::exp(-double(R) / xi) * (1.0 + wiggle));
    wiggle = -wiggle;  // deterministic alternating perturbation
  }
  return pts;
}

struct DecaySeries {
  std::vector<std::pair<int, double>> discord_pts, mi_pts, zz_pts;
};

// one shared G window per field, exactly as the production sweep does it
DecaySeries decay_series(double B, int r_max) {
  DecaySeries out;
  const GVector g = g_vector(B, r_max);
  for (int R = 2; R <= r_max; R += 2) {
    const CorrelatorSet c = correlator_set(g, R);
    const DiscordResult d = discord(build_rdm(c, B).rho);
    out.discord_pts.emplace_back(R, d.discord);
    out.mi_pts.emplace_back(R, d.mutual_information);
    out.zz_pts.emplace_back(R, c.zz - c.z * c.z);
  }
  return out;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("exponential fit recovers a synthetic decay length") {
  const FitResult clean = exp_decay_fit(exp_points(3.0));
  CHECK(clean.parameter == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(clean.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clean.decaying);
  CHECK(clean.n_points == 19);
  const FitResult noisy = exp_decay_fit(exp_points(3.0, 1e-4));
  CHECK(noisy.parameter == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("power fit recovers a synthetic exponent") {
  std::vector<std::pair<int, double>> pts;
  for (int R = 4; R <= 60; R += 2) pts.emplace_back(R, 7.0 * std::pow(R, -2.0));
  const FitResult fit = power_fit(pts);
  CHECK(fit.parameter == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("growing data is flagged, not fitted blind") {
  std::vector<std::pair<int, double>> pts;
  for (int R = 4; R <= 20; R += 2) pts.emplace_back(R, std::exp(double(R) / 5.0));
  const FitResult fit = exp_decay_fit(pts);
  CHECK_FALSE(fit.decaying);
}

TEST_CASE("floor filtering and the minimum point count") {
  // points at or below the floor are discarded before fitting
  std::vector<std::pair<int, double>> pts = exp_points(3.0);
  pts.emplace_back(100, 1e-15);
  pts.emplace_back(102, 0.0);
  const FitResult fit = exp_decay_fit(pts, 1e-12);
  CHECK(fit.parameter == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(fit.R_max == 40);
  CHECK(fit.n_points == 19);
  std::vector<std::pair<int, double>> few = {{2, 1.0}, {4, 0.5}, {6, 0.25}};
  CHECK_THROWS_AS(exp_decay_fit(few), std::invalid_argument);
}

TEST_CASE("fit_points drops the R = 2 lattice-correction point") {
  std::vector<std::pair<int, double>> pts = exp_points(3.0);
  pts.insert(pts.begin(), {2, 123.0});  // wildly off the asymptotic law
  const FitResult fit = fit_points(pts, FitKind::exponential);
  CHECK(fit.R_min == 4);
  CHECK(fit.parameter == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("entanglement birth field") {
  const double b_e = entanglement_birth(2, 0.5, 1.0);
  CHECK(b_e == doctest::Approx(0.976688385).epsilon(1e-4));
  CHECK(std::abs(b_e - 0.9767) < 0.01);
  // concurrence grows monotonically just past the birth point
  double prev = -1.0;
  for (double b : {0.98, 0.99, 1.0}) {
    const double c = concurrence(build_rdm(correlator_set(b, 2), b).rho);
    CHECK(c >= prev);
    prev = c;
  }
  // at R = 4 there is nothing to bracket: concurrence stays zero
  CHECK_THROWS_AS(entanglement_birth(4, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("sweep table layout, odd rows, and the cluster-point column of zeros") {
  SweepConfig config;
  config.B_values = {0.0, 2.0};
  config.R_values = {2, 3, 4};
  const std::vector<SweepRow> rows = sweep(config);
  REQUIRE(rows.size() == 6);
  // B-major order with R ascending inside each block
  for (int i = 0; i < 6; ++i) {
    CHECK(rows[i].B == (i < 3 ? 0.0 : 2.0));
    CHECK(rows[i].R == (i % 3) + 2);
  }
  for (const SweepRow& row : rows) {
    if (row.R % 2 == 1) {
      CHECK(row.flags == "odd_r");
      CHECK(row.zz == doctest::Approx(row.z * row.z).epsilon(1e-12));
      CHECK(row.xx == 0.0);
      CHECK(row.yy == 0.0);
      CHECK(row.mi == 0.0);
      CHECK(row.discord == 0.0);
    } else {
      CHECK(row.flags.empty());
    }
    if (row.B == 0.0) {
      // the cluster point carries no two-point correlations at all
      CHECK(std::abs(row.z) < 1e-8);
      CHECK(std::abs(row.xx) < 1e-8);
      CHECK(std::abs(row.mi) < 1e-8);
      CHECK(std::abs(row.discord) < 1e-8);
      CHECK(row.eof == 0.0);
    }
  }
}

TEST_CASE("sweep output is independent of the worker count") {
  SweepConfig config;
  config.B_values = {0.5, 1.0, 1.5};
  config.R_values = {2, 3, 4, 6};
  config.jobs = 1;
  const std::vector<SweepRow> serial = sweep(config);
  config.jobs = 4;
  const std::vector<SweepRow> parallel = sweep(config);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].discord == parallel[i].discord);  // bit-identical
    CHECK(serial[i].mi == parallel[i].mi);
    CHECK(serial[i].zz == parallel[i].zz);
    CHECK(serial[i].flags == parallel[i].flags);
  }
}

TEST_CASE("deselected measures stay zero and cost nothing") {
  SweepConfig config;
  config.B_values = {2.0};
  config.R_values = {2};
  config.measures = MeasureSet{false, false, true, true};  // concurrence + eof
  const std::vector<SweepRow> rows = sweep(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mi == 0.0);
  CHECK(rows[0].discord == 0.0);
  CHECK(rows[0].concurrence > 0.1);
  CHECK(rows[0].eof > 0.0);
  CHECK(rows[0].zz == doctest::Approx(0.931004621718).epsilon(1e-9));
}

TEST_CASE("measure_points filters odd rows and forms the connected zz") {
  SweepConfig config;
  config.B_values = {2.0};
  config.R_values = {2, 3, 4};
  const std::vector<SweepRow> rows = sweep(config);
  const auto zzc = measure_points(rows, 2.0, Measure::zz_connected);
  REQUIRE(zzc.size() == 2);
  CHECK(zzc[0].first == 2);
  CHECK(zzc[1].first == 4);
  CHECK(zzc[0].second ==
        doctest::Approx(rows[0].zz - rows[0].z * rows[0].z).epsilon(1e-14));
  CHECK(measure_points(rows, 0.5, Measure::mi).empty());  // no such B block
}

TEST_CASE("off-critical decay lengths sit at their frozen values") {
  struct Expect {
    double B, xi_d, xi_mi, xi_zz;
  };
  // decay lengths peak toward the critical point from both sides
  const Expect table[] = {{0.3, 0.7589, 0.7692, 0.7068},
                          {0.5, 1.3105, 1.3226, 1.1984},
                          {2.0, 1.3459, 1.3380, 1.1837}};
  for (const Expect& e : table) {
    CAPTURE(e.B);
    const DecaySeries series = decay_series(e.B, 40);
    const FitResult fd = fit_points(series.discord_pts, FitKind::exponential);
    const FitResult fm = fit_points(series.mi_pts, FitKind::exponential);
    const FitResult fz = fit_points(series.zz_pts, FitKind::exponential);
    for (const FitResult* f : {&fd, &fm, &fz}) {
      CHECK(f->r_squared > 0.995);
      CHECK(f->decaying);
      CHECK(f->R_min == 4);
    }
    CHECK(std::abs(fd.parameter - e.xi_d) < 0.02);
    CHECK(std::abs(fm.parameter - e.xi_mi) < 0.02);
    CHECK(std::abs(fz.parameter - e.xi_zz) < 0.02);
  }
}

TEST_CASE("critical exponents are stable against the fit window") {
  const DecaySeries series = decay_series(1.0, 60);
  const FitResult fz = fit_points(series.zz_pts, FitKind::power_law);
  const FitResult fd = fit_points(series.discord_pts, FitKind::power_law);
  const FitResult fm = fit_points(series.mi_pts, FitKind::power_law);
  CHECK(fz.parameter == doctest::Approx(2.01376016927).epsilon(1e-6));
  CHECK(fd.parameter == doctest::Approx(1.01350445141).epsilon(1e-6));
  CHECK(fm.parameter == doctest::Approx(1.00482786823).epsilon(1e-6));
  for (const FitResult* f : {&fz, &fd, &fm}) CHECK(f->r_squared > 0.999);
  // halving the window moves each exponent by far less than the error bar
  const DecaySeries half = decay_series(1.0, 30);
  CHECK(std::abs(fit_points(half.zz_pts, FitKind::power_law).parameter -
                 fz.parameter) < 0.05);
  CHECK(std::abs(fit_points(half.discord_pts, FitKind::power_law).parameter -
                 fd.parameter) < 0.05);
  CHECK(std::abs(fit_points(half.mi_pts, FitKind::power_law).parameter -
                 fm.parameter) < 0.05);
}

TEST_CASE("grid parsing: ranges, lists, and rejects") {
  const std::vector<double> r = parse_grid("0:2:0.5");
  REQUIRE(r.size() == 5);
  CHECK(r.front() == 0.0);
  CHECK(r.back() == 2.0);
  CHECK(r[2] == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> list = parse_grid("1,2,3.5");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == 3.5);
  const std::vector<int> ri = parse_int_grid("2:60:2");
  REQUIRE(ri.size() == 30);
  CHECK(ri.front() == 2);
  CHECK(ri.back() == 60);
  CHECK(parse_int_grid("7") == std::vector<int>{7});
  CHECK_THROWS_AS(parse_grid("1:2:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_grid("2.5"), std::invalid_argument);
}

TEST_CASE("measure selection strings") {
  const MeasureSet all = parse_measures("all");
  CHECK(all.mi);
  CHECK(all.discord);
  CHECK(all.concurrence);
  CHECK(all.eof);
  const MeasureSet some = parse_measures("mi,eof");
  CHECK(some.mi);
  CHECK_FALSE(some.discord);
  CHECK_FALSE(some.concurrence);
  CHECK(some.eof);
  CHECK_THROWS_AS(parse_measures("bogus"), std::invalid_argument);
  CHECK(resolve_jobs(3) == 3);
  CHECK(resolve_jobs(0) >= 1);
}

}  // TEST_SUITE
