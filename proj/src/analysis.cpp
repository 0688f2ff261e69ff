#include "cluster/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cluster {

namespace {

struct Line {
  double slope;
  double intercept;
  double r_squared;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / double(n);
  const double my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Line line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (line.intercept + line.slope * x[i]);
    ss_res += r * r;
  }
  line.r_squared = (syy > 0) ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return line;
}

FitResult line_fit(const std::vector<std::pair<int, double>>& points,
                   double floor, FitKind kind) {
  std::vector<double> x, y;
  int r_min = 0, r_max = 0;
  for (const auto& [R, value] : points) {
    const double v = std::abs(value);
    if (!(v > floor)) continue;
    if (kind == FitKind::power_law && R <= 0)
      throw std::invalid_argument("power_fit: separations must be positive");
    x.push_back(kind == FitKind::exponential ? double(R) : std::log(double(R)));
    y.push_back(std::log(v));
    if (x.size() == 1) {
      r_min = r_max = R;
    } else {
      r_min = std::min(r_min, R);
      r_max = std::max(r_max, R);
    }
  }
  if (x.size() < 4)
    throw std::invalid_argument(
        "fit: fewer than 4 points above the floor; widen the window or lower "
        "the floor");
  const Line line = least_squares(x, y);
  FitResult fit;
  fit.kind = kind;
  fit.parameter = -1.0 / line.slope;
  if (kind == FitKind::power_law) fit.parameter = -line.slope;
  fit.r_squared = line.r_squared;
  fit.R_min = r_min;
  fit.R_max = r_max;
  fit.floor = floor;
  fit.n_points = static_cast<int>(x.size());
  fit.decaying = line.slope < 0.0;
  return fit;
}

std::string sanitize_flag(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r' || c == ';') c = ' ';
  return text;
}

void append_flag(std::string& flags, const std::string& flag) {
  if (!flags.empty()) flags += ';';
  flags += flag;
}

}  // namespace

FitResult exp_decay_fit(const std::vector<std::pair<int, double>>& points,
                        double floor) {
  return line_fit(points, floor, FitKind::exponential);
}

FitResult power_fit(const std::vector<std::pair<int, double>>& points,
                    double floor) {
  return line_fit(points, floor, FitKind::power_law);
}

FitResult fit_points(std::vector<std::pair<int, double>> points, FitKind kind,
                     double floor) {
  std::erase_if(points, [](const auto& p) { return p.first == 2; });
  return line_fit(points, floor, kind);
}

double entanglement_birth(int R, double B_lo, double B_hi, double tol_B,
                          double threshold, double tol) {
  if (!(B_lo < B_hi) || tol_B <= 0)
    throw std::invalid_argument("entanglement_birth: invalid bracket");
  const auto conc = [&](double B) {
    return concurrence(build_rdm(correlator_set(B, R, tol), B).rho);
  };
  double c_lo = conc(B_lo);
  double c_hi = conc(B_hi);
  if (c_lo > threshold || c_hi <= threshold)
    throw std::invalid_argument(
        "entanglement_birth: bracket does not straddle the birth point "
        "(need concurrence <= threshold at B_lo and > threshold at B_hi)");
  while (B_hi - B_lo > tol_B) {
    const double mid = 0.5 * (B_lo + B_hi);
    if (conc(mid) > threshold)
      B_hi = mid;
    else
      B_lo = mid;
  }
  return 0.5 * (B_lo + B_hi);
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
  if (config.B_values.empty() || config.R_values.empty())
    throw std::invalid_argument("sweep: empty grid");
  if (!(config.tol > 0)) throw std::invalid_argument("sweep: tol must be > 0");
  for (int R : config.R_values)
    if (R < 1) throw std::invalid_argument("sweep: separations must be >= 1");

  // One shared G window per distinct field value, sized for the largest
  // separation requested; built up front so workers only ever read.
  int r_max = 0;
  for (int R : config.R_values) r_max = std::max(r_max, R);
  struct SharedG {
    std::optional<GVector> g;
    std::string error;
  };
  std::map<double, SharedG> g_by_field;
  for (double B : config.B_values) {
    auto [it, inserted] = g_by_field.try_emplace(B);
    if (!inserted) continue;
    try {
      it->second.g = g_vector(B, r_max, config.tol);
    } catch (const std::exception& e) {
      it->second.error = sanitize_flag(e.what());
    }
  }

  const std::size_t n_b = config.B_values.size();
  const std::size_t n_r = config.R_values.size();
  std::vector<SweepRow> rows(n_b * n_r);

  const auto compute_cell = [&](std::size_t cell) {
    const double B = config.B_values[cell / n_r];
    const int R = config.R_values[cell % n_r];
    SweepRow& row = rows[cell];
    row.B = B;
    row.R = R;
    const SharedG& shared = g_by_field.at(B);
    if (!shared.g) {
      append_flag(row.flags, "error=" + shared.error);
      return;
    }
    try {
      if (R % 2 != 0) {
        // Odd separations: every two-point function factorizes, so the row
        // is the product state of the single-site marginals.
        row.z = magnetization(*shared.g);
        row.zz = row.z * row.z;
        append_flag(row.flags, "odd_r");
        return;
      }
      const CorrelatorSet cs = correlator_set(*shared.g, R);
      row.z = cs.z;
      row.xx = cs.xx;
      row.yy = cs.yy;
      row.zz = cs.zz;
      const MeasureSet& m = config.measures;
      if (!(m.mi || m.discord || m.concurrence || m.eof)) return;
      const TwoSiteRDM state = build_rdm(cs, B);
      if (m.discord) {
        const DiscordResult dr = discord(state.rho);
        row.discord = dr.discord;
        row.mi = dr.mutual_information;
        if (!dr.optimizer_report.converged)
          append_flag(row.flags, "discord_unconverged");
      } else if (m.mi) {
        row.mi = mutual_information(state.rho);
      }
      if (m.concurrence || m.eof) {
        const double c = concurrence(state.rho);
        if (m.concurrence) row.concurrence = c;
        if (m.eof) row.eof = eof_from_concurrence(c);
      }
    } catch (const std::exception& e) {
      append_flag(row.flags, "error=" + sanitize_flag(e.what()));
    }
  };

  const std::size_t n_cells = rows.size();
  const int n_workers =
      std::min<std::size_t>(resolve_jobs(config.jobs), n_cells);
  if (n_workers <= 1) {
    for (std::size_t cell = 0; cell < n_cells; ++cell) compute_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w)
      workers.emplace_back([&] {
        for (std::size_t cell = next.fetch_add(1); cell < n_cells;
             cell = next.fetch_add(1))
          compute_cell(cell);
      });
    for (std::thread& t : workers) t.join();
  }
  return rows;
}

std::vector<std::pair<int, double>> measure_points(
    const std::vector<SweepRow>& rows, double B, Measure measure) {
  std::vector<std::pair<int, double>> points;
  for (const SweepRow& row : rows) {
    if (std::abs(row.B - B) > 1e-12) continue;
    if (row.R % 2 != 0 || row.flags.find("error=") != std::string::npos)
      continue;
    double v = 0.0;
    switch (measure) {
      case Measure::z: v = row.z; break;
      case Measure::xx: v = row.xx; break;
      case Measure::yy: v = row.yy; break;
      case Measure::zz_connected: v = row.zz - row.z * row.z; break;
      case Measure::mi: v = row.mi; break;
      case Measure::discord: v = row.discord; break;
      case Measure::concurrence: v = row.concurrence; break;
      case Measure::eof: v = row.eof; break;
    }
    points.emplace_back(row.R, v);
  }
  return points;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  const auto parse_one = [](const std::string& token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("grid: cannot parse '" + token + "'");
    }
    if (used != token.size())
      throw std::invalid_argument("grid: cannot parse '" + token + "'");
    return value;
  };
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    std::string lo_s, hi_s, step_s;
    if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
        !std::getline(in, step_s) || step_s.find(':') != std::string::npos)
      throw std::invalid_argument("grid: expected lo:hi:step in '" + text +
                                  "'");
    const double lo = parse_one(lo_s);
    const double hi = parse_one(hi_s);
    const double step = parse_one(step_s);
    if (!(step > 0) || hi < lo)
      throw std::invalid_argument("grid: need hi >= lo and step > 0 in '" +
                                  text + "'");
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) values.push_back(lo + i * step);
    return values;
  }
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ','))
    if (!token.empty()) values.push_back(parse_one(token));
  if (values.empty()) throw std::invalid_argument("grid: empty spec");
  return values;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> values;
  for (double v : parse_grid(text)) {
    const double rounded = std::round(v);
    if (std::abs(v - rounded) > 1e-9)
      throw std::invalid_argument("grid: expected integers in '" + text + "'");
    values.push_back(static_cast<int>(rounded));
  }
  return values;
}

MeasureSet parse_measures(const std::string& text) {
  if (text == "all" || text.empty()) return MeasureSet{};
  MeasureSet m;
  m.mi = m.discord = m.concurrence = m.eof = false;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token == "mi")
      m.mi = true;
    else if (token == "discord")
      m.discord = true;
    else if (token == "concurrence")
      m.concurrence = true;
    else if (token == "eof")
      m.eof = true;
    else if (token == "correlators")
      ;  // always computed
    else
      throw std::invalid_argument("measures: unknown measure '" + token + "'");
  }
  return m;
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace cluster
