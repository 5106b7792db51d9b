#include "domcalc/probe.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "domcalc/errors.hpp"

namespace domcalc::probe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResolvedMargin = 100.0;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid Grid::centered(double half_width, int points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw OutOfRange("grid half-width must be positive");
  if (points < 256 || !power_of_two(points))
    throw OutOfRange("grid size must be a power of two >= 256, got " + std::to_string(points));
  Grid g;
  g.half_width = half_width;
  g.points = points;
  g.spacing = 2.0 * half_width / points;
  g.origin = -half_width;
  return g;
}

Eigen::VectorXd Grid::nodes() const {
  return Eigen::VectorXd::LinSpaced(points, origin, origin + (points - 1) * spacing);
}

std::string Family::label() const {
  char buf[64];
  if (kind == Kind::gaussian)
    std::snprintf(buf, sizeof buf, "gaussian(%g)", a);
  else
    std::snprintf(buf, sizeof buf, "hermite(%d)", k);
  return buf;
}

GridFunction sample_function(const Family& family, const Grid& grid) {
  GridFunction f{grid, Eigen::VectorXcd(grid.points), 0.0};
  const Eigen::VectorXd x = grid.nodes();
  if (family.kind == Family::Kind::gaussian) {
    if (!(family.a > 0.0) || !std::isfinite(family.a))
      throw OutOfRange("gaussian parameter must be positive");
    f.values = (-family.a * x.array().square()).exp().cast<std::complex<double>>();
    return f;
  }
  if (family.k < 0 || family.k > 12)
    throw OutOfRange("hermite index must lie in 0..12, got " + std::to_string(family.k));
  // Normalized three-term recurrence; starts from pi^{-1/4} e^{-x^2/2}.
  Eigen::ArrayXd prev = std::pow(kPi, -0.25) * (-0.5 * x.array().square()).exp();
  Eigen::ArrayXd cur = std::sqrt(2.0) * x.array() * prev;
  if (family.k == 0) cur = prev;
  for (int n = 1; n < family.k; ++n) {
    Eigen::ArrayXd next = std::sqrt(2.0 / (n + 1)) * x.array() * cur - std::sqrt(double(n) / (n + 1)) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  f.values = cur.matrix().cast<std::complex<double>>();
  return f;
}

double l2_norm(const GridFunction& f) {
  return std::sqrt(f.grid.spacing * f.values.squaredNorm());
}

GridFunction discrete_fourier_full(const GridFunction& f) {
  const int n = f.grid.points;
  const double dx = f.grid.spacing;
  const double x0 = f.grid.origin;
  const double dxi = 2.0 * kPi / (n * dx);

  // e^{-i xi_k x_j} = e^{i pi x0/dx} (-1)^j e^{-i k dxi x0} e^{-2 pi i jk/n}
  Eigen::VectorXcd alternated(n);
  for (int j = 0; j < n; ++j) alternated[j] = (j % 2 ? -1.0 : 1.0) * f.values[j];

  Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum;
  fft.fwd(spectrum, alternated);

  const double scale = dx / std::sqrt(2.0 * kPi);
  const std::complex<double> lead = std::polar(1.0, kPi * x0 / dx);
  GridFunction out;
  out.grid.half_width = kPi / dx;
  out.grid.points = n;
  out.grid.spacing = dxi;
  out.grid.origin = -kPi / dx;
  out.values.resize(n);
  for (int k = 0; k < n; ++k)
    out.values[k] = scale * lead * std::polar(1.0, -k * dxi * x0) * spectrum[k];

  const double eps = std::numeric_limits<double>::epsilon();
  out.noise_floor = 4.0 * eps * std::log2(std::max(n, 2)) * scale * f.values.cwiseAbs().sum() + f.noise_floor * scale * n;
  return out;
}

GridFunction discrete_fourier(const GridFunction& f) {
  GridFunction full = discrete_fourier_full(f);
  const double limit = f.grid.half_width;
  int lo = full.grid.points, hi = -1;
  for (int k = 0; k < full.grid.points; ++k) {
    if (std::abs(full.grid.x(k)) <= limit * (1.0 + 1e-12)) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  if (hi < lo) throw DegenerateWindow("dual grid has no nodes inside [-L, L]");
  GridFunction out;
  out.grid.half_width = limit;
  out.grid.points = hi - lo + 1;
  out.grid.spacing = full.grid.spacing;
  out.grid.origin = full.grid.x(lo);
  out.values = full.values.segment(lo, out.grid.points);
  out.noise_floor = full.noise_floor;
  return out;
}

TailFit fit_tail(const GridFunction& f) {
  const double threshold = std::max(kResolvedMargin * f.noise_floor, std::numeric_limits<double>::min());
  double reach = 0.0;
  for (int j = 0; j < f.grid.points; ++j)
    if (std::abs(f.values[j]) > threshold) reach = std::max(reach, std::abs(f.grid.x(j)));
  const double l_eff = std::min(f.grid.half_width, reach);
  TailFit fit;
  fit.window_lo = 0.5 * l_eff;
  fit.window_hi = 0.9 * l_eff;

  int total = 0;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (int j = 0; j < f.grid.points; ++j) {
    const double ax = std::abs(f.grid.x(j));
    if (ax < fit.window_lo || ax > fit.window_hi) continue;
    ++total;
    const double mag = std::abs(f.values[j]);
    if (!(mag > threshold)) continue;
    const double t = ax * ax;
    const double y = std::log(mag);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++fit.samples;
  }
  if (total == 0 || 2 * fit.samples < total || fit.samples < 3)
    throw DegenerateWindow("tail window [" + std::to_string(fit.window_lo) + ", " + std::to_string(fit.window_hi) + "] has too few resolved samples");
  const double m = fit.samples;
  const double denom = m * stt - st * st;
  if (!(std::abs(denom) > 0.0)) throw DegenerateWindow("tail window is a single abscissa");
  fit.exponent = (m * sty - st * sy) / denom;
  return fit;
}

double weighted_tail_exponent(const GridFunction& f) { return fit_tail(f).exponent; }

std::string to_string(Status s) {
  switch (s) {
    case Status::in_domain: return "in_domain";
    case Status::not_in_domain: return "not_in_domain";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

MembershipVerdict membership(const GridFunction& f, Which which) {
  if (which == Which::D_B) return membership(discrete_fourier(f), Which::D_A);
  MembershipVerdict v;
  TailFit fit;
  try {
    fit = fit_tail(f);
  } catch (const DegenerateWindow&) {
    return v;
  }
  v.tail_exponent = fit.exponent;
  v.window_lo = fit.window_lo;
  v.window_hi = fit.window_hi;
  const double gap = fit.exponent + 0.5;
  if (gap < -kThresholdEpsilon)
    v.status = Status::in_domain;
  else if (gap > kThresholdEpsilon)
    v.status = Status::not_in_domain;
  return v;
}

std::vector<Family> default_families() {
  std::vector<Family> out;
  for (double a : {0.25, 0.4, 0.5, 0.6, 1.0, 2.0}) out.push_back(Family::gaussian(a));
  for (int k = 0; k <= 4; ++k) out.push_back(Family::hermite(k));
  return out;
}

ProbeReport probe_report(const std::vector<Family>& families, const Grid& grid) {
  ProbeReport r;
  r.grid = grid;
  for (const Family& fam : families) {
    const GridFunction f = sample_function(fam, grid);
    ProbeRow row{fam, membership(f, Which::D_A), membership(f, Which::D_B)};
    if (row.in_a.status == Status::in_domain && row.in_b.status == Status::in_domain) ++r.in_both;
    r.rows.push_back(row);
  }
  return r;
}

namespace {

nlohmann::ordered_json verdict_json(const MembershipVerdict& v) {
  nlohmann::ordered_json j;
  j["status"] = to_string(v.status);
  if (v.status == Status::inconclusive && v.window_hi == 0.0)
    j["tail_exponent"] = nullptr;
  else
    j["tail_exponent"] = v.tail_exponent;
  j["window"] = {v.window_lo, v.window_hi};
  return j;
}

}  // namespace

nlohmann::ordered_json probe_json(const ProbeReport& r) {
  nlohmann::ordered_json j;
  j["grid"] = {{"L", r.grid.half_width}, {"N", r.grid.points}, {"spacing", r.grid.spacing}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const ProbeRow& row : r.rows)
    j["rows"].push_back({{"family", row.family.label()}, {"D_A", verdict_json(row.in_a)}, {"D_B", verdict_json(row.in_b)}});
  j["in_both"] = r.in_both;
  return j;
}

std::string probe_text(const ProbeReport& r) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "grid L=%g N=%d spacing=%g\n", r.grid.half_width, r.grid.points, r.grid.spacing);
  os << buf;
  std::snprintf(buf, sizeof buf, "%-16s %10s %-14s %10s %-14s\n", "family", "c_A", "D_A", "c_B", "D_B");
  os << buf;
  for (const ProbeRow& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%-16s %10.6f %-14s %10.6f %-14s\n", row.family.label().c_str(), row.in_a.tail_exponent,
                  to_string(row.in_a.status).c_str(), row.in_b.tail_exponent, to_string(row.in_b.status).c_str());
    os << buf;
  }
  os << "certified in both: " << r.in_both << "\n";
  return os.str();
}

std::string probe_csv(const ProbeReport& r) {
  std::ostringstream os;
  os << "family,param,c_A,c_B,status_A,status_B\n";
  os.precision(12);
  for (const ProbeRow& row : r.rows) {
    const bool g = row.family.kind == Family::Kind::gaussian;
    os << (g ? "gaussian" : "hermite") << ',';
    if (g)
      os << row.family.a;
    else
      os << row.family.k;
    os << ',' << row.in_a.tail_exponent << ',' << row.in_b.tail_exponent << ',' << to_string(row.in_a.status) << ','
       << to_string(row.in_b.status) << '\n';
  }
  return os.str();
}

}  // namespace domcalc::probe
