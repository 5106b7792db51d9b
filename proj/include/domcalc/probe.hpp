#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace domcalc::probe {

/// Uniform grid x_j = origin + j * spacing, j < points, covering [-L, L].
struct Grid {
  double half_width = 16.0;
  int points = 4096;
  double spacing = 2.0 * 16.0 / 4096;
  double origin = -16.0;

  /// Nodes -L + j * 2L/N. N must be a power of two >= 256; throws OutOfRange.
  static Grid centered(double half_width, int points);
  double x(int j) const { return origin + j * spacing; }
  Eigen::VectorXd nodes() const;
};

inline constexpr double kDefaultHalfWidth = 16.0;
inline constexpr int kDefaultPoints = 4096;
inline constexpr double kThresholdEpsilon = 1e-3;

/// Samples on a grid. noise_floor is an absolute error bound on the values
/// (0 for exact samples, the transform's roundoff bound after a transform).
struct GridFunction {
  Grid grid;
  Eigen::VectorXcd values;
  double noise_floor = 0.0;
};

struct Family {
  enum class Kind { gaussian, hermite };
  Kind kind = Kind::gaussian;
  double a = 1.0;  // gaussian: e^{-a x^2}
  int k = 0;       // hermite: h_k

  static Family gaussian(double a) { return {Kind::gaussian, a, 0}; }
  static Family hermite(int k) { return {Kind::hermite, 0.0, k}; }
  std::string label() const;
};

/// Throws OutOfRange unless a > 0 and 0 <= k <= 12.
GridFunction sample_function(const Family& family, const Grid& grid);

/// Discrete L^2 norm sqrt(spacing * sum |f_j|^2).
double l2_norm(const GridFunction& f);

/// Unitary transform (2 pi)^{-1/2} \int f(x) e^{-i xi x} dx on the dual grid
/// xi_k = -pi/Delta + k 2pi/(N Delta), restricted to |xi| <= L.
GridFunction discrete_fourier(const GridFunction& f);
/// Same transform without the restriction (full dual grid of N points).
GridFunction discrete_fourier_full(const GridFunction& f);

struct TailFit {
  double exponent = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  int samples = 0;
};

/// Least-squares slope of log|f| against x^2 over 0.5 L_eff <= |x| <= 0.9 L_eff,
/// where L_eff is L cut back to the resolved extent of f. Throws
/// DegenerateWindow if more than half of the window is unresolved.
TailFit fit_tail(const GridFunction& f);
double weighted_tail_exponent(const GridFunction& f);

enum class Status { in_domain, not_in_domain, inconclusive };
enum class Which { D_A, D_B };

std::string to_string(Status s);

struct MembershipVerdict {
  Status status = Status::inconclusive;
  double tail_exponent = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// D_A: e^{x^2/2} f in L^2; D_B: the same test on the transform of f.
MembershipVerdict membership(const GridFunction& f, Which which);

struct ProbeRow {
  Family family;
  MembershipVerdict in_a;
  MembershipVerdict in_b;
};

struct ProbeReport {
  Grid grid;
  std::vector<ProbeRow> rows;
  int in_both = 0;
};

std::vector<Family> default_families();
ProbeReport probe_report(const std::vector<Family>& families, const Grid& grid = Grid::centered(kDefaultHalfWidth, kDefaultPoints));

nlohmann::ordered_json probe_json(const ProbeReport& r);
std::string probe_text(const ProbeReport& r);
/// family, a-or-k, c_A, c_B, status_A, status_B
std::string probe_csv(const ProbeReport& r);

}  // namespace domcalc::probe
