#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "domcalc/errors.hpp"
#include "domcalc/probe.hpp"

using namespace domcalc;
using namespace domcalc::probe;

namespace {

const Grid kGrid = Grid::centered(kDefaultHalfWidth, kDefaultPoints);

// Closed form of the unitary transform of e^{-a x^2}.
double gaussian_hat(double a, double xi) { return std::exp(-xi * xi / (4 * a)) / std::sqrt(2 * a); }

double relative_l2_to(const GridFunction& f, const std::function<double(double)>& g) {
  double num = 0, den = 0;
  for (int k = 0; k < f.grid.points; ++k) {
    const double ref = g(f.grid.x(k));
    num += std::norm(f.values[k] - ref);
    den += ref * ref;
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("grid and sampling") {
  CHECK(kGrid.spacing == doctest::Approx(2.0 * 16 / 4096));
  CHECK(kGrid.x(0) == -16.0);
  CHECK_THROWS_AS(Grid::centered(16, 1000), OutOfRange);
  CHECK_THROWS_AS(Grid::centered(16, 128), OutOfRange);
  CHECK_THROWS_AS(Grid::centered(-1, 4096), OutOfRange);
  CHECK_THROWS_AS(sample_function(Family::gaussian(0), kGrid), OutOfRange);
  CHECK_THROWS_AS(sample_function(Family::hermite(13), kGrid), OutOfRange);
  CHECK_THROWS_AS(sample_function(Family::hermite(-1), kGrid), OutOfRange);
}

TEST_CASE("hermite functions are orthonormal") {
  std::vector<GridFunction> h;
  for (int k = 0; k <= 12; ++k) h.push_back(sample_function(Family::hermite(k), kGrid));
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j) {
      const std::complex<double> ip = kGrid.spacing * h[i].values.dot(h[j].values);
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("transform of gaussians") {
  const GridFunction g1 = discrete_fourier(sample_function(Family::gaussian(1.0), kGrid));
  CHECK(relative_l2_to(g1, [](double xi) { return gaussian_hat(1.0, xi); }) < 1e-8);

  const GridFunction half = sample_function(Family::gaussian(0.5), kGrid);
  const GridFunction half_hat = discrete_fourier(half);
  CHECK(relative_l2_to(half_hat, [](double xi) { return std::exp(-xi * xi / 2); }) < 1e-8);
  CHECK(half_hat.grid.x(0) >= -kGrid.half_width);
}

TEST_CASE("hermite functions are eigenfunctions") {
  // F h_k = (-i)^k h_k
  for (int k = 0; k <= 4; ++k) {
    const GridFunction hat = discrete_fourier(sample_function(Family::hermite(k), kGrid));
    const GridFunction ref = sample_function(Family::hermite(k), hat.grid);
    const std::complex<double> phase = std::pow(std::complex<double>(0, -1), k);
    CHECK((hat.values - phase * ref.values).norm() / ref.values.norm() < 1e-9);
  }
}

TEST_CASE("unitarity on band-limited functions") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> a(0.3, 1.0), shift(-4, 4), freq(-3, 3), amp(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    GridFunction f{kGrid, Eigen::VectorXcd::Zero(kGrid.points), 0.0};
    for (int term = 0; term < 4; ++term) {
      const double aa = a(rng), x0 = shift(rng), w = freq(rng);
      const std::complex<double> c(amp(rng), amp(rng));
      for (int j = 0; j < kGrid.points; ++j) {
        const double x = kGrid.x(j);
        f.values[j] += c * std::exp(-aa * (x - x0) * (x - x0)) * std::polar(1.0, w * x);
      }
    }
    const double n0 = l2_norm(f);
    CHECK(std::abs(l2_norm(discrete_fourier_full(f)) - n0) < 1e-9 * n0);
    CHECK(std::abs(l2_norm(discrete_fourier(f)) - n0) < 1e-9 * n0);
  }
}

TEST_CASE("tail exponents") {
  for (double a : {0.25, 0.4, 0.5, 0.6, 1.0, 2.0}) {
    CAPTURE(a);
    CHECK(std::abs(weighted_tail_exponent(sample_function(Family::gaussian(a), kGrid)) + a) < 1e-3);
  }
  CHECK(std::abs(weighted_tail_exponent(sample_function(Family::hermite(0), kGrid)) + 0.5) < 1e-6);

  GridFunction zero{kGrid, Eigen::VectorXcd::Zero(kGrid.points), 0.0};
  CHECK_THROWS_AS(weighted_tail_exponent(zero), DegenerateWindow);
  // an unresolved window is inconclusive, never a certificate
  CHECK(membership(zero, Which::D_A).status == Status::inconclusive);
}

TEST_CASE("membership examples") {
  auto status = [](Family f, Which w) { return membership(sample_function(f, kGrid), w).status; };
  CHECK(status(Family::gaussian(1.0), Which::D_A) == Status::in_domain);
  CHECK(status(Family::gaussian(1.0), Which::D_B) == Status::not_in_domain);
  CHECK(status(Family::gaussian(0.25), Which::D_A) == Status::not_in_domain);
  CHECK(status(Family::gaussian(0.25), Which::D_B) == Status::in_domain);
  CHECK(status(Family::gaussian(0.5), Which::D_A) == Status::inconclusive);
  CHECK(status(Family::gaussian(0.5), Which::D_B) == Status::inconclusive);
  for (int k = 1; k <= 4; ++k) CHECK(status(Family::hermite(k), Which::D_A) == Status::not_in_domain);
}

TEST_CASE("D_B is D_A of the transform") {
  for (const Family& fam : default_families()) {
    const GridFunction f = sample_function(fam, kGrid);
    CHECK(membership(f, Which::D_B).status == membership(discrete_fourier(f), Which::D_A).status);
  }
}

TEST_CASE("report") {
  ProbeReport r = probe_report(default_families());
  CHECK(r.in_both == 0);
  CHECK(r.rows.size() == default_families().size());
  auto j = probe_json(r);
  CHECK(j["rows"].size() == r.rows.size());
  CHECK(probe_csv(r).rfind("family,param,c_A,c_B,status_A,status_B\n", 0) == 0);
  CHECK(probe_text(r).find("gaussian(0.25)") != std::string::npos);
}
