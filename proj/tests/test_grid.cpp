#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "repstate/densities.hpp"
#include "repstate/grid.hpp"

using namespace repstate;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<double, double>> gaussian_samples(double span, int points, double sigma) {
  std::vector<std::pair<double, double>> s(points);
  double h = 2.0 * span / (points - 1);
  for (int i = 0; i < points; ++i) {
    double x = (i - (points - 1) / 2) * h;
    s[i] = {x, std::exp(-x * x / (2 * sigma * sigma)) / (sigma * std::sqrt(2 * kPi))};
  }
  return s;
}

GridDensity gauss(double mass, int points = 2001, double sigma = 1.0) {
  return load_density(gaussian_samples(8.0, points, sigma), mass);
}

double normal_cdf(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

}  // namespace

TEST_CASE("load_density rescales samples to the target mass") {
  auto samples = gaussian_samples(8.0, 501, 1.0);
  // raw mass deliberately off by a known factor
  for (auto& [x, v] : samples) v *= 0.999;
  GridDensity rho = load_density(samples, 1.0);
  REQUIRE(rho.mass() == 1.0);
  REQUIRE(std::abs(trapezoid(rho.values(), rho.spacing()) - 1.0) <= 1e-12);
  // values scaled by 1/raw
  double raw = rho.raw_mass();
  REQUIRE(rho.values()[250] == Approx(samples[250].second / raw).epsilon(1e-14));
}

TEST_CASE("load_density is the identity when the target equals the raw mass") {
  auto samples = gaussian_samples(8.0, 501, 1.0);
  std::vector<double> vals;
  for (auto& [x, v] : samples) vals.push_back(v);
  double raw = trapezoid(vals, samples[1].first - samples[0].first);
  GridDensity rho = load_density(samples, raw);
  for (int i = 0; i < 501; ++i) REQUIRE(rho.values()[i] == samples[i].second);
}

TEST_CASE("load_density mass-3 Gaussian matches the analytic integral") {
  GridDensity rho = gauss(3.0);
  REQUIRE(std::abs(trapezoid(rho.values(), rho.spacing()) - 3.0) <= 1e-10);
  REQUIRE(rho.mass() == 3.0);
  // truncation deficit of the standard normal on [-8, 8] is ~1.2e-15
  REQUIRE(std::abs(rho.raw_mass() - 1.0) <= 1e-6);
}

TEST_CASE("load_density input validation") {
  auto samples = gaussian_samples(8.0, 301, 1.0);
  SECTION("non-uniform grid") {
    auto bad = samples;
    bad[7].first += 1e-6;
    REQUIRE_THROWS_MATCHES(load_density(bad, 1.0), Error, Catch::Matchers::Predicate<Error>([](
        const Error& e) { return e.code() == ErrorCode::NonUniformGrid; }));
  }
  SECTION("negative density") {
    auto bad = samples;
    bad[7].second = -1e-9;
    REQUIRE_THROWS_MATCHES(load_density(bad, 1.0), Error, Catch::Matchers::Predicate<Error>([](
        const Error& e) { return e.code() == ErrorCode::NegativeDensity; }));
  }
  SECTION("zero mass") {
    auto bad = samples;
    for (auto& [x, v] : bad) v = 0.0;
    REQUIRE_THROWS_MATCHES(load_density(bad, 1.0), Error, Catch::Matchers::Predicate<Error>([](
        const Error& e) { return e.code() == ErrorCode::ZeroMass; }));
  }
  SECTION("too few samples") {
    std::vector<std::pair<double, double>> two = {{0.0, 1.0}, {1.0, 1.0}};
    REQUIRE_THROWS_AS(load_density(two, 1.0), Error);
  }
}

TEST_CASE("harriman phase of the standard normal hits 2*pi*CDF") {
  GridDensity rho = gauss(1.0);
  GridFunction f = harriman_phase(rho);
  const int mid = 1000;  // x = 0
  REQUIRE(std::abs(f.values[mid] - 2.0 * kPi * normal_cdf(0.0)) <= 1e-8);
  REQUIRE(f.values.front() == 0.0);
  REQUIRE(std::abs(f.values.back() - 2.0 * kPi) <= 1e-8);
}

TEST_CASE("harriman phase: compactly supported bump, midpoint pi") {
  DensitySpec spec;
  spec.kind = DensitySpec::Kind::CosineBump;
  spec.param = 1.0;
  spec.span = 2.0;
  spec.points = 2001;
  spec.mass = 2.0;
  GridDensity rho = make_density(spec);
  GridFunction f = harriman_phase(rho);
  REQUIRE(std::abs(f.values[1000] - kPi) <= 1e-10);
  REQUIRE(std::abs(f.values.back() - 2.0 * kPi) <= 1e-10);
}

TEST_CASE("harriman phase is monotone, spans [0, 2*pi], derivative = 2*pi*rho/N") {
  GridDensity rho = gauss(2.0, 1001);
  GridFunction f = harriman_phase(rho);
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    REQUIRE(f.values[i] >= f.values[i - 1]);
    REQUIRE(f.values[i] <= 2.0 * kPi + 1e-8);
  }
  // forward difference reproduces the midpoint density (up to accumulator
  // rounding), central difference reproduces the node density to O(h^2)
  const double h = rho.spacing();
  for (std::size_t i : {200u, 500u, 700u}) {
    double fwd = (f.values[i + 1] - f.values[i]) / h;
    double mid = 0.5 * (rho.values()[i] + rho.values()[i + 1]);
    REQUIRE(fwd == Approx(2.0 * kPi / rho.mass() * mid).epsilon(1e-9));
    double central = (f.values[i + 1] - f.values[i - 1]) / (2.0 * h);
    REQUIRE(central ==
            Approx(2.0 * kPi / rho.mass() * rho.values()[i]).margin(h * h));
  }
}

TEST_CASE("dirichlet energy of the standard normal is 1/4") {
  REQUIRE(std::abs(dirichlet_energy(gauss(1.0)) - 0.25) <= 2e-4);
}

TEST_CASE("dirichlet energy scales linearly in the mass prefactor") {
  double d1 = dirichlet_energy(gauss(1.0, 1001));
  double d3 = dirichlet_energy(gauss(3.0, 1001));
  REQUIRE(d3 == Approx(3.0 * d1).epsilon(1e-12));
}

TEST_CASE("dirichlet energy: narrower Gaussian scales like 1/sigma^2") {
  double d1 = dirichlet_energy(gauss(1.0, 4001, 1.0));
  double dh = dirichlet_energy(gauss(1.0, 4001, 0.5));
  REQUIRE(dh == Approx(4.0 * d1).epsilon(2e-4));
}

TEST_CASE("dirichlet energy converges at second order on refinement") {
  double prev = -1.0;
  for (int points : {501, 1001, 2001, 4001}) {
    double err = std::abs(dirichlet_energy(gauss(1.0, points)) - 0.25);
    if (prev > 0.0) REQUIRE(prev / err >= 3.0);
    prev = err;
  }
}

TEST_CASE("dirichlet energy handles hard zeros outside a compact support") {
  DensitySpec spec;
  spec.kind = DensitySpec::Kind::CosineBump;
  spec.param = 1.0;
  spec.span = 2.0;  // half the grid is exactly zero
  spec.points = 4001;
  spec.mass = 2.0;
  GridDensity rho = make_density(spec);
  // analytic: mass * pi^2 / (4 w^2)
  REQUIRE(dirichlet_energy(rho) == Approx(2.0 * kPi * kPi / 4.0).epsilon(5e-3));
}

TEST_CASE("cubed integral of the standard normal") {
  REQUIRE(std::abs(cubed_integral(gauss(1.0)) - 1.0 / (2.0 * kPi * std::sqrt(3.0))) <= 1e-6);
}

TEST_CASE("cubed integral is cubic in the scale and additive over disjoint supports") {
  double c1 = cubed_integral(gauss(1.0, 1001));
  double c2 = cubed_integral(gauss(2.0, 1001));
  REQUIRE(c2 == Approx(8.0 * c1).epsilon(1e-12));

  // two width-1 bumps at +-3 vs one centered bump, same grid spacing
  const int points = 1601;
  const double span = 8.0, h = 2.0 * span / (points - 1);
  auto bump = [](double x) {
    return std::abs(x) < 1.0 ? std::cos(0.5 * kPi * x) * std::cos(0.5 * kPi * x) : 0.0;
  };
  std::vector<std::pair<double, double>> one(points), two(points);
  for (int i = 0; i < points; ++i) {
    double x = -span + i * h;
    one[i] = {x, bump(x)};
    two[i] = {x, bump(x - 3.0) + bump(x + 3.0)};
  }
  double c_half = cubed_integral(load_density(one, 0.5));
  double c_pair = cubed_integral(load_density(two, 1.0));
  REQUIRE(c_pair == Approx(2.0 * c_half).epsilon(1e-12));
}

TEST_CASE("csv ingestion") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "repstate_csv_test";
  fs::create_directories(dir);
  fs::path file = dir / "rho.csv";
  {
    std::ofstream out(file);
    out << "x,rho\n";
    auto samples = gaussian_samples(8.0, 401, 1.0);
    out.precision(17);
    for (auto& [x, v] : samples) out << x << "," << v << "\n";
  }
  auto samples = load_csv_samples(file.string());
  REQUIRE(samples.size() == 401);
  GridDensity rho = load_density(samples, 2.0);
  REQUIRE(std::abs(trapezoid(rho.values(), rho.spacing()) - 2.0) <= 1e-10);

  fs::path bad = dir / "unsorted.csv";
  {
    std::ofstream out(bad);
    out << "# comment header\n0.0,1.0\n-1.0,1.0\n1.0,1.0\n";
  }
  REQUIRE_THROWS_AS(load_csv_samples(bad.string()), Error);
}

TEST_CASE("dimension tag blocks quadrature outside d = 1") {
  auto samples = gaussian_samples(8.0, 301, 1.0);
  GridDensity rho = GridDensity::from_samples(samples, 1.0, 3);
  REQUIRE_THROWS_MATCHES(harriman_phase(rho), Error, Catch::Matchers::Predicate<Error>([](
      const Error& e) { return e.code() == ErrorCode::DimensionUnsupported; }));
  REQUIRE_THROWS_AS(dirichlet_energy(rho), Error);
}
