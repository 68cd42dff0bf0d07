#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "repstate/densities.hpp"
#include "repstate/representability.hpp"

using namespace repstate;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

GridDensity gauss(double mass, int points = 2001) {
  DensitySpec spec;
  spec.points = points;
  spec.mass = mass;
  return make_density(spec);
}

}  // namespace

TEST_CASE("theta matching endpoints and interior residual") {
  REQUIRE(match_entropy_theta(2, 0.0) == Approx(0.5 * kPi).margin(1e-12));
  REQUIRE(match_entropy_theta(3, std::log(3.0)) == Approx(0.0).margin(1e-12));
  double th = match_entropy_theta(2, 0.5);
  REQUIRE(th > 0.0);
  REQUIRE(th < 0.5 * kPi);
  REQUIRE(std::abs(theta_entropy(th, 2) - 0.5) <= 1e-10);
  REQUIRE_THROWS_MATCHES(match_entropy_theta(2, std::log(2.0) + 0.1), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::TargetOutOfRange;
                         }));
}

TEST_CASE("lambda matching endpoints and interior residual") {
  const int n = 3;
  const long long m = 8;
  const double nbar = 2.5;
  const double ratio = nbar / n;
  double s_low = lambda_entropy(ratio, n, m, nbar);
  double s_high = lambda_entropy(0.0, n, m, nbar);
  REQUIRE(s_high == Approx(ratio * std::log(8.0) + binary_entropy(ratio)).margin(1e-14));
  REQUIRE(match_entropy_lambda(n, m, nbar, s_low) == Approx(ratio).margin(1e-10));
  REQUIRE(match_entropy_lambda(n, m, nbar, s_high) == Approx(0.0).margin(1e-10));
  double l = match_entropy_lambda(n, m, nbar, 1.0);
  REQUIRE(std::abs(lambda_entropy(l, n, m, nbar) - 1.0) <= 1e-10);
  REQUIRE_THROWS_AS(match_entropy_lambda(n, m, nbar, s_high + 0.1), Error);
}

TEST_CASE("canonical bound: plug-in, statistics gap, monotonicity") {
  REQUIRE(canonical_bound(1, 0.0, Statistics::Fermion, 1.0) ==
          Approx(1.0 + 144.0 * kPi * kPi).epsilon(1e-14));
  REQUIRE(canonical_bound(2, 1.0, Statistics::Boson, 0.25) <
          canonical_bound(2, 1.0, Statistics::Fermion, 0.25));
  double prev = 0.0;
  for (double s : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    double b = canonical_bound(3, s, Statistics::Fermion, 0.25);
    REQUIRE(b > prev);
    prev = b;
  }
  REQUIRE(canonical_bound(2, 1.0, Statistics::Fermion, 0.0) == 0.0);
  // proof-chain value never exceeds the statement value
  for (double s : {0.0, 0.7, 2.3})
    for (int n : {1, 2, 5})
      REQUIRE(canonical_proof_chain_bound(n, s, Statistics::Fermion, 0.3) <=
              canonical_bound(n, s, Statistics::Fermion, 0.3) * (1.0 + 1e-12));
}

TEST_CASE("construct_canonical at S = 0 degenerates to the pure third state") {
  GridDensity rho = gauss(2.0);
  auto [gamma, cert] = construct_canonical(rho, 2, 0.0, Statistics::Fermion);
  REQUIRE(cert.m_states == 2);
  REQUIRE(cert.theta0 == Approx(0.5 * kPi).margin(1e-12));
  REQUIRE(gamma.entries.size() == 3);
  REQUIRE(gamma.entries[0].weight == Approx(0.0).margin(1e-25));
  REQUIRE(gamma.entries[2].weight == Approx(1.0).margin(1e-12));
  REQUIRE(gamma.entries[2].config == single_sector({-1, 1}));  // third shell-order config
  REQUIRE(cert.entropy_nominal <= 1e-20);
  REQUIRE(cert.pass);
}

TEST_CASE("construct_canonical matches entropy and density") {
  GridDensity rho = gauss(2.0);
  auto [gamma, cert] = construct_canonical(rho, 2, 1.0, Statistics::Fermion);
  REQUIRE(cert.m_states == 3);
  REQUIRE(std::abs(cert.entropy_nominal - 1.0) <= 1e-10);
  REQUIRE(cert.density_l1_deviation <= 1e-12);
  REQUIRE(cert.gram_dev == 0.0);
  REQUIRE(cert.entropy_exact == cert.entropy_nominal);
  for (const auto& b : cert.bounds) REQUIRE(b.margin >= 0.0);
  REQUIRE(cert.pass);
  // weights follow cos^2/M (x3), sin^2
  double c2 = std::cos(cert.theta0) * std::cos(cert.theta0);
  for (int k = 0; k < 3; ++k)
    REQUIRE(gamma.entries[k].weight == Approx(c2 / 3.0).epsilon(1e-12));
}

TEST_CASE("construct_canonical handles bosons and larger entropy") {
  GridDensity rho = gauss(3.0);
  auto [gamma, cert] = construct_canonical(rho, 3, 2.0, Statistics::Boson);
  REQUIRE(cert.m_states == 8);  // floor(e^2) + 1
  REQUIRE(std::abs(cert.entropy_nominal - 2.0) <= 1e-10);
  REQUIRE(cert.pass);
}

TEST_CASE("construct_canonical validates its targets") {
  GridDensity rho = gauss(2.0, 401);
  REQUIRE_THROWS_AS(construct_canonical(rho, 3, 1.0, Statistics::Fermion), Error);   // mass != N
  REQUIRE_THROWS_AS(construct_canonical(rho, 2, -0.5, Statistics::Fermion), Error);  // S < 0
  REQUIRE_THROWS_MATCHES(construct_canonical(rho, 2, 20.0, Statistics::Fermion), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::BudgetExceeded;
                         }));
}

TEST_CASE("gc-entropy at S = 0: pure phi_{-1}, mean below the bound") {
  GridDensity p = gauss(1.0);
  auto [gamma, cert] = construct_gc_density_entropy(p, 0.0, Statistics::Fermion);
  REQUIRE(cert.m_states == 2);
  REQUIRE(gamma.entries.size() == 3);
  REQUIRE(gamma.entries[2].weight == Approx(1.0).margin(1e-12));
  REQUIRE(gamma.entries[2].config == single_sector({-1}));
  REQUIRE(cert.mean_n == Approx(1.0).margin(1e-12));
  REQUIRE(gc_entropy_nmean_bound(0.0) == 48.0);
  REQUIRE(cert.pass);
}

TEST_CASE("gc-entropy fermion S = 2 asserts the explicit constants") {
  GridDensity p = gauss(1.0);
  auto [gamma, cert] = construct_gc_density_entropy(p, 2.0, Statistics::Fermion);
  double d = dirichlet_energy(p);
  bool found_kinetic = false;
  for (const auto& b : cert.bounds)
    if (b.name == "gc_kinetic") {
      found_kinetic = true;
      REQUIRE(b.value == Approx(512000.0 * d).epsilon(1e-12));
      REQUIRE(b.margin >= 0.0);
    }
  REQUIRE(found_kinetic);
  REQUIRE(std::abs(cert.entropy_nominal - 2.0) <= 1e-10);
  REQUIRE(cert.density_l1_deviation <= 1e-8);
  REQUIRE(cert.pass);
  // the step-1 states overlap across sectors; the deviation is reported
  REQUIRE(cert.gram_dev > 0.0);
  REQUIRE(cert.entropy_exact < cert.entropy_nominal);
}

TEST_CASE("gc-entropy boson branch reports instead of asserting constants") {
  GridDensity p = gauss(1.0);
  auto [gamma, cert] = construct_gc_density_entropy(p, 1.0, Statistics::Boson);
  REQUIRE(cert.bounds.empty());
  REQUIRE_FALSE(cert.notes.empty());
  REQUIRE(cert.hoffmann_ostenhof.pass);
  REQUIRE(cert.pass);
}

TEST_CASE("gc-full: prescribed parameter selection at Nbar = 2.5, S = 1") {
  GridDensity p = gauss(1.0);
  auto [gamma, cert] = construct_gc_full(p, 2.5, 1.0, Statistics::Fermion);
  REQUIRE(cert.n_particles == 3);
  REQUIRE(cert.m_states == 5);  // ceil(e^{1.4})
  REQUIRE(std::abs(cert.mean_n - 2.5) <= 1e-12);
  REQUIRE(std::abs(cert.entropy_nominal - 1.0) <= 1e-10);
  REQUIRE(cert.gram_dev == 0.0);  // single sector + vacuum
  REQUIRE(cert.entropy_exact == cert.entropy_nominal);
  for (const auto& b : cert.bounds) REQUIRE(b.margin >= 0.0);
  REQUIRE(cert.pass);
}

TEST_CASE("gc-full: S = 0 pure fallback and infeasible targets") {
  GridDensity p = gauss(1.0);
  auto [gamma, cert] = construct_gc_full(p, 2.0, 0.0, Statistics::Fermion);
  REQUIRE(gamma.entries.size() == 1);
  REQUIRE(cert.mean_n == Approx(2.0).margin(1e-12));
  REQUIRE(cert.entropy_nominal == 0.0);
  REQUIRE(cert.pass);
  REQUIRE_THROWS_MATCHES(construct_gc_full(p, 2.5, 0.0, Statistics::Fermion), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::InfeasibleTarget;
                         }));
}

TEST_CASE("gc-full: small-entropy branch selects N from the entropy scale") {
  GridDensity p = gauss(1.0);
  auto [gamma, cert] = construct_gc_full(p, 1.0, 0.3, Statistics::Fermion);
  double xi = binary_entropy_inverse(0.3);
  REQUIRE(cert.n_particles == static_cast<int>(std::ceil(1.0 / xi)));
  REQUIRE(cert.m_states ==
          static_cast<long long>(std::ceil(std::exp(0.3 * (1.0 / xi + 1.0)))));
  REQUIRE(std::abs(cert.entropy_nominal - 0.3) <= 1e-10);
  REQUIRE(std::abs(cert.mean_n - 1.0) <= 1e-12);
  REQUIRE(cert.pass);
}

TEST_CASE("gc-full bound: plug-in value and asymptotic growth rate") {
  REQUIRE(gc_bound_thm3(1.0, 1.0, 1.0) ==
          Approx(40.0 * kPi * kPi * std::pow(std::exp(2.0) + 5.0, 2)).epsilon(1e-12));
  REQUIRE(gc_bound_thm3(1.0, 1.0, 2.0) == Approx(2.0 * gc_bound_thm3(1.0, 1.0, 1.0)));
  // at Nbar = 1 and large S the bound grows like e^{4S}
  for (double s : {5.0, 6.0, 8.0, 10.0}) {
    double ratio = gc_bound_thm3(1.0, s, 1.0) / std::exp(4.0 * s);
    REQUIRE(ratio <= 395.0);
    REQUIRE(ratio >= 394.0);
  }
  REQUIRE_THROWS_AS(gc_bound_thm3(1.0, 0.0, 1.0), Error);
  REQUIRE_THROWS_AS(gc_bound_thm3(0.0, 1.0, 1.0), Error);
}

TEST_CASE("Hoffmann-Ostenhof margins") {
  DensitySpec spec;
  spec.points = 2001;
  spec.mass = 1.0;
  auto p = std::make_shared<GridDensity>(make_density(spec));

  MixedState ground = assemble({{1.0, single_sector({0})}}, p, Statistics::Fermion);
  HoffmannOstenhof eq = hoffmann_ostenhof_check(ground);
  REQUIRE(std::abs(eq.margin) <= 1e-6);  // T = D for the single real orbital
  REQUIRE(eq.pass);

  auto p2 = std::make_shared<GridDensity>(gauss(2.0));
  MixedState excited = assemble({{1.0, single_sector({0, 1})}}, p2, Statistics::Fermion);
  HoffmannOstenhof strict = hoffmann_ostenhof_check(excited);
  REQUIRE(strict.margin > 1e-3);
  REQUIRE(strict.pass);
}

TEST_CASE("certificates are byte-deterministic across identical runs") {
  GridDensity rho = gauss(2.0, 1001);
  auto a = construct_canonical(rho, 2, 1.3, Statistics::Fermion);
  auto b = construct_canonical(rho, 2, 1.3, Statistics::Fermion);
  REQUIRE(a.second.theta0 == b.second.theta0);
  REQUIRE(a.second.kinetic == b.second.kinetic);
  REQUIRE(a.second.entropy_nominal == b.second.entropy_nominal);
  REQUIRE(a.second.density_l1_deviation == b.second.density_l1_deviation);
}
