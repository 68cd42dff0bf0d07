#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "repstate/scalars.hpp"

using namespace repstate;
using Catch::Approx;

TEST_CASE("binary entropy values and symmetry") {
  REQUIRE(binary_entropy(0.0) == 0.0);
  REQUIRE(binary_entropy(1.0) == 0.0);
  REQUIRE(binary_entropy(0.5) == Approx(std::numbers::ln2).margin(1e-15));
  REQUIRE(binary_entropy(0.2) == Approx(binary_entropy(0.8)).margin(1e-15));
  REQUIRE_THROWS_AS(binary_entropy(-0.1), Error);
  REQUIRE_THROWS_AS(binary_entropy(1.1), Error);
}

TEST_CASE("binary entropy inverse endpoints and residual scan") {
  REQUIRE(binary_entropy_inverse(0.0) == 0.0);
  REQUIRE(std::abs(binary_entropy_inverse(std::numbers::ln2) - 0.5) <= 1e-10);
  for (int i = 0; i <= 1000; ++i) {
    double y = std::numbers::ln2 * i / 1000.0;
    double x = binary_entropy_inverse(y);
    REQUIRE(std::abs(binary_entropy(x) - y) <= 1e-12);
  }
  REQUIRE_THROWS_AS(binary_entropy_inverse(1.0), Error);
}

TEST_CASE("inverse composed with entropy is the identity on [0, 1/2]") {
  for (int i = 0; i <= 50; ++i) {
    double x = 0.5 * i / 50.0;
    REQUIRE(std::abs(binary_entropy_inverse(binary_entropy(x)) - x) <= 1e-10);
  }
}

TEST_CASE("xi reciprocal identity xi(x^2 ln x) = x") {
  for (double x : {2.0, 5.0, 10.0})
    REQUIRE(std::abs(xi_reciprocal(x * x * std::log(x)) - x) <= 1e-10);
  REQUIRE(xi_reciprocal(0.0) == 1.0);
}

TEST_CASE("xi_S branches: inverse below ln 2, saturated to 1 above") {
  REQUIRE(xi_entropy(1.0) == 1.0);
  REQUIRE(xi_entropy(std::numbers::ln2) == 1.0);
  double x = xi_entropy(0.1);
  REQUIRE(std::abs(binary_entropy(x) - 0.1) <= 1e-12);
  REQUIRE(x < 0.5);
  REQUIRE_THROWS_AS(xi_entropy(-0.01), Error);
}

TEST_CASE("entropy-inverse bracket y^2 <= s_inverse(y) <= y near zero") {
  // scan for the right edge of the bracket window, then check it wholesale
  double x_eps = 0.0;
  for (int i = 1; i <= 300; ++i) {
    double y = 0.001 * i;
    double s_inv = binary_entropy_inverse(y);
    if (y * y <= s_inv && s_inv <= y)
      x_eps = y;
    else
      break;
  }
  REQUIRE(x_eps >= 0.25);
  for (int i = 1; i <= 200; ++i) {
    double y = x_eps * i / 200.0;
    double s_inv = binary_entropy_inverse(y);
    REQUIRE(y * y <= s_inv + 1e-15);
    REQUIRE(s_inv <= y + 1e-15);
  }
}

TEST_CASE("bisection demands a bracketing interval") {
  REQUIRE_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), Error);
  REQUIRE(bisect([](double x) { return x - 0.25; }, 0.0, 1.0) == Approx(0.25).margin(1e-12));
}
