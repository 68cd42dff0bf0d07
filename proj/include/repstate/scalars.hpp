#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "repstate/errors.hpp"

namespace repstate {

/**
 * Bracketing bisection with a fixed 200-iteration schedule.
 *
 * Requires sign(f(lo)) != sign(f(hi)) in the weak sense (zeros at the
 * endpoints are allowed). Only the intermediate value property is used;
 * monotonicity of f is never assumed. The fixed schedule makes results
 * byte-reproducible across runs.
 */
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw Error(ErrorCode::TargetOutOfRange, "bisection endpoints do not bracket a root");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Binary entropy s(x) = -x ln x - (1-x) ln(1-x), with 0 ln 0 = 0.
inline double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw Error(ErrorCode::DomainError, "binary_entropy needs x in [0,1]");
  double r = 0.0;
  if (x > 0.0) r -= x * std::log(x);
  if (x < 1.0) r -= (1.0 - x) * std::log(1.0 - x);
  return r;
}

/// Inverse of binary_entropy on [0, 1/2]; bisection, residual <= 1e-12.
inline double binary_entropy_inverse(double y) {
  constexpr double ln2 = std::numbers::ln2;
  if (y < 0.0 || y > ln2 + 1e-15)
    throw Error(ErrorCode::DomainError, "binary_entropy_inverse needs y in [0, ln 2]");
  if (y <= 0.0) return 0.0;
  if (y >= ln2) return 0.5;
  return bisect([y](double x) { return binary_entropy(x) - y; }, 0.0, 0.5);
}

/// Inverse of f(x) = x^2 ln x on [1, 1e9] (strictly increasing there).
inline double xi_reciprocal(double y) {
  if (y < 0.0) throw Error(ErrorCode::DomainError, "xi_reciprocal needs y >= 0");
  if (y == 0.0) return 1.0;
  auto f = [y](double x) { return x * x * std::log(x) - y; };
  if (f(1e9) < 0.0) throw Error(ErrorCode::DomainError, "xi_reciprocal argument too large");
  return bisect(f, 1.0, 1e9);
}

/// Entropy scale xi_S: binary_entropy_inverse(S) below ln 2, 1 at and
/// above it. (These are the branches the Gamma(lambda, alpha) parameter
/// selection actually uses.)
inline double xi_entropy(double S) {
  if (S < 0.0) throw Error(ErrorCode::DomainError, "xi_entropy needs S >= 0");
  if (S < std::numbers::ln2) return binary_entropy_inverse(S);
  return 1.0;
}

}  // namespace repstate
