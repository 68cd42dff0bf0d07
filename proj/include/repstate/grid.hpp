#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "repstate/errors.hpp"

namespace repstate {

/// Neumaier-compensated running sum. Keeps the quadrature and weight
/// identities (mass conservation, mean particle number) at a few ulp
/// instead of O(n) ulp.
class KahanSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Trapezoidal rule on a uniform grid.
inline double trapezoid(std::span<const double> values, double spacing) {
  if (values.size() < 2) return 0.0;
  KahanSum s;
  s.add(0.5 * values.front());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s.add(values[i]);
  s.add(0.5 * values.back());
  return s.value() * spacing;
}

/// Real samples on a uniform grid; no invariants beyond matching sizes.
struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;

  double spacing() const { return nodes[1] - nodes[0]; }
  double integral() const { return trapezoid(values, spacing()); }
};

/// Complex samples on a uniform grid (orbital values).
struct ComplexGridFunction {
  std::vector<double> nodes;
  std::vector<std::complex<double>> values;
};

/**
 * Nonnegative density samples on a uniform 1-D grid, rescaled at
 * construction so that the trapezoidal integral equals `mass`.
 *
 * The dimension tag exists so the d = 1 restriction of all quadrature
 * routines is explicit rather than implicit; any d >= 2 value is accepted
 * here but rejected by the operations that would need transverse
 * integrals.
 */
class GridDensity {
 public:
  /// Builds a density from (x, rho) samples, rescaling to the target mass.
  /// The pre-rescale integral is retained as `raw_mass()` so tail
  /// truncation stays visible in certificates.
  static GridDensity from_samples(std::span<const std::pair<double, double>> samples,
                                  double target_mass, int dimension = 1) {
    if (samples.size() < 3) throw Error(ErrorCode::BadInput, "need at least 3 samples");
    std::vector<double> xs, vs;
    xs.reserve(samples.size());
    vs.reserve(samples.size());
    for (const auto& [x, v] : samples) {
      xs.push_back(x);
      vs.push_back(v);
    }
    return GridDensity(std::move(xs), std::move(vs), target_mass, dimension);
  }

  static GridDensity from_arrays(std::vector<double> nodes, std::vector<double> values,
                                 double target_mass, int dimension = 1) {
    return GridDensity(std::move(nodes), std::move(values), target_mass, dimension);
  }

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double mass() const noexcept { return mass_; }
  /// Trapezoidal integral of the samples before rescaling.
  double raw_mass() const noexcept { return raw_mass_; }
  int dimension() const noexcept { return dimension_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  void require_dim1(const char* op) const {
    if (dimension_ != 1)
      throw Error(ErrorCode::DimensionUnsupported,
                  std::string(op) + " is implemented for dimension 1 only");
  }

 private:
  GridDensity(std::vector<double> nodes, std::vector<double> values, double target_mass,
              int dimension)
      : nodes_(std::move(nodes)), values_(std::move(values)), dimension_(dimension) {
    if (nodes_.size() < 3 || nodes_.size() != values_.size())
      throw Error(ErrorCode::BadInput, "grid needs >= 3 matching nodes/values");
    if (dimension_ < 1) throw Error(ErrorCode::BadInput, "dimension must be >= 1");
    if (!(target_mass > 0.0)) throw Error(ErrorCode::ZeroMass, "target mass must be positive");

    spacing_ = nodes_[1] - nodes_[0];
    if (!(spacing_ > 0.0)) throw Error(ErrorCode::NonUniformGrid, "nodes must increase");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      double d = nodes_[i] - nodes_[i - 1];
      if (std::abs(d - spacing_) > 1e-12 * std::abs(spacing_))
        throw Error(ErrorCode::NonUniformGrid, "grid spacing not constant within 1e-12");
    }
    bool any_positive = false;
    for (double v : values_) {
      if (v < 0.0) throw Error(ErrorCode::NegativeDensity, "density sample < 0");
      if (v > 0.0) any_positive = true;
    }
    if (!any_positive) throw Error(ErrorCode::ZeroMass, "all density samples are zero");

    raw_mass_ = trapezoid(values_, spacing_);
    double scale = target_mass / raw_mass_;
    for (double& v : values_) v *= scale;
    mass_ = target_mass;
  }

  std::vector<double> nodes_;
  std::vector<double> values_;
  double mass_ = 0.0;
  double raw_mass_ = 0.0;
  double spacing_ = 0.0;
  int dimension_ = 1;
};

/// load_density: samples are rescaled so the trapezoidal mass equals
/// `target_mass` exactly (up to rounding).
inline GridDensity load_density(std::span<const std::pair<double, double>> samples,
                                double target_mass) {
  return GridDensity::from_samples(samples, target_mass, 1);
}

/**
 * Cumulative phase f(x) = (2*pi/mass) * integral_{x0}^{x} rho, accumulated
 * with the trapezoidal rule. f(first node) = 0 by convention (the mass
 * below the grid is treated as truncated tail) and f(last node) = 2*pi up
 * to the quadrature residual of the rescaled samples.
 */
inline GridFunction harriman_phase(const GridDensity& rho) {
  rho.require_dim1("harriman_phase");
  const auto& v = rho.values();
  const double h = rho.spacing();
  const double scale = 2.0 * std::numbers::pi / rho.mass();
  std::vector<double> f(v.size());
  KahanSum acc;
  f[0] = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    acc.add(0.5 * h * (v[i - 1] + v[i]));
    f[i] = scale * acc.value();
  }
  return GridFunction{rho.nodes(), std::move(f)};
}

namespace detail {

/// Central-difference derivative of sqrt(values); one-sided at the ends
/// and at interior zero nodes (taken from the nonzero side, 0 if both
/// sides vanish).
inline std::vector<double> sqrt_derivative(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  std::vector<double> s(n), d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::sqrt(values[i]);
  if (n < 2) return d;
  d[0] = (s[1] - s[0]) / h;
  d[n - 1] = (s[n - 1] - s[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (values[i] == 0.0) {
      if (values[i + 1] > 0.0)
        d[i] = (s[i + 1] - s[i]) / h;
      else if (values[i - 1] > 0.0)
        d[i] = (s[i] - s[i - 1]) / h;
      else
        d[i] = 0.0;
    } else {
      d[i] = (s[i + 1] - s[i - 1]) / (2.0 * h);
    }
  }
  return d;
}

inline double dirichlet_energy_arrays(std::span<const double> values, double h) {
  auto d = sqrt_derivative(values, h);
  for (double& x : d) x *= x;
  return trapezoid(d, h);
}

}  // namespace detail

/// integral |d/dx sqrt(rho)|^2 by central differences + trapezoid.
inline double dirichlet_energy(const GridDensity& rho) {
  rho.require_dim1("dirichlet_energy");
  return detail::dirichlet_energy_arrays(rho.values(), rho.spacing());
}

/// integral rho^3.
inline double cubed_integral(const GridDensity& rho) {
  const auto& v = rho.values();
  std::vector<double> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] * v[i] * v[i];
  return trapezoid(c, rho.spacing());
}

}  // namespace repstate
