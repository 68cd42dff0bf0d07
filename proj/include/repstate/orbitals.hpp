#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "repstate/grid.hpp"

namespace repstate {

/// phi_k = sqrt(rho/mass) * exp(i k f). The modulus is k-independent, so
/// |phi_k|^2 is rho/mass identically; density accumulation must go through
/// orbital_density_values() to keep that identity exact in floating point.
inline ComplexGridFunction orbital_values(const GridDensity& rho, int k) {
  rho.require_dim1("orbital_values");
  GridFunction f = harriman_phase(rho);
  const auto& v = rho.values();
  std::vector<std::complex<double>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double a = std::sqrt(v[i] / rho.mass());
    out[i] = std::polar(a, k * f.values[i]);
  }
  return ComplexGridFunction{rho.nodes(), std::move(out)};
}

/// |phi_k|^2 samples, computed directly as rho/mass (exact, k-independent).
inline std::vector<double> orbital_density_values(const GridDensity& rho) {
  std::vector<double> out(rho.values());
  for (double& v : out) v /= rho.mass();
  return out;
}

/// Overlap matrix <phi_l, phi_m> for the given momentum labels, by
/// trapezoidal quadrature. The (l,m) entry depends only on m - l, and the
/// matrix is filled Hermitian by construction (lower triangle mirrored).
inline std::vector<std::vector<std::complex<double>>> gram(const GridDensity& rho,
                                                           const std::vector<int>& indices) {
  rho.require_dim1("gram");
  GridFunction f = harriman_phase(rho);
  const auto& v = rho.values();
  const double h = rho.spacing();
  const std::size_t m = indices.size();

  auto overlap = [&](int delta) {
    KahanSum re, im;
    auto term = [&](std::size_t i, double w) {
      double ph = delta * f.values[i];
      double a = w * v[i] / rho.mass();
      re.add(a * std::cos(ph));
      im.add(a * std::sin(ph));
    };
    term(0, 0.5);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) term(i, 1.0);
    term(v.size() - 1, 0.5);
    return std::complex<double>(re.value() * h, im.value() * h);
  };

  std::vector<std::vector<std::complex<double>>> g(m, std::vector<std::complex<double>>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      std::complex<double> o = overlap(indices[b] - indices[a]);
      g[a][b] = o;
      g[b][a] = std::conj(o);
    }
  return g;
}

struct GramDeviation {
  double max_offdiag = 0.0;
  double max_diag_error = 0.0;
};

inline GramDeviation gram_deviation(const GridDensity& rho, const std::vector<int>& indices) {
  auto g = gram(rho, indices);
  GramDeviation d;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (a == b)
        d.max_diag_error = std::max(d.max_diag_error, std::abs(g[a][b] - 1.0));
      else
        d.max_offdiag = std::max(d.max_offdiag, std::abs(g[a][b]));
    }
  return d;
}

/**
 * integral |grad phi_k|^2 in closed form:
 *
 *   (1/N) * integral |d/dx sqrt(rho)|^2  +  k^2 (4 pi^2 / N^3) * integral rho^3
 *
 * with N = mass. The second term is the phase gradient (f' = 2 pi rho / N).
 * The oscillatory finite-difference route needs O(k) more nodes for the
 * same accuracy and is kept only as a test oracle.
 */
inline double orbital_kinetic(const GridDensity& rho, int k) {
  rho.require_dim1("orbital_kinetic");
  const double n = rho.mass();
  const double fourpi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  return dirichlet_energy(rho) / n +
         static_cast<double>(k) * k * (fourpi2 / (n * n * n)) * cubed_integral(rho);
}

/// Per-orbital kinetic bound (1/N)(1 + 16 pi^2 k^2) * dirichlet.
inline double orbital_kinetic_bound(int k, int n_particles, double dirichlet) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return (1.0 + 16.0 * pi2 * static_cast<double>(k) * k) * dirichlet / n_particles;
}

}  // namespace repstate
