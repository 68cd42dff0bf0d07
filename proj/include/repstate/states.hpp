#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "repstate/configurations.hpp"
#include "repstate/grid.hpp"
#include "repstate/orbitals.hpp"

namespace repstate {

/**
 * Statistical mixture of projectors onto configuration states built from
 * the phase orbitals of one density. Weights sum to one; configurations
 * are pairwise distinct. Immutable after assembly.
 */
struct MixedState {
  struct Entry {
    double weight = 0.0;
    FockConfig config;
  };

  Statistics statistics = Statistics::Fermion;
  std::shared_ptr<const GridDensity> density;
  std::vector<Entry> entries;
  std::string density_ref;  // optional provenance for serialization
};

namespace detail {

inline void validate_config(const FockConfig& c, Statistics stats) {
  for (const auto& [n, mom] : c.sectors) {
    if (n < 1) throw Error(ErrorCode::BadInput, "sector keys must be >= 1");
    if (static_cast<int>(mom.size()) != n)
      throw Error(ErrorCode::BadInput, "sector key must equal its configuration size");
    if (!std::is_sorted(mom.begin(), mom.end()))
      throw Error(ErrorCode::BadInput, "momenta must be sorted ascending");
    if (stats == Statistics::Fermion)
      for (std::size_t i = 1; i < mom.size(); ++i)
        if (mom[i] == mom[i - 1])
          throw Error(ErrorCode::PauliViolation, "repeated momentum in a fermionic configuration");
  }
}

/// Mean particle number of one configuration under the uniform
/// 1/sqrt(#occupied sectors) amplitude convention.
inline double config_mean_particles(const FockConfig& c) {
  if (c.is_vacuum()) return 0.0;
  const double m = static_cast<double>(c.sectors.size());
  KahanSum s;
  for (const auto& [n, mom] : c.sectors) s.add(static_cast<double>(n) / m);
  return s.value();
}

inline long long config_sum_sq(const FockConfig& c) { return c.is_vacuum() ? 0 : sum_sq(c); }

}  // namespace detail

/// Validates entries and renormalizes the weights to sum to one.
inline MixedState assemble(std::vector<MixedState::Entry> entries,
                           std::shared_ptr<const GridDensity> density, Statistics statistics) {
  if (entries.empty()) throw Error(ErrorCode::BadInput, "a mixed state needs at least one entry");
  KahanSum wsum;
  std::set<FockConfig> seen;
  for (auto& e : entries) {
    if (!(e.weight >= 0.0))
      throw Error(ErrorCode::WeightSumInvalid, "weights must be nonnegative");
    detail::validate_config(e.config, statistics);
    if (!seen.insert(e.config).second)
      throw Error(ErrorCode::DuplicateConfig, "configurations must be pairwise distinct");
    wsum.add(e.weight);
  }
  const double total = wsum.value();
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorCode::WeightSumInvalid, "weights must sum to 1 within 1e-12");
  for (auto& e : entries) e.weight /= total;
  return MixedState{statistics, std::move(density), std::move(entries), {}};
}

/// Density of the mixture. Every orbital has |phi_k|^2 = rho/mass, so the
/// state density is rho * (mean particles / mass); a pure canonical
/// N-particle configuration over a mass-N density reproduces rho exactly.
inline GridFunction state_density(const MixedState& gamma) {
  KahanSum coeff;
  for (const auto& e : gamma.entries)
    coeff.add(e.weight * detail::config_mean_particles(e.config));
  const double factor = coeff.value() / gamma.density->mass();
  std::vector<double> values(gamma.density->values());
  for (double& v : values) v *= factor;
  return GridFunction{gamma.density->nodes(), std::move(values)};
}

/// -sum w ln w over the mixture weights (0 ln 0 = 0). Exact von Neumann
/// entropy when the entries are mutually orthogonal.
inline double nominal_entropy(const MixedState& gamma) {
  KahanSum s;
  for (const auto& e : gamma.entries)
    if (e.weight > 0.0) s.add(-e.weight * std::log(e.weight));
  return s.value();
}

inline double mean_particles(const MixedState& gamma) {
  KahanSum s;
  for (const auto& e : gamma.entries)
    s.add(e.weight * detail::config_mean_particles(e.config));
  return s.value();
}

/// Kinetic energy: per-orbital closed form over the mass-1 normalized
/// density, weighted by sector amplitudes. Additivity over orbitals is
/// exact for determinants/permanents of orthonormal orbitals; the Gram
/// deviation is reported alongside in certificates, never assumed.
inline double kinetic_energy(const MixedState& gamma) {
  gamma.density->require_dim1("kinetic_energy");
  const double mass = gamma.density->mass();
  const double d_norm = dirichlet_energy(*gamma.density) / mass;
  const double c_norm = cubed_integral(*gamma.density) / (mass * mass * mass);
  const double fourpi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  KahanSum t;
  for (const auto& e : gamma.entries) {
    if (e.config.is_vacuum() || e.weight == 0.0) continue;
    const double m = static_cast<double>(e.config.sectors.size());
    for (const auto& [n, mom] : e.config.sectors) {
      KahanSum sector;
      for (int k : mom) sector.add(d_norm + fourpi2 * c_norm * static_cast<double>(k) * k);
      t.add(e.weight * sector.value() / m);
    }
  }
  return t.value();
}

/**
 * Analytic Gram matrix of the entry configurations. Overlaps of
 * determinant/permanent sector states of orthonormal orbitals reduce to
 * Kronecker deltas on the momentum lists, scaled by the uniform sector
 * amplitudes, so <A,B> = (#identical shared sectors) / sqrt(m_A m_B).
 * Computed sparsely through (sector, momenta) buckets.
 */
struct FockGram {
  bool is_identity = true;
  double max_offdiag = 0.0;
  /// Off-diagonal overlaps keyed by entry-index pair (i < j).
  std::map<std::pair<std::size_t, std::size_t>, double> offdiag;
};

inline FockGram fock_gram(const MixedState& gamma) {
  FockGram g;
  std::map<std::pair<int, Momenta>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < gamma.entries.size(); ++i)
    for (const auto& [n, mom] : gamma.entries[i].config.sectors)
      buckets[{n, mom}].push_back(i);
  std::map<std::pair<std::size_t, std::size_t>, int> shared;
  for (const auto& [key, members] : buckets)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        ++shared[{members[a], members[b]}];
  for (const auto& [pair, count] : shared) {
    const auto& ca = gamma.entries[pair.first].config;
    const auto& cb = gamma.entries[pair.second].config;
    double overlap = count / std::sqrt(static_cast<double>(ca.sectors.size()) *
                                       static_cast<double>(cb.sectors.size()));
    if (overlap != 0.0) {
      g.is_identity = false;
      g.max_offdiag = std::max(g.max_offdiag, std::abs(overlap));
      g.offdiag[pair] = overlap;
    }
  }
  return g;
}

inline double gram_deviation(const MixedState& gamma) { return fock_gram(gamma).max_offdiag; }

/**
 * Exact von Neumann entropy of the mixture: eigenvalues of
 * W^{1/2} G W^{1/2} with W = diag(weights) and G the analytic Gram.
 * Returns the nominal entropy directly when G is the identity; otherwise
 * a dense symmetric eigensolve, capped at `budget` entries.
 */
inline double exact_entropy(const MixedState& gamma, std::size_t budget = 5000) {
  FockGram g = fock_gram(gamma);
  if (g.is_identity) return nominal_entropy(gamma);
  const std::size_t n = gamma.entries.size();
  if (n > budget)
    throw Error(ErrorCode::BudgetExceeded, "exact_entropy eigensolver budget exceeded");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i) {
    sw[i] = std::sqrt(gamma.entries[i].weight);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = gamma.entries[i].weight;
  }
  for (const auto& [pair, overlap] : g.offdiag) {
    double v = sw[pair.first] * overlap * sw[pair.second];
    m(static_cast<Eigen::Index>(pair.first), static_cast<Eigen::Index>(pair.second)) = v;
    m(static_cast<Eigen::Index>(pair.second), static_cast<Eigen::Index>(pair.first)) = v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  KahanSum s;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda < -1e-9)
      throw Error(ErrorCode::DomainError, "Gram-weighted matrix significantly indefinite");
    if (lambda > 0.0) s.add(-lambda * std::log(lambda));
  }
  return s.value();
}

}  // namespace repstate
