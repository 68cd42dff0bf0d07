#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "repstate/densities.hpp"
#include "repstate/identities.hpp"
#include "repstate/states.hpp"

namespace repstate {

struct BoundEntry {
  std::string name;
  double value = 0.0;
  double margin = 0.0;  // value - achieved
};

struct HoffmannOstenhof {
  double dirichlet = 0.0;
  double kinetic = 0.0;
  double margin = 0.0;  // kinetic - dirichlet
  bool pass = false;
};

/// Machine-readable record of one construction run: targets, achieved
/// observables, closed-form bounds with margins, and pass/fail.
struct Certificate {
  int version = 1;
  std::string ensemble;    // canonical | gc-entropy | gc-full
  Statistics statistics = Statistics::Fermion;

  // targets
  double target_particles = 0.0;  // N or Nbar
  double target_entropy = 0.0;
  std::string density_digest;

  // parameters
  long long m_states = 0;       // M
  int n_particles = 0;          // N (sector size used)
  double theta0 = -1.0;         // theta families
  double lambda_star = -1.0;    // Gamma(lambda, alpha) families
  std::string ordering = "shell";

  // achieved
  double entropy_nominal = 0.0;
  double entropy_exact = 0.0;
  double gram_dev = 0.0;
  double mean_n = 0.0;
  double kinetic = 0.0;
  double density_l1_deviation = 0.0;
  double entropy_residual = 0.0;
  double truncation_deficit = 0.0;

  std::vector<BoundEntry> bounds;
  HoffmannOstenhof hoffmann_ostenhof;
  bool pass = false;
  std::vector<std::string> notes;
};

inline constexpr double kEntropyTol = 1e-8;
inline constexpr double kDensityTol = 1e-8;
inline constexpr double kHoTol = 1e-6;
inline constexpr long long kMaxStates = 1000000;

/// Mixture entropy of the theta family:
/// S(theta) = -cos^2 ln(cos^2/M) - sin^2 ln(sin^2).
inline double theta_entropy(double theta, long long m) {
  const double c = std::cos(theta) * std::cos(theta);
  const double s = std::sin(theta) * std::sin(theta);
  double r = 0.0;
  if (c > 0.0) r -= c * std::log(c / static_cast<double>(m));
  if (s > 0.0) r -= s * std::log(s);
  return r;
}

/// Root of S(theta) = S_target on [0, pi/2]. The endpoints bracket
/// (S(0) = ln M >= S_target >= 0 = S(pi/2)); monotonicity is not assumed.
inline double match_entropy_theta(long long m, double s_target) {
  if (m < 1) throw Error(ErrorCode::BadInput, "M must be >= 1");
  const double ln_m = std::log(static_cast<double>(m));
  if (s_target < 0.0 || s_target > ln_m)
    throw Error(ErrorCode::TargetOutOfRange, "entropy target outside [0, ln M]");
  // cos(pi/2) is not an exact zero in floating point, so S(pi/2) bottoms
  // out around 1e-31 instead of 0; targets at or below that floor are the
  // pure right-endpoint state
  const double hi = 0.5 * std::numbers::pi;
  if (s_target <= theta_entropy(hi, m)) return hi;
  return bisect([m, s_target](double th) { return theta_entropy(th, m) - s_target; }, 0.0, hi);
}

/// Entropy of Gamma(lambda, alpha) at alpha = nbar/n - lambda.
inline double lambda_entropy(double lambda, int n, long long m, double nbar) {
  const double alpha = nbar / n - lambda;
  double r = 0.0;
  if (alpha > 0.0) r += alpha * std::log(static_cast<double>(m)) - alpha * std::log(alpha);
  if (lambda > 0.0) r -= lambda * std::log(lambda);
  const double vac = 1.0 - lambda - alpha;
  if (vac > 0.0) r -= vac * std::log(vac);
  return r;
}

inline double match_entropy_lambda(int n, long long m, double nbar, double s_target) {
  if (n < 1 || m < 1 || !(nbar > 0.0) || nbar > n + 1e-12)
    throw Error(ErrorCode::BadInput, "need 0 < Nbar <= N and M >= 1");
  const double hi = nbar / n;
  const double s_lo = lambda_entropy(hi, n, m, nbar);   // s(Nbar/N)
  const double s_hi = lambda_entropy(0.0, n, m, nbar);  // (Nbar/N) ln M + s(Nbar/N)
  if (s_target < s_lo - 1e-12 || s_target > s_hi + 1e-12)
    throw Error(ErrorCode::TargetOutOfRange, "entropy target outside [S(Nbar/N), S(0)]");
  return bisect([&](double l) { return lambda_entropy(l, n, m, nbar) - s_target; }, 0.0, hi);
}

/// Theorem-level canonical kinetic bound,
/// (1 + 4 pi^2 N^2 (e^{S/N} + 2^{1/N} + 2/N + xi)^2) * dirichlet,
/// xi = 1 for fermions and 0 for bosons.
inline double canonical_bound(int n, double s, Statistics stats, double dirichlet) {
  const double xi = stats == Statistics::Fermion ? 1.0 : 0.0;
  const double nn = n;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double base = std::exp(s / nn) + std::pow(2.0, 1.0 / nn) + 2.0 / nn + xi;
  return (1.0 + 4.0 * pi2 * nn * nn * base * base) * dirichlet;
}

/// Sharper pre-relaxation value from the same chain, with
/// (floor(e^S)+2)^{1/N} kept instead of e^{S/N} + 2^{1/N}.
inline double canonical_proof_chain_bound(int n, double s, Statistics stats, double dirichlet) {
  const double xi = stats == Statistics::Fermion ? 1.0 : 0.0;
  const double nn = n;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double m2 = std::floor(std::exp(s)) + 2.0;
  const double base = std::pow(m2, 1.0 / nn) + 2.0 / nn + xi;
  return (1.0 + 4.0 * pi2 * nn * nn * base * base) * dirichlet;
}

inline double gc_entropy_kinetic_bound(double s, double dirichlet) {
  return 5.0 * 4096.0 * (s + 3.0) * (s + 3.0) * dirichlet;
}

inline double gc_entropy_nmean_bound(double s) { return 16.0 * (s + 3.0); }

/// Grand-canonical (p, Nbar, S) kinetic bound,
/// 5 pi^2 (Nbar/xi_S + 1)^3 (e^{S (1/xi_S + 1/Nbar) / max(1, Nbar/xi_S)} + 5)^2 * dirichlet.
inline double gc_bound_thm3(double nbar, double s, double dirichlet) {
  if (!(nbar > 0.0) || !(s > 0.0))
    throw Error(ErrorCode::DomainError, "gc_bound_thm3 needs Nbar > 0 and S > 0");
  const double xi = xi_entropy(s);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double ratio = nbar / xi;
  const double expo = s * (1.0 / xi + 1.0 / nbar) / std::max(1.0, ratio);
  const double paren = std::exp(expo) + 5.0;
  return 5.0 * pi2 * (ratio + 1.0) * (ratio + 1.0) * (ratio + 1.0) * paren * paren * dirichlet;
}

/// Hoffmann-Ostenhof margin: kinetic energy of the state vs the Dirichlet
/// energy of its own density.
inline HoffmannOstenhof hoffmann_ostenhof_check(const MixedState& gamma) {
  gamma.density->require_dim1("hoffmann_ostenhof_check");
  GridFunction dens = state_density(gamma);
  HoffmannOstenhof ho;
  ho.dirichlet = detail::dirichlet_energy_arrays(dens.values, dens.spacing());
  ho.kinetic = kinetic_energy(gamma);
  ho.margin = ho.kinetic - ho.dirichlet;
  ho.pass = ho.kinetic >= ho.dirichlet - kHoTol;
  return ho;
}

namespace detail {

inline double l1_deviation(std::span<const double> a, std::span<const double> b, double h) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::abs(a[i] - b[i]);
  return trapezoid(d, h);
}

inline void finalize(Certificate& cert, const MixedState& gamma, double s_target) {
  cert.entropy_nominal = nominal_entropy(gamma);
  cert.entropy_exact = exact_entropy(gamma);
  cert.gram_dev = gram_deviation(gamma);
  cert.mean_n = mean_particles(gamma);
  cert.kinetic = kinetic_energy(gamma);
  cert.entropy_residual = std::abs(cert.entropy_nominal - s_target);
  cert.truncation_deficit =
      std::abs(gamma.density->mass() - gamma.density->raw_mass());
  cert.density_digest = density_digest(*gamma.density);
  cert.hoffmann_ostenhof = hoffmann_ostenhof_check(gamma);

  bool ok = cert.entropy_residual <= kEntropyTol &&
            cert.density_l1_deviation <= kDensityTol * std::max(1.0, cert.target_particles) &&
            std::abs(cert.mean_n - cert.target_particles) <=
                1e-12 * std::max(1.0, cert.target_particles) &&
            cert.hoffmann_ostenhof.pass;
  for (const auto& b : cert.bounds) ok = ok && b.margin >= -1e-9 * std::max(1.0, b.value);
  cert.pass = ok;
}

inline std::shared_ptr<const GridDensity> shared(const GridDensity& rho) {
  return std::make_shared<GridDensity>(rho);
}

}  // namespace detail

/**
 * Canonical (rho, N, S) construction: M = floor(e^S) + 1, the first M+1
 * shell-ordered N-particle configurations, and the theta mixture matched
 * to the entropy target. S = 0 is handled by the same formulas (the
 * mixture degenerates to the pure (M+1)-th state).
 */
inline std::pair<MixedState, Certificate> construct_canonical(const GridDensity& rho, int n,
                                                              double s, Statistics stats) {
  rho.require_dim1("construct_canonical");
  if (n < 1) throw Error(ErrorCode::BadInput, "N must be >= 1");
  if (!(s >= 0.0)) throw Error(ErrorCode::TargetOutOfRange, "S must be >= 0");
  if (std::abs(rho.mass() - n) > 1e-6 * n)
    throw Error(ErrorCode::TargetOutOfRange, "density mass must equal N");
  if (s > std::log(static_cast<double>(kMaxStates)))
    throw Error(ErrorCode::BudgetExceeded, "floor(e^S)+1 exceeds the state budget");

  const long long m = static_cast<long long>(std::floor(std::exp(s))) + 1;
  auto configs = enumerate_canonical(n, stats, static_cast<std::size_t>(m) + 1);
  const double theta0 = match_entropy_theta(m, s);
  const double c2 = std::cos(theta0) * std::cos(theta0);
  const double s2 = std::sin(theta0) * std::sin(theta0);

  std::vector<MixedState::Entry> entries;
  entries.reserve(configs.size());
  for (long long k = 0; k < m; ++k)
    entries.push_back({c2 / static_cast<double>(m), single_sector(configs[k])});
  entries.push_back({s2, single_sector(configs[m])});

  MixedState gamma = assemble(std::move(entries), detail::shared(rho), stats);

  Certificate cert;
  cert.ensemble = "canonical";
  cert.statistics = stats;
  cert.target_particles = n;
  cert.target_entropy = s;
  cert.m_states = m;
  cert.n_particles = n;
  cert.theta0 = theta0;

  GridFunction dens = state_density(gamma);
  cert.density_l1_deviation =
      detail::l1_deviation(dens.values, rho.values(), rho.spacing());

  const double dirichlet = dirichlet_energy(rho);
  const double achieved = kinetic_energy(gamma);
  cert.bounds.push_back({"canonical_statement", canonical_bound(n, s, stats, dirichlet),
                         canonical_bound(n, s, stats, dirichlet) - achieved});
  cert.bounds.push_back({"canonical_proof_chain",
                         canonical_proof_chain_bound(n, s, stats, dirichlet),
                         canonical_proof_chain_bound(n, s, stats, dirichlet) - achieved});
  detail::finalize(cert, gamma, s);
  return {std::move(gamma), std::move(cert)};
}

/**
 * Grand-canonical (p, S) construction over the mixed-radix Fock states.
 * Fermions certify the explicit bounds 5*2^12 (S+3)^2 * dirichlet and
 * Nbar <= 2^4 (S+3); for bosons the same construction is emitted with the
 * corresponding values logged as notes only (no explicit bosonic constant
 * is asserted).
 */
inline std::pair<MixedState, Certificate> construct_gc_density_entropy(const GridDensity& p,
                                                                       double s,
                                                                       Statistics stats) {
  p.require_dim1("construct_gc_density_entropy");
  if (!(s >= 0.0)) throw Error(ErrorCode::TargetOutOfRange, "S must be >= 0");
  if (std::abs(p.mass() - 1.0) > 1e-6)
    throw Error(ErrorCode::TargetOutOfRange, "normalized density must have mass 1");
  if (s > std::log(static_cast<double>(kMaxStates)))
    throw Error(ErrorCode::BudgetExceeded, "floor(e^S)+1 exceeds the state budget");

  const long long m = static_cast<long long>(std::floor(std::exp(s))) + 1;
  auto configs = enumerate_grand_canonical(stats, static_cast<std::size_t>(m) + 1);
  const double theta0 = match_entropy_theta(m, s);
  const double c2 = std::cos(theta0) * std::cos(theta0);
  const double s2 = std::sin(theta0) * std::sin(theta0);

  std::vector<MixedState::Entry> entries;
  entries.reserve(configs.size());
  for (long long k = 0; k < m; ++k) entries.push_back({c2 / static_cast<double>(m), configs[k]});
  entries.push_back({s2, configs[m]});

  MixedState gamma = assemble(std::move(entries), detail::shared(p), stats);

  Certificate cert;
  cert.ensemble = "gc-entropy";
  cert.statistics = stats;
  cert.target_particles = mean_particles(gamma);  // Nbar is an output here
  cert.target_entropy = s;
  cert.m_states = m;
  cert.n_particles = 0;
  cert.theta0 = theta0;

  GridFunction dens = state_density(gamma);
  const double nbar = mean_particles(gamma);
  std::vector<double> normalized(dens.values);
  if (nbar > 0.0)
    for (double& v : normalized) v /= nbar;
  cert.density_l1_deviation = detail::l1_deviation(normalized, p.values(), p.spacing());

  const double dirichlet = dirichlet_energy(p);
  const double achieved = kinetic_energy(gamma);
  const double kin_bound = gc_entropy_kinetic_bound(s, dirichlet);
  const double n_bound = gc_entropy_nmean_bound(s);
  if (stats == Statistics::Fermion) {
    cert.bounds.push_back({"gc_kinetic", kin_bound, kin_bound - achieved});
    cert.bounds.push_back({"gc_mean_particles", n_bound, n_bound - nbar});
  } else {
    char note[160];
    std::snprintf(note, sizeof note,
                  "bosonic explicit constant not asserted: kinetic=%.9g (fermionic-form bound "
                  "%.9g), mean_particles=%.9g (vs %.9g)",
                  achieved, kin_bound, nbar, n_bound);
    cert.notes.emplace_back(note);
  }
  detail::finalize(cert, gamma, s);
  return {std::move(gamma), std::move(cert)};
}

/**
 * Grand-canonical (p, Nbar, S) construction Gamma(lambda*, alpha*):
 * N-particle shell configurations embedded in sector N plus the vacuum,
 * with (N, M) chosen from the entropy scale xi_S and lambda* matched by
 * bisection. S = 0 requires integer Nbar and falls back to the pure
 * embedded ground configuration.
 */
inline std::pair<MixedState, Certificate> construct_gc_full(const GridDensity& p, double nbar,
                                                            double s, Statistics stats) {
  p.require_dim1("construct_gc_full");
  if (!(nbar > 0.0)) throw Error(ErrorCode::BadInput, "Nbar must be positive");
  if (!(s >= 0.0)) throw Error(ErrorCode::TargetOutOfRange, "S must be >= 0");
  if (std::abs(p.mass() - 1.0) > 1e-6)
    throw Error(ErrorCode::TargetOutOfRange, "normalized density must have mass 1");

  Certificate cert;
  cert.ensemble = "gc-full";
  cert.statistics = stats;
  cert.target_particles = nbar;
  cert.target_entropy = s;

  const double dirichlet = dirichlet_energy(p);

  if (s == 0.0) {
    // vanishing entropy forces a pure state, possible only at integer Nbar
    const double rounded = std::round(nbar);
    if (std::abs(nbar - rounded) > 1e-9)
      throw Error(ErrorCode::InfeasibleTarget,
                  "S = 0 with non-integer mean particle number is not representable");
    const int n = static_cast<int>(rounded);
    auto config = enumerate_canonical(n, stats, 1).front();
    MixedState gamma =
        assemble({{1.0, single_sector(config)}}, detail::shared(p), stats);
    cert.m_states = 0;
    cert.n_particles = n;
    cert.notes.emplace_back("pure-state fallback: S = 0, integer Nbar");
    GridFunction dens = state_density(gamma);
    std::vector<double> normalized(dens.values);
    for (double& v : normalized) v /= n;
    cert.density_l1_deviation = detail::l1_deviation(normalized, p.values(), p.spacing());
    const double achieved = kinetic_energy(gamma);
    const double bound = canonical_bound(n, 0.0, stats, n * dirichlet);
    cert.bounds.push_back({"pure_state_kinetic", bound, bound - achieved});
    detail::finalize(cert, gamma, 0.0);
    return {std::move(gamma), std::move(cert)};
  }

  const double xi = xi_entropy(s);
  int n;
  long long m;
  if (s >= std::numbers::ln2) {
    n = static_cast<int>(std::ceil(nbar));
    const double m_real = std::ceil(std::exp((1.0 + 1.0 / nbar) * s));
    if (!(m_real <= static_cast<double>(kMaxStates)))
      throw Error(ErrorCode::BudgetExceeded, "M exceeds the state budget");
    m = static_cast<long long>(m_real);
  } else {
    n = static_cast<int>(std::ceil(nbar / xi));
    const double m_real = std::ceil(std::exp(s * (1.0 / xi + 1.0 / nbar)));
    if (!(m_real <= static_cast<double>(kMaxStates)))
      throw Error(ErrorCode::BudgetExceeded, "M exceeds the state budget");
    m = static_cast<long long>(m_real);
  }

  auto configs = enumerate_canonical(n, stats, static_cast<std::size_t>(m) + 1);
  const double lambda = match_entropy_lambda(n, m, nbar, s);
  const double alpha = nbar / n - lambda;

  std::vector<MixedState::Entry> entries;
  entries.reserve(configs.size() + 1);
  entries.push_back({lambda, single_sector(configs[m])});
  for (long long k = 0; k < m; ++k)
    entries.push_back({alpha / static_cast<double>(m), single_sector(configs[k])});
  entries.push_back({1.0 - lambda - alpha, FockConfig{}});  // vacuum

  MixedState gamma = assemble(std::move(entries), detail::shared(p), stats);

  cert.m_states = m;
  cert.n_particles = n;
  cert.lambda_star = lambda;
  cert.notes.emplace_back(
      "xi_S branch convention: s_inverse(S) for S < ln 2, 1 for S >= ln 2");

  GridFunction dens = state_density(gamma);
  const double mean = mean_particles(gamma);
  std::vector<double> normalized(dens.values);
  if (mean > 0.0)
    for (double& v : normalized) v /= mean;
  cert.density_l1_deviation = detail::l1_deviation(normalized, p.values(), p.spacing());

  const double achieved = kinetic_energy(gamma);
  const double bound = gc_bound_thm3(nbar, s, dirichlet);
  cert.bounds.push_back({"gc_full_kinetic", bound, bound - achieved});
  detail::finalize(cert, gamma, s);
  return {std::move(gamma), std::move(cert)};
}

}  // namespace repstate
