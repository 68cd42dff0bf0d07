#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "repstate/errors.hpp"
#include "repstate/scalars.hpp"

namespace repstate {

using BigInt = boost::multiprecision::cpp_int;

enum class Statistics { Fermion, Boson };
enum class Ensemble { Canonical, Grand };

inline const char* to_string(Statistics s) {
  return s == Statistics::Fermion ? "fermion" : "boson";
}

/// Sorted momentum labels of one N-particle configuration: strictly
/// increasing for fermions, non-decreasing (multiset) for bosons.
using Momenta = std::vector<int>;

/// Multi-sector Fock filling: particle number -> configuration of that
/// size, at most one per sector. The empty map is the vacuum. Occupied
/// sectors carry uniform amplitude 1/sqrt(#occupied sectors).
struct FockConfig {
  std::map<int, Momenta> sectors;

  bool is_vacuum() const noexcept { return sectors.empty(); }
  bool operator==(const FockConfig&) const = default;
  auto operator<=>(const FockConfig&) const = default;
};

inline FockConfig single_sector(Momenta momenta) {
  FockConfig c;
  if (!momenta.empty()) c.sectors.emplace(static_cast<int>(momenta.size()), std::move(momenta));
  return c;
}

/// Binomial coefficient "choose p among q" = q! / (p! (q-p)!), exact;
/// 0 whenever q < p or q < 0.
inline BigInt binomial(int p, long long q) {
  if (p < 0) throw Error(ErrorCode::BadInput, "binomial needs p >= 0");
  if (q < p || q < 0) return 0;
  BigInt r = 1;
  for (int i = 1; i <= p; ++i) {
    r *= (q - p + i);
    r /= i;  // exact: r is C(q-p+i, i) after this step
  }
  return r;
}

/// Natural log of a positive big integer (msb-normalized, accurate to ~1e-15).
inline double log_big(const BigInt& x) {
  if (x <= 0) throw Error(ErrorCode::DomainError, "log_big needs a positive integer");
  const unsigned msb = boost::multiprecision::msb(x);
  if (msb < 900) return std::log(x.convert_to<double>());
  BigInt shifted = x >> (msb - 900);
  return std::log(shifted.convert_to<double>()) + static_cast<double>(msb - 900) * std::numbers::ln2;
}

inline int max_momentum(const Momenta& m) {
  if (m.empty()) throw Error(ErrorCode::VacuumHasNoMomentum, "empty configuration");
  int j = 0;
  for (int k : m) j = std::max(j, std::abs(k));
  return j;
}

inline int max_momentum(const FockConfig& c) {
  if (c.is_vacuum()) throw Error(ErrorCode::VacuumHasNoMomentum, "vacuum has no momentum");
  int j = 0;
  for (const auto& [n, mom] : c.sectors) j = std::max(j, max_momentum(mom));
  return j;
}

inline long long sum_sq(const Momenta& m) {
  long long s = 0;
  for (int k : m) s += static_cast<long long>(k) * k;
  return s;
}

inline long long sum_sq(const FockConfig& c) {
  long long s = 0;
  for (const auto& [n, mom] : c.sectors) s += sum_sq(mom);
  return s;
}

struct Ordering {
  enum class Mode { Shell, Kinetic };
  Mode mode = Mode::Shell;
};

namespace detail {

/// Ascending lexicographic tie-break (canonical enumeration order).
inline bool lex_less(const Momenta& a, const Momenta& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Descending lexicographic tie-break (grand-canonical sector alphabets;
/// reproduces the phi_0, phi_1, phi_-1, {0,1}, {-1,0}, ... listing).
inline bool lex_greater(const Momenta& a, const Momenta& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), std::greater<int>());
}

template <typename TieBreak>
inline void sort_block(std::vector<Momenta>& block, TieBreak tie) {
  std::sort(block.begin(), block.end(), [&](const Momenta& a, const Momenta& b) {
    long long qa = sum_sq(a), qb = sum_sq(b);
    if (qa != qb) return qa < qb;
    return tie(a, b);
  });
}

/// All size-k combinations (fermion) of values[lo..], appended to `out`
/// with `prefix` as the chosen head.
inline void combinations(const std::vector<int>& values, std::size_t lo, int k, Momenta& prefix,
                         std::vector<Momenta>& out) {
  if (k == 0) {
    Momenta m = prefix;
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
    return;
  }
  for (std::size_t i = lo; i + k <= values.size() + 0u && i < values.size(); ++i) {
    prefix.push_back(values[i]);
    combinations(values, i + 1, k - 1, prefix, out);
    prefix.pop_back();
  }
}

/// All size-k multisets (boson) over values[lo..].
inline void multisets(const std::vector<int>& values, std::size_t lo, int k, Momenta& prefix,
                      std::vector<Momenta>& out) {
  if (k == 0) {
    Momenta m = prefix;
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
    return;
  }
  for (std::size_t i = lo; i < values.size(); ++i) {
    prefix.push_back(values[i]);
    multisets(values, i, k - 1, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<int> momentum_range(int lo, int hi) {
  std::vector<int> v;
  for (int k = lo; k <= hi; ++k) v.push_back(k);
  return v;
}

/// Configurations with max |momentum| exactly J, unsorted. Composed as
/// (config containing +J) U (config containing -J but not +J) so nothing
/// is generated twice.
inline std::vector<Momenta> shell_exact(int n, int J, Statistics stats) {
  std::vector<Momenta> out;
  Momenta prefix;
  if (J == 0) {
    if (stats == Statistics::Boson)
      out.push_back(Momenta(n, 0));
    else if (n == 1)
      out.push_back({0});
    return out;
  }
  if (stats == Statistics::Fermion) {
    prefix = {J};
    combinations(momentum_range(-J, J - 1), 0, n - 1, prefix, out);
    prefix = {-J};
    combinations(momentum_range(-J + 1, J - 1), 0, n - 1, prefix, out);
  } else {
    prefix = {J};
    multisets(momentum_range(-J, J), 0, n - 1, prefix, out);
    prefix = {-J};  // no +J in the rest, but further -J copies are allowed
    multisets(momentum_range(-J, J - 1), 0, n - 1, prefix, out);
  }
  return out;
}

}  // namespace detail

/**
 * Lazy enumeration of N-particle configurations.
 *
 * Shell mode: key (max |momentum|, sum of momenta^2, ascending lex).
 * Kinetic mode: key (sum of momenta^2, ascending lex); for the phase
 * orbitals the exact kinetic energy is an increasing affine function of
 * the momentum-square sum, so this realizes kinetic-energy ordering.
 */
class CanonicalEnumerator {
 public:
  CanonicalEnumerator(int n, Statistics stats, Ordering ordering = {})
      : n_(n), stats_(stats), ordering_(ordering) {
    if (n < 1) throw Error(ErrorCode::BadInput, "particle number must be >= 1");
  }

  Momenta next() {
    if (ordering_.mode == Ordering::Mode::Shell) {
      while (pos_ >= buffer_.size()) pump_shell();
      return buffer_[pos_++];
    }
    // kinetic mode: a configuration with shell > J has sum_sq > J^2, so
    // everything in the pool with sum_sq <= J^2 is already final.
    while (pool_pos_ >= pool_.size() ||
           sum_sq(pool_[pool_pos_]) > static_cast<long long>(shell_done_) * shell_done_)
      pump_pool();
    return pool_[pool_pos_++];
  }

  std::vector<Momenta> take(std::size_t count) {
    std::vector<Momenta> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

 private:
  void pump_shell() {
    auto block = detail::shell_exact(n_, next_shell_++, stats_);
    detail::sort_block(block, detail::lex_less);
    if (pos_ > 0) {
      buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<long>(pos_));
      pos_ = 0;
    }
    buffer_.insert(buffer_.end(), block.begin(), block.end());
  }

  void pump_pool() {
    auto block = detail::shell_exact(n_, shell_done_ + 1, stats_);
    if (pool_pos_ > 0) {
      pool_.erase(pool_.begin(), pool_.begin() + static_cast<long>(pool_pos_));
      pool_pos_ = 0;
    }
    pool_.insert(pool_.end(), block.begin(), block.end());
    detail::sort_block(pool_, detail::lex_less);
    ++shell_done_;
  }

  int n_;
  Statistics stats_;
  Ordering ordering_;
  // shell mode
  std::vector<Momenta> buffer_;
  std::size_t pos_ = 0;
  int next_shell_ = 0;
  // kinetic mode
  std::vector<Momenta> pool_;
  std::size_t pool_pos_ = 0;
  int shell_done_ = -1;
};

inline std::vector<Momenta> enumerate_canonical(int n, Statistics stats, std::size_t count,
                                                Ordering ordering = {}) {
  CanonicalEnumerator e(n, stats, ordering);
  return e.take(count);
}

/**
 * Lazy enumeration of multi-sector Fock fillings by momentum steps.
 *
 * At step L the momentum alphabet is {-L..L} and the sectors are
 * n = 1..2L+1 (fermions) or n = 1..L (bosons). All fillings not already
 * produced at earlier steps are appended, iterating sector selections as
 * a mixed-radix counter with the sector-1 digit fastest; digit 0 is the
 * empty sector, and each sector's alphabet is ordered by
 * (max |momentum|, sum of momenta^2, descending lex) so earlier-step
 * configurations form a stable prefix. The vacuum is never yielded.
 */
class GrandEnumerator {
 public:
  explicit GrandEnumerator(Statistics stats) : stats_(stats) { begin_step(); }

  FockConfig next() {
    for (;;) {
      if (!advance()) {
        ++step_;
        begin_step();
        continue;
      }
      if (is_old()) continue;
      return current();
    }
  }

  std::vector<FockConfig> take(std::size_t count) {
    std::vector<FockConfig> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

 private:
  int sector_count(int step) const {
    return stats_ == Statistics::Fermion ? 2 * step + 1 : step;
  }

  void begin_step() {
    while (sector_count(step_) < 1) ++step_;
    const int s = sector_count(step_);
    const int s_prev = step_ > 0 ? sector_count(step_ - 1) : 0;
    alphabets_.assign(s, {});
    old_sizes_.assign(s, 0);
    for (int n = 1; n <= s; ++n) {
      std::vector<Momenta> all;
      for (int J = 0; J <= step_; ++J) {
        auto block = detail::shell_exact(n, J, stats_);
        detail::sort_block(block, detail::lex_greater);
        all.insert(all.end(), block.begin(), block.end());
      }
      std::size_t old_count = 0;
      if (n <= s_prev)
        for (const auto& c : all)
          if (max_momentum(c) <= step_ - 1) ++old_count;
      alphabets_[n - 1] = std::move(all);
      old_sizes_[n - 1] = old_count;
    }
    digits_.assign(s, 0);
    has_prev_step_ = step_ > 0 && sector_count(step_ - 1) > 0;
  }

  /// Mixed-radix increment, sector-1 digit fastest. False when the step
  /// is exhausted.
  bool advance() {
    std::size_t i = 0;
    while (i < digits_.size()) {
      if (++digits_[i] <= alphabets_[i].size()) return true;
      digits_[i] = 0;
      ++i;
    }
    return false;
  }

  bool is_old() const {
    if (!has_prev_step_) return false;
    bool any = false;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (digits_[i] == 0) continue;
      any = true;
      if (digits_[i] > old_sizes_[i]) return false;
    }
    return any;
  }

  FockConfig current() const {
    FockConfig c;
    for (std::size_t i = 0; i < digits_.size(); ++i)
      if (digits_[i] > 0) c.sectors.emplace(static_cast<int>(i + 1), alphabets_[i][digits_[i] - 1]);
    return c;
  }

  Statistics stats_;
  int step_ = 0;
  std::vector<std::vector<Momenta>> alphabets_;
  std::vector<std::size_t> old_sizes_;
  std::vector<std::size_t> digits_;
  bool has_prev_step_ = false;
};

inline std::vector<FockConfig> enumerate_grand_canonical(Statistics stats, std::size_t count) {
  GrandEnumerator e(stats);
  return e.take(count);
}

/**
 * Closed-form configuration counts per momentum shell.
 *
 * canonical fermion: #\{J <= floor(N/2)+l\} = C(N among N+2l+1) for even N,
 *                    C(N among N+2l) for odd N;
 * canonical boson:   #\{J <= l\} = C(N among N+2l);
 * grand fermion:     prod_{n=1..2l+1} (1 + C(n among 2l+1)) - 1;
 * grand boson:       h(l) = prod_{n=1..l} (1 + C(2l among 2l+n)) - 1
 *                    (non-vacuum selections; the +1-including variant is
 *                    h(l)+1).
 */
inline BigInt block_counts(int n, int l, Statistics stats, Ensemble ensemble) {
  if (l < 0) throw Error(ErrorCode::BadInput, "shell index must be >= 0");
  if (ensemble == Ensemble::Canonical) {
    if (n < 1) throw Error(ErrorCode::BadInput, "particle number must be >= 1");
    if (stats == Statistics::Fermion)
      return n % 2 == 0 ? binomial(n, n + 2 * l + 1) : binomial(n, n + 2 * l);
    return binomial(n, n + 2 * l);
  }
  if (stats == Statistics::Fermion) {
    BigInt p = 1;
    for (int s = 1; s <= 2 * l + 1; ++s) p *= 1 + binomial(s, 2 * l + 1);
    return p - 1;
  }
  BigInt p = 1;
  for (int s = 1; s <= l; ++s) p *= 1 + binomial(2 * l, 2 * l + s);
  return p - 1;
}

/**
 * Closed-form upper bound on the maximum absolute momentum of the t-th
 * enumerated configuration:
 *
 *   canonical fermion: N/2 (t^{1/N} + 1 + 2/N)
 *   canonical boson:   N/2 (t^{1/N} + 2/N)
 *   grand fermion:     sqrt(2) sqrt(1 + ln t) + 1/2
 *   grand boson:       xi(ln t / 2), xi the inverse of x^2 ln x
 *
 * The grand-boson branch evaluates the reported form verbatim; see the
 * counting-identity report for its observed validity.
 */
inline double j_bound(double t, int n, Statistics stats, Ensemble ensemble) {
  if (!(t >= 1.0)) throw Error(ErrorCode::BadInput, "j_bound needs index t >= 1");
  if (ensemble == Ensemble::Canonical) {
    if (n < 1) throw Error(ErrorCode::BadInput, "particle number must be >= 1");
    const double nn = n;
    double base = std::pow(t, 1.0 / nn) + 2.0 / nn;
    if (stats == Statistics::Fermion) base += 1.0;
    return 0.5 * nn * base;
  }
  if (stats == Statistics::Fermion) return std::sqrt(2.0) * std::sqrt(1.0 + std::log(t)) + 0.5;
  return xi_reciprocal(0.5 * std::log(t));
}

}  // namespace repstate
