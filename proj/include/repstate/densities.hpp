#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "repstate/errors.hpp"
#include "repstate/grid.hpp"

namespace repstate {

/**
 * A reproducible recipe for a GridDensity: a named analytic profile (or a
 * CSV file) plus the grid and target mass. Serialized into state files as
 * `density_ref` so `certify` can rebuild the exact density.
 *
 *   "gaussian:1;span=8;points=2001;mass=2"
 *   "csv:/path/to/rho.csv;mass=3"
 */
struct DensitySpec {
  enum class Kind { Gaussian, Exponential, CosineBump, Csv };

  Kind kind = Kind::Gaussian;
  double param = 1.0;     // sigma | rate | half-width
  std::string path;       // csv only
  double span = 8.0;      // grid on [-span, span]
  int points = 2001;      // odd, >= 201
  double mass = 1.0;

  std::string to_ref() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
      case Kind::Gaussian: os << "gaussian:" << param; break;
      case Kind::Exponential: os << "exponential:" << param; break;
      case Kind::CosineBump: os << "cosine-bump:" << param; break;
      case Kind::Csv: os << "csv:" << path; break;
    }
    if (kind != Kind::Csv) os << ";span=" << span << ";points=" << points;
    os << ";mass=" << mass;
    return os.str();
  }
};

inline DensitySpec parse_density_ref(const std::string& ref) {
  DensitySpec spec;
  std::string head = ref;
  std::string rest;
  if (auto semi = ref.find(';'); semi != std::string::npos) {
    head = ref.substr(0, semi);
    rest = ref.substr(semi + 1);
  }
  auto colon = head.find(':');
  std::string name = colon == std::string::npos ? head : head.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : head.substr(colon + 1);
  if (name == "gaussian")
    spec.kind = DensitySpec::Kind::Gaussian;
  else if (name == "exponential")
    spec.kind = DensitySpec::Kind::Exponential;
  else if (name == "cosine-bump")
    spec.kind = DensitySpec::Kind::CosineBump;
  else if (name == "csv")
    spec.kind = DensitySpec::Kind::Csv;
  else
    throw Error(ErrorCode::BadInput, "unknown density '" + name + "'");
  if (spec.kind == DensitySpec::Kind::Csv) {
    spec.path = arg;
  } else {
    if (arg.empty()) throw Error(ErrorCode::BadInput, "density parameter missing in '" + head + "'");
    spec.param = std::stod(arg);
    if (!(spec.param > 0.0)) throw Error(ErrorCode::BadInput, "density parameter must be > 0");
  }
  std::istringstream is(rest);
  std::string kv;
  while (std::getline(is, kv, ';')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    if (key == "span")
      spec.span = std::stod(val);
    else if (key == "points")
      spec.points = std::stoi(val);
    else if (key == "mass")
      spec.mass = std::stod(val);
  }
  return spec;
}

/// CSV with two columns `x,rho`; optional header line starting with `#`
/// or `x,`; rows must be sorted by x.
inline std::vector<std::pair<double, double>> load_csv_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open CSV file '" + path + "'");
  std::vector<std::pair<double, double>> samples;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && (line[0] == '#' || line.rfind("x,", 0) == 0)) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream ls(line);
    std::string xs, vs;
    if (!std::getline(ls, xs, ',') || !std::getline(ls, vs, ','))
      throw Error(ErrorCode::BadInput, "CSV row needs two comma-separated columns: '" + line + "'");
    double x = std::stod(xs);
    double v = std::stod(vs);
    if (!samples.empty() && x <= samples.back().first)
      throw Error(ErrorCode::BadInput, "CSV rows must be sorted by x");
    samples.emplace_back(x, v);
  }
  if (samples.size() < 3) throw Error(ErrorCode::BadInput, "CSV needs at least 3 rows");
  return samples;
}

inline std::vector<std::pair<double, double>> sample_profile(const DensitySpec& spec) {
  if (spec.kind == DensitySpec::Kind::Csv) return load_csv_samples(spec.path);
  if (spec.points < 201 || spec.points % 2 == 0)
    throw Error(ErrorCode::BadInput, "grid points must be odd and >= 201");
  if (!(spec.span > 0.0)) throw Error(ErrorCode::BadInput, "grid span must be positive");
  std::vector<std::pair<double, double>> s(spec.points);
  const double h = 2.0 * spec.span / (spec.points - 1);
  for (int i = 0; i < spec.points; ++i) {
    // symmetric grid with an exact midpoint at x = 0; the unit-mass
    // profile is pre-scaled to the target so `mass - raw_mass` measures
    // the truncated tail alone
    double x = (i - (spec.points - 1) / 2) * h;
    double v = 0.0;
    switch (spec.kind) {
      case DensitySpec::Kind::Gaussian: {
        double sg = spec.param;
        v = std::exp(-x * x / (2.0 * sg * sg)) / (sg * std::sqrt(2.0 * std::numbers::pi));
        break;
      }
      case DensitySpec::Kind::Exponential: {
        double r = spec.param;
        v = 0.5 * r * std::exp(-r * std::abs(x));
        break;
      }
      case DensitySpec::Kind::CosineBump: {
        double w = spec.param;
        if (std::abs(x) < w) {
          double c = std::cos(0.5 * std::numbers::pi * x / w);
          v = c * c / w;
        }
        break;
      }
      case DensitySpec::Kind::Csv: break;
    }
    s[i] = {x, v * spec.mass};
  }
  return s;
}

inline GridDensity make_density(const DensitySpec& spec) {
  auto samples = sample_profile(spec);
  return load_density(samples, spec.mass);
}

/// FNV-1a over the raw sample bytes; certificates carry it so a target
/// density can be matched to a run without shipping the samples.
inline std::string density_digest(const GridDensity& rho) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double d) {
    unsigned char b[sizeof(double)];
    std::memcpy(b, &d, sizeof(double));
    for (unsigned char c : b) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (double x : rho.nodes()) mix(x);
  for (double v : rho.values()) mix(v);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace repstate
