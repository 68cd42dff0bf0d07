#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "repstate/densities.hpp"
#include "repstate/representability.hpp"
#include "repstate/states.hpp"

namespace repstate {

using Json = nlohmann::ordered_json;

/// {statistics, entries: [{weight, sectors: {n: [momenta]}}], density_ref}
inline Json state_to_json(const MixedState& gamma) {
  Json j;
  j["statistics"] = to_string(gamma.statistics);
  Json entries = Json::array();
  for (const auto& e : gamma.entries) {
    Json je;
    je["weight"] = e.weight;
    Json sectors = Json::object();
    for (const auto& [n, mom] : e.config.sectors) sectors[std::to_string(n)] = mom;
    je["sectors"] = std::move(sectors);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["density_ref"] = gamma.density_ref;
  return j;
}

inline MixedState state_from_json(const Json& j) {
  std::string stats_name = j.at("statistics").get<std::string>();
  Statistics stats;
  if (stats_name == "fermion")
    stats = Statistics::Fermion;
  else if (stats_name == "boson")
    stats = Statistics::Boson;
  else
    throw Error(ErrorCode::BadInput, "unknown statistics '" + stats_name + "'");

  std::string ref = j.at("density_ref").get<std::string>();
  auto density = std::make_shared<GridDensity>(make_density(parse_density_ref(ref)));

  std::vector<MixedState::Entry> entries;
  for (const auto& je : j.at("entries")) {
    MixedState::Entry e;
    e.weight = je.at("weight").get<double>();
    for (const auto& [key, mom] : je.at("sectors").items())
      e.config.sectors[std::stoi(key)] = mom.get<Momenta>();
    entries.push_back(std::move(e));
  }
  MixedState gamma = assemble(std::move(entries), std::move(density), stats);
  gamma.density_ref = ref;
  return gamma;
}

/// Stable-field-order certificate record.
inline Json certificate_to_json(const Certificate& c) {
  Json j;
  j["version"] = c.version;
  j["ensemble"] = c.ensemble;
  j["statistics"] = to_string(c.statistics);
  {
    Json t;
    if (c.ensemble == "canonical")
      t["N"] = c.target_particles;
    else
      t["Nbar"] = c.target_particles;
    t["S"] = c.target_entropy;
    t["density_digest"] = c.density_digest;
    j["targets"] = std::move(t);
  }
  {
    Json p;
    p["M"] = c.m_states;
    p["N"] = c.n_particles;
    if (c.theta0 >= 0.0) p["theta0"] = c.theta0;
    if (c.lambda_star >= 0.0) p["lambda_star"] = c.lambda_star;
    p["ordering"] = c.ordering;
    j["parameters"] = std::move(p);
  }
  {
    Json a;
    a["entropy_nominal"] = c.entropy_nominal;
    a["entropy_exact"] = c.entropy_exact;
    a["gram_deviation"] = c.gram_dev;
    a["mean_particles"] = c.mean_n;
    a["kinetic"] = c.kinetic;
    a["density_l1_deviation"] = c.density_l1_deviation;
    a["entropy_residual"] = c.entropy_residual;
    a["truncation_deficit"] = c.truncation_deficit;
    j["achieved"] = std::move(a);
  }
  {
    Json bs = Json::array();
    for (const auto& b : c.bounds) {
      Json jb;
      jb["name"] = b.name;
      jb["value"] = b.value;
      jb["margin"] = b.margin;
      bs.push_back(std::move(jb));
    }
    j["bounds"] = std::move(bs);
  }
  {
    Json ho;
    ho["dirichlet"] = c.hoffmann_ostenhof.dirichlet;
    ho["kinetic"] = c.hoffmann_ostenhof.kinetic;
    ho["margin"] = c.hoffmann_ostenhof.margin;
    j["hoffmann_ostenhof"] = std::move(ho);
  }
  j["pass"] = c.pass;
  j["notes"] = c.notes;
  return j;
}

/// One JSON line per configuration: {index, sectors, J, sum_sq}.
inline Json config_to_json_line(std::size_t index, const FockConfig& c) {
  Json j;
  j["index"] = index;
  Json sectors = Json::object();
  for (const auto& [n, mom] : c.sectors) sectors[std::to_string(n)] = mom;
  j["sectors"] = std::move(sectors);
  j["J"] = c.is_vacuum() ? 0 : max_momentum(c);
  j["sum_sq"] = detail::config_sum_sq(c);
  return j;
}

}  // namespace repstate
