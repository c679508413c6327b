#pragma once

// Key-metrics model: acceptance ratio and per-tier resource utilization,
// sampled per event and on a fixed tick. Ratios are kept as integer pairs so
// exports can round-trip exactly.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsp/placement.hpp"
#include "nsp/psn.hpp"

namespace nsp {

struct Ratio {
  int64_t num = 0;
  int64_t den = 0;  // den == 0 marks an undefined ratio

  bool defined() const { return den > 0; }
  double value() const { return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Utilization groups: the three DC tiers plus the global aggregate.
enum class Group { Edc = 0, Cdc = 1, Ccp = 2, All = 3 };
constexpr std::array<Group, 4> kGroups{Group::Edc, Group::Cdc, Group::Ccp, Group::All};
const char* to_string(Group g);

struct UtilizationMap {
  std::array<Ratio, 4> cpu, ram, bw;

  Ratio cpu_of(Group g) const { return cpu[static_cast<size_t>(g)]; }
  Ratio ram_of(Group g) const { return ram[static_cast<size_t>(g)]; }
  Ratio bw_of(Group g) const { return bw[static_cast<size_t>(g)]; }
  friend bool operator==(const UtilizationMap&, const UtilizationMap&) = default;
};

// accepts/arrivals; nullopt when nothing has arrived yet. Throws
// std::invalid_argument on accepts > arrivals (counter corruption).
std::optional<Ratio> acceptance_ratio(uint64_t accepts, uint64_t arrivals);

// Sum(used)/Sum(cap) per resource class and group. Links are attributed to
// the more-edge tier of their two endpoints so edge congestion stays visible.
UtilizationMap utilization(const Psn& psn);

struct MetricsSample {
  int64_t t = 0;
  uint64_t arrivals = 0, accepts = 0, rejects = 0;  // cumulative
  Ratio acceptance;                                 // undefined until the first arrival
  UtilizationMap util;
  int64_t decision_us = 0;  // wall time of the most recent placement decision
};

struct MetricsSeries {
  std::string algo;
  uint64_t seed = 0;
  std::string config_hash;
  std::vector<MetricsSample> samples;
};

// One line per arrival in the decision log. The placement itself is kept so
// comparison runs can serialize the full decision, not just its cost.
struct DecisionRecord {
  int64_t t = 0;
  uint64_t nspr_id = 0;
  std::string algo;
  bool accepted = false;
  std::optional<Cost> cost;
  std::optional<Placement> placement;
  int64_t decision_us = 0;
};

}  // namespace nsp
