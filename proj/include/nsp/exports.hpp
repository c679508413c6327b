#pragma once

// File exports and parsers: metrics CSV/JSONL, decision logs, trace JSONL,
// DOT views of substrate and request graphs, and JSON forms of the core
// types. All numeric rendering is shortest-round-trip so re-parsing a CSV
// reproduces the exported values exactly.

#include <nlohmann/json_fwd.hpp>

#include "nsp/metrics.hpp"
#include "nsp/nspr.hpp"
#include "nsp/placement.hpp"
#include "nsp/psn.hpp"

namespace nsp {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

uint64_t fnv1a64(std::string_view s);
std::string hex64(uint64_t v);

// shortest round-trip decimal form
std::string format_double(double v);

extern const char* const kMetricsCsvHeader;

// The CSV projection of one sample: ratios as doubles, one column each.
struct MetricsCsvRow {
  int64_t t = 0;
  uint64_t arrivals = 0, accepts = 0, rejects = 0;
  std::optional<double> acceptance;
  std::array<double, 4> util_cpu{}, util_ram{}, util_bw{};
  int64_t decision_us = 0;

  friend bool operator==(const MetricsCsvRow&, const MetricsCsvRow&) = default;
};

MetricsCsvRow to_csv_row(const MetricsSample& s);

void export_csv(const MetricsSeries& series, const std::string& path);
std::vector<MetricsCsvRow> parse_metrics_csv(const std::string& path);

void export_jsonl(const MetricsSeries& series, const std::string& path);
void write_decision_log(const std::vector<DecisionRecord>& log, const std::string& path);

// DOT: undirected graph for the substrate (servers as boxes "id cpu/ram",
// switches as ellipses, links labeled "bw,lat"), directed path for a request.
std::string to_dot(const Psn& psn);
std::string to_dot(const Nspr& nspr);
void export_dot(const Psn& psn, const std::string& path);
void export_dot(const Nspr& nspr, const std::string& path);

nlohmann::json to_json(const Psn& psn);
Psn psn_from_json(const nlohmann::json& j);
void save_psn(const Psn& psn, const std::string& path);
Psn load_psn(const std::string& path);

nlohmann::json to_json(const Nspr& nspr);
Nspr nspr_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Placement& p, const std::optional<Cost>& cost = std::nullopt);

// Trace files are JSON Lines, one event per line:
//   {"t":..., "kind":"arrival", "nspr":{...}}
//   {"t":..., "kind":"departure", "id":...}
// The horizon is not stored; loading derives it from the last event unless
// the caller overrides it.
void save_trace(const EventTrace& trace, const std::string& path);
EventTrace load_trace(const std::string& path, std::optional<int64_t> horizon = std::nullopt);

}  // namespace nsp
