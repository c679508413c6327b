#pragma once

// Discrete-event engine: replays an arrival/departure trace against a
// substrate, invoking a placement algorithm per arrival and releasing
// resources per departure.

#include "nsp/exact.hpp"
#include "nsp/metrics.hpp"
#include "nsp/nspr.hpp"
#include "nsp/p2c.hpp"

namespace nsp {

enum class Algo { Exact, P2c, Both };

const char* to_string(Algo a);
std::optional<Algo> algo_from_string(std::string_view s);

struct SimConfig {
  Algo algo = Algo::P2c;
  ExactConfig exact;
  P2cConfig p2c;
  double sample_interval = 1.0;  // time units between tick samples; 0 disables ticks
  uint64_t seed = 0;
  bool timing = false;           // measure per-decision wall time (breaks byte determinism)
  uint64_t coherence_every = 0;  // cross-check ledger vs active set every N events; 0 = end only
};

struct ActiveSlice {
  Nspr nspr;
  Placement placement;
};

struct SimState {
  int64_t clock = 0;
  Psn psn;
  std::map<uint64_t, ActiveSlice> active;
  uint64_t arrivals = 0, accepts = 0, rejects = 0;
};

struct SimResult {
  MetricsSeries series;
  std::vector<DecisionRecord> decisions;
  SimState state;
};

// Runs one algorithm (cfg.algo must not be Both) over the whole trace.
// Departures of rejected requests are skipped. Deterministic given
// (psn, trace, cfg) when cfg.timing is off.
SimResult run_simulation(const Psn& psn, const EventTrace& trace, const SimConfig& cfg);

struct CompareResult {
  SimResult exact;
  SimResult p2c;
};

// Both algorithms against independent substrate copies fed the identical
// trace; series and decision logs align by arrival.
CompareResult replay_compare(const Psn& psn, const EventTrace& trace, const SimConfig& cfg);

}  // namespace nsp
