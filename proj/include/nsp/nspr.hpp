#pragma once

// Slice request model: VNF chains with an access-anchored leading virtual
// link, the randomized request generator, and the arrival/departure trace
// generator driving the online simulation.

#include <cstdint>
#include <random>
#include <vector>

#include "nsp/psn.hpp"

namespace nsp {

// Simulation time is an integer tick count; one nominal time unit is
// kTicksPerUnit ticks. Rates and horizons in configs are given in time units.
constexpr int64_t kTicksPerUnit = 1'000'000;

inline int64_t to_ticks(double units) { return static_cast<int64_t>(units * kTicksPerUnit + 0.5); }

// Endpoint sentinel for the leading virtual link of every chain.
constexpr int32_t kAccess = -1;

struct Vnf {
  int32_t index = 0;
  int64_t cpu_req = 0;
  int64_t ram_req = 0;
};

struct VirtualLink {
  int32_t src = kAccess;  // VNF index, or kAccess for the user-side leg
  int32_t dst = 0;
  int64_t bw_req = 0;
  int64_t lat_req = 0;
};

struct Nspr {
  uint64_t id = 0;
  std::vector<Vnf> vnfs;
  std::vector<VirtualLink> vlinks;  // access->v0, v0->v1, ..., size == vnfs.size()
  int64_t e2e_latency = 0;          // bound on summed path latencies incl. the access leg
  int32_t access_node = -1;
  int64_t arrival_time = 0;
  int64_t holding_time = 1;
};

// Throws std::invalid_argument when the chain structure or requirements are
// malformed (empty chain, broken link sequence, negative demands, ...).
void validate_nspr(const Nspr& nspr);

struct Range {
  int64_t lo = 0;
  int64_t hi = 0;
};

struct NsprParams {
  Range chain_len{1, 3};
  Range vnf_cpu{1, 4};
  Range vnf_ram{1, 4};
  Range vlink_bw{1, 10};
  Range vlink_lat{10, 100};
  Range e2e_lat{50, 300};
  double holding_mean = 20.0;  // time units, exponential

  void validate() const;  // throws std::invalid_argument
};

enum class EventKind { Arrival, Departure };

struct Event {
  int64_t t = 0;
  EventKind kind = EventKind::Arrival;
  uint64_t nspr_id = 0;
  Nspr nspr;  // populated for arrivals only
};

struct EventTrace {
  std::vector<Event> events;
  int64_t horizon = 0;  // arrival cutoff; departures may fall beyond it
};

void validate_trace(const EventTrace& trace);

// Draws every field uniformly from its configured range (holding time
// exponential), anchored at a uniformly chosen access switch.
Nspr generate_nspr(const NsprParams& params, const Psn& psn, std::mt19937_64& rng);

// Poisson arrivals at `arrival_rate` per time unit over [0, horizon_units],
// each paired with a departure at arrival + holding. Events are sorted by
// time with departures ordered before arrivals at equal timestamps.
EventTrace generate_trace(const NsprParams& params, double arrival_rate, double horizon_units,
                          const Psn& psn, uint64_t seed);

}  // namespace nsp
