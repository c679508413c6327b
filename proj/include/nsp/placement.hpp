#pragma once

// Shared placement machinery: the decision representation, the full validity
// check against current residuals, the cost model, and bandwidth/latency
// constrained pathfinding. Everything here is read-only over the substrate.

#include <optional>
#include <string>

#include "nsp/nspr.hpp"
#include "nsp/psn.hpp"

namespace nsp {

struct Placement {
  uint64_t nspr_id = 0;
  std::vector<int32_t> vnf_host;                // VNF index -> server id
  std::vector<std::vector<int32_t>> vlink_path; // vlink index -> node sequence; empty = co-located
};

struct Violation {
  enum class Kind {
    UnmappedVnf,   // a: VNF index
    NodeCpu,       // a: server id
    NodeRam,       // a: server id
    LinkBw,        // a, b: link endpoints
    BrokenPath,    // a: vlink index
    VlinkLatency,  // a: vlink index
    E2eLatency
  };
  Kind kind = Kind::E2eLatency;
  int32_t a = -1;
  int32_t b = -1;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Cost {
  int64_t node_term = 0;
  int64_t bw_hop_term = 0;
  int64_t total() const { return node_term + bw_hop_term; }
  friend bool operator==(const Cost&, const Cost&) = default;
};

// Empty result iff the placement satisfies every constraint against current
// residuals: per-server CPU/RAM sums (co-located VNFs aggregated), per-link
// bandwidth sums across virtual links, per-vlink path latency, the end-to-end
// latency budget, and path well-formedness. Violations are reported in a
// stable order: unmapped VNFs, node capacities, path/vlink checks, link
// bandwidth, end-to-end budget.
std::vector<Violation> validate_placement(const Psn& psn, const Nspr& nspr, const Placement& p);

// node_term = sum over VNFs of cpu_req*cpu_weight + ram_req*ram_weight on the
// host; bw_hop_term = sum over vlinks of bw_req * hop count. Assumes a valid
// placement.
Cost placement_cost(const Psn& psn, const Nspr& nspr, const Placement& p);

struct PathResult {
  std::vector<int32_t> nodes;  // includes both endpoints; empty when src == dst
  int64_t latency = 0;
  int32_t hops = 0;
};

// Minimum-hop simple path among links with bandwidth residual >= bw_req and
// total latency <= lat_bound; ties broken by smaller latency, then by
// node-id sequence. Label-correcting search keeping per-node Pareto sets
// over (hops, latency). Returns nullopt when no feasible path exists.
std::optional<PathResult> constrained_shortest_path(const Psn& psn, int32_t src, int32_t dst,
                                                    int64_t bw_req, int64_t lat_bound);

// All-pairs minimum latency over the static topology (bandwidth ignored).
// Load-invariant; rebuild only after structural changes.
class MinLatencyTable {
 public:
  static constexpr int64_t kUnreachable = INT64_MAX / 4;

  MinLatencyTable() = default;
  explicit MinLatencyTable(const Psn& psn);

  int64_t at(int32_t from, int32_t to) const { return dist_[from * n_ + to]; }
  int32_t nodes() const { return n_; }

 private:
  int32_t n_ = 0;
  std::vector<int64_t> dist_;
};

}  // namespace nsp
