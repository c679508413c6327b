#pragma once

// Physical substrate model: servers, switches, undirected links, and the
// hierarchical edge/core/cloud topology generator.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsp {

struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class DcType { Edc, Cdc, Ccp };

const char* to_string(DcType t);
std::optional<DcType> dc_type_from_string(std::string_view s);

struct ServerNode {
  int32_t id = -1;
  int32_t dc_id = -1;
  int64_t cpu_cap = 0;
  int64_t ram_cap = 0;
  int64_t cpu_used = 0;
  int64_t ram_used = 0;
  int64_t cpu_weight = 1;
  int64_t ram_weight = 1;

  int64_t cpu_free() const { return cpu_cap - cpu_used; }
  int64_t ram_free() const { return ram_cap - ram_used; }
};

struct SwitchNode {
  int32_t id = -1;
  int32_t dc_id = -1;  // -1 marks a transit switch outside any DC
  bool is_access = false;
};

// Undirected; bandwidth is a single pool shared by both directions.
struct PhysicalLink {
  int32_t a = -1;
  int32_t b = -1;
  int64_t bw_cap = 0;
  int64_t bw_used = 0;
  int64_t latency = 0;

  int64_t bw_free() const { return bw_cap - bw_used; }
};

struct DcInfo {
  DcType type = DcType::Edc;
  std::vector<int32_t> members;  // node ids; rebuilt by Psn::finalize()
};

struct Neighbor {
  int32_t node = -1;
  int32_t link = -1;  // index into Psn::links
};

class Psn {
 public:
  std::vector<ServerNode> servers;
  std::vector<SwitchNode> switches;
  std::vector<PhysicalLink> links;
  std::map<int32_t, DcInfo> dc_index;

  // Normalizes and validates structure, then rebuilds adjacency and id
  // lookups. Call after any structural edit (node/link add or remove).
  // Throws std::invalid_argument on a malformed graph.
  void finalize();

  int32_t node_count() const { return static_cast<int32_t>(servers.size() + switches.size()); }
  bool node_exists(int32_t id) const;
  bool is_server(int32_t id) const;
  const ServerNode& server(int32_t id) const;
  ServerNode& server(int32_t id);
  const SwitchNode* find_switch(int32_t id) const;
  const PhysicalLink* find_link(int32_t a, int32_t b) const;
  PhysicalLink* find_link(int32_t a, int32_t b);
  std::span<const Neighbor> neighbors(int32_t id) const;

  // Tier of the DC owning the node; nodes outside any DC count as core cloud.
  DcType node_tier(int32_t id) const;

  bool connected() const;
  std::vector<int32_t> access_switch_ids() const;  // ascending

 private:
  std::vector<int32_t> server_pos_;  // node id -> index into servers, or -1
  std::vector<int32_t> switch_pos_;
  std::map<std::pair<int32_t, int32_t>, int32_t> link_pos_;
  std::vector<std::vector<Neighbor>> adj_;
};

struct TierServerSpec {
  int64_t cpu_cap = 0;
  int64_t ram_cap = 0;
  int64_t cpu_weight = 1;
  int64_t ram_weight = 1;
};

struct LinkSpec {
  int64_t bw = 0;
  int64_t latency = 0;
};

// Defaults reproduce the demo substrate: 15 edge + 5 core + 1 cloud DC,
// 1008 servers total. Capacities and link figures are artifact choices and
// all of them are sweepable through the experiment config.
struct PsnConfig {
  int32_t n_edc = 15;
  int32_t n_cdc = 5;
  int32_t n_ccp = 1;
  int32_t servers_per_edc = 16;
  int32_t servers_per_cdc = 64;
  int32_t servers_per_ccp = 448;

  TierServerSpec edc{32, 64, 1, 1};
  TierServerSpec cdc{64, 128, 1, 1};
  TierServerSpec ccp{128, 256, 1, 1};

  LinkSpec intra_dc{10000, 1};
  LinkSpec edc_cdc{40000, 50};
  LinkSpec cdc_cdc{100000, 100};
  LinkSpec cdc_ccp{100000, 100};
  // degenerate wirings (missing middle tier, single-tier substrates)
  LinkSpec edc_ccp{40000, 150};
  LinkSpec edc_edc{40000, 50};
  LinkSpec ccp_ccp{100000, 100};

  uint64_t seed = 0;  // carried into run metadata; the generator is shape-deterministic

  int64_t total_servers() const;
  int32_t total_dcs() const { return n_edc + n_cdc + n_ccp; }
  void validate() const;  // throws std::invalid_argument
};

// Builds the hierarchical substrate: one switch per DC with its servers in a
// star; EDC switches attach round-robin to CDC switches, CDC switches form a
// ring and attach to the CCP switch; every EDC switch is an access point.
// Deterministic for a given config. All residuals start at capacity.
Psn build_psn(const PsnConfig& config);

}  // namespace nsp
