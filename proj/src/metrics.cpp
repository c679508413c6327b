#include "nsp/metrics.hpp"

namespace nsp {

const char* to_string(Group g) {
  switch (g) {
    case Group::Edc: return "edc";
    case Group::Cdc: return "cdc";
    case Group::Ccp: return "ccp";
    case Group::All: return "all";
  }
  return "?";
}

std::optional<Ratio> acceptance_ratio(uint64_t accepts, uint64_t arrivals) {
  if (accepts > arrivals)
    throw std::invalid_argument("acceptance_ratio: accepts exceed arrivals");
  if (arrivals == 0) return std::nullopt;
  return Ratio{static_cast<int64_t>(accepts), static_cast<int64_t>(arrivals)};
}

UtilizationMap utilization(const Psn& psn) {
  UtilizationMap out;
  auto add = [](Ratio& r, int64_t used, int64_t cap) {
    r.num += used;
    r.den += cap;
  };
  auto slot = [](DcType t) { return static_cast<size_t>(t); };

  for (const ServerNode& s : psn.servers) {
    auto it = psn.dc_index.find(s.dc_id);
    const size_t g = slot(it == psn.dc_index.end() ? DcType::Ccp : it->second.type);
    add(out.cpu[g], s.cpu_used, s.cpu_cap);
    add(out.ram[g], s.ram_used, s.ram_cap);
    add(out.cpu[static_cast<size_t>(Group::All)], s.cpu_used, s.cpu_cap);
    add(out.ram[static_cast<size_t>(Group::All)], s.ram_used, s.ram_cap);
  }
  for (const PhysicalLink& l : psn.links) {
    // more-edge tier of the two endpoints: EDC < CDC < CCP
    const size_t g = std::min(slot(psn.node_tier(l.a)), slot(psn.node_tier(l.b)));
    add(out.bw[g], l.bw_used, l.bw_cap);
    add(out.bw[static_cast<size_t>(Group::All)], l.bw_used, l.bw_cap);
  }
  return out;
}

}  // namespace nsp
