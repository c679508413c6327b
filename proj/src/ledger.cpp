#include "nsp/ledger.hpp"

namespace nsp {

namespace {

void check_server_bounds(const ServerNode& s) {
  if (s.cpu_used < 0 || s.cpu_used > s.cpu_cap || s.ram_used < 0 || s.ram_used > s.ram_cap)
    throw InvariantError("ledger: usage out of bounds on server " + std::to_string(s.id));
}

void check_link_bounds(const PhysicalLink& l) {
  if (l.bw_used < 0 || l.bw_used > l.bw_cap)
    throw InvariantError("ledger: bandwidth out of bounds on link " + std::to_string(l.a) + "-" +
                         std::to_string(l.b));
}

}  // namespace

void reserve_host(Psn& psn, int32_t server_id, int64_t cpu, int64_t ram) {
  ServerNode& s = psn.server(server_id);
  s.cpu_used += cpu;
  s.ram_used += ram;
  check_server_bounds(s);
}

void unreserve_host(Psn& psn, int32_t server_id, int64_t cpu, int64_t ram) {
  reserve_host(psn, server_id, -cpu, -ram);
}

void reserve_path(Psn& psn, std::span<const int32_t> nodes, int64_t bw) {
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    PhysicalLink* l = psn.find_link(nodes[k], nodes[k + 1]);
    if (!l)
      throw InvariantError("ledger: path crosses missing link " + std::to_string(nodes[k]) + "-" +
                           std::to_string(nodes[k + 1]));
    l->bw_used += bw;
    check_link_bounds(*l);
  }
}

void unreserve_path(Psn& psn, std::span<const int32_t> nodes, int64_t bw) {
  reserve_path(psn, nodes, -bw);
}

namespace {

struct Delta {
  std::map<int32_t, std::pair<int64_t, int64_t>> hosts;          // server -> (cpu, ram)
  std::map<std::pair<int32_t, int32_t>, int64_t> link_bw;        // (a, b) a<b -> bw
};

Delta compute_delta(const Nspr& nspr, const Placement& p) {
  Delta d;
  for (size_t i = 0; i < nspr.vnfs.size(); ++i) {
    auto& h = d.hosts[p.vnf_host[i]];
    h.first += nspr.vnfs[i].cpu_req;
    h.second += nspr.vnfs[i].ram_req;
  }
  for (size_t li = 0; li < nspr.vlinks.size(); ++li) {
    const auto& path = p.vlink_path[li];
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      d.link_bw[{std::min(path[k], path[k + 1]), std::max(path[k], path[k + 1])}] +=
          nspr.vlinks[li].bw_req;
    }
  }
  return d;
}

void apply_delta(Psn& psn, const Delta& d, int64_t sign) {
  for (const auto& [sid, load] : d.hosts)
    reserve_host(psn, sid, sign * load.first, sign * load.second);
  for (const auto& [key, bw] : d.link_bw) {
    PhysicalLink* l = psn.find_link(key.first, key.second);
    if (!l) throw InvariantError("ledger: placement references missing link");
    l->bw_used += sign * bw;
    check_link_bounds(*l);
  }
}

}  // namespace

void commit(Psn& psn, const Nspr& nspr, const Placement& p) {
  auto violations = validate_placement(psn, nspr, p);
  if (!violations.empty()) throw CommitError(violations.front());
  apply_delta(psn, compute_delta(nspr, p), +1);
}

void release(Psn& psn, const Nspr& nspr, const Placement& p) {
  const Delta d = compute_delta(nspr, p);
  // verify before touching anything so a bad release is atomic too
  for (const auto& [sid, load] : d.hosts) {
    const ServerNode& s = psn.server(sid);
    if (s.cpu_used < load.first || s.ram_used < load.second)
      throw InvariantError("release: not committed (server " + std::to_string(sid) + ")");
  }
  for (const auto& [key, bw] : d.link_bw) {
    const PhysicalLink* l = psn.find_link(key.first, key.second);
    if (!l || l->bw_used < bw)
      throw InvariantError("release: not committed (link " + std::to_string(key.first) + "-" +
                           std::to_string(key.second) + ")");
  }
  apply_delta(psn, d, -1);
}

}  // namespace nsp
