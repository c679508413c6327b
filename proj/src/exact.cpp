#include "nsp/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "nsp/ledger.hpp"

namespace nsp {

void ExactConfig::validate() const {
  if (hop_bound && *hop_bound < 1)
    throw std::invalid_argument("exact config: hop_bound must be >= 1");
  if (time_budget_ms && *time_budget_ms < 0)
    throw std::invalid_argument("exact config: time_budget_ms must be >= 0");
}

namespace {

using Clock = std::chrono::steady_clock;

struct CandidatePath {
  std::vector<int32_t> nodes;  // empty = co-located with the anchor
  int64_t latency = 0;
  int32_t hops = 0;
};

struct Search {
  Psn& psn;
  const Nspr& nspr;
  int32_t hop_bound = 0;
  bool has_deadline = false;
  Clock::time_point deadline = {};
  bool exhausted = false;
  uint64_t steps = 0;

  int64_t best_cost = std::numeric_limits<int64_t>::max();
  std::optional<Placement> best = {};

  Placement cur = {};
  int64_t cur_cost = 0;
  int64_t e2e_left = 0;

  bool out_of_time() {
    if (!has_deadline) return false;
    if ((steps++ & 0xFF) == 0 && Clock::now() >= deadline) exhausted = true;
    return exhausted;
  }

  // All simple paths src->dst feasible under current tentative residuals,
  // sorted ascending by (hops, latency, node sequence).
  std::vector<CandidatePath> feasible_paths(int32_t src, int32_t dst, int64_t bw_req,
                                            int64_t lat_bound) {
    std::vector<CandidatePath> out;
    if (src == dst) {
      out.push_back({{}, 0, 0});
      return out;
    }
    std::vector<char> visited(psn.node_count(), 0);
    std::vector<int32_t> stack{src};
    visited[src] = 1;

    auto dfs = [&](auto&& self, int32_t node, int64_t lat) -> void {
      if (out_of_time()) return;
      for (const Neighbor& nb : psn.neighbors(node)) {
        if (visited[nb.node]) continue;
        const PhysicalLink& link = psn.links[nb.link];
        if (link.bw_free() < bw_req) continue;
        const int64_t nlat = lat + link.latency;
        if (nlat > lat_bound) continue;
        if (static_cast<int32_t>(stack.size()) > hop_bound) continue;  // stack.size() == hops so far + 1
        stack.push_back(nb.node);
        if (nb.node == dst) {
          out.push_back({stack, nlat, static_cast<int32_t>(stack.size() - 1)});
        } else {
          visited[nb.node] = 1;
          self(self, nb.node, nlat);
          visited[nb.node] = 0;
        }
        stack.pop_back();
      }
    };
    dfs(dfs, src, 0);
    std::sort(out.begin(), out.end(), [](const CandidatePath& x, const CandidatePath& y) {
      return std::tie(x.hops, x.latency, x.nodes) < std::tie(y.hops, y.latency, y.nodes);
    });
    return out;
  }

  void dfs_vnf(size_t vi) {
    if (exhausted) return;
    if (vi == nspr.vnfs.size()) {
      if (cur_cost < best_cost) {
        best_cost = cur_cost;
        best = cur;
      }
      return;
    }
    const Vnf& vnf = nspr.vnfs[vi];
    const VirtualLink& vlink = nspr.vlinks[vi];
    const int32_t anchor = vi == 0 ? nspr.access_node : cur.vnf_host[vi - 1];
    const int64_t lat_bound = std::min(vlink.lat_req, e2e_left);

    for (const ServerNode& srv : psn.servers) {  // ascending id
      if (out_of_time()) return;
      if (srv.cpu_free() < vnf.cpu_req || srv.ram_free() < vnf.ram_req) continue;
      const int64_t node_term = vnf.cpu_req * srv.cpu_weight + vnf.ram_req * srv.ram_weight;
      if (cur_cost + node_term >= best_cost) continue;

      for (const CandidatePath& path : feasible_paths(anchor, srv.id, vlink.bw_req, lat_bound)) {
        const int64_t step_cost = node_term + vlink.bw_req * path.hops;
        if (cur_cost + step_cost >= best_cost) break;  // paths sorted by hops: no cheaper one follows

        reserve_host(psn, srv.id, vnf.cpu_req, vnf.ram_req);
        reserve_path(psn, path.nodes, vlink.bw_req);
        cur.vnf_host[vi] = srv.id;
        cur.vlink_path[vi] = path.nodes;
        cur_cost += step_cost;
        e2e_left -= path.latency;

        dfs_vnf(vi + 1);

        e2e_left += path.latency;
        cur_cost -= step_cost;
        unreserve_path(psn, path.nodes, vlink.bw_req);
        unreserve_host(psn, srv.id, vnf.cpu_req, vnf.ram_req);
        if (exhausted) return;
      }
    }
  }
};

}  // namespace

ExactResult solve_exact(Psn& psn, const Nspr& nspr, const ExactConfig& cfg) {
  cfg.validate();
  validate_nspr(nspr);
  if (!psn.node_exists(nspr.access_node))
    throw std::invalid_argument("solve_exact: access node not in substrate");

  Search search{psn, nspr, cfg.hop_bound.value_or(std::numeric_limits<int32_t>::max())};
  if (cfg.time_budget_ms) {
    search.has_deadline = true;
    search.deadline = Clock::now() + std::chrono::milliseconds(*cfg.time_budget_ms);
  }
  search.cur.nspr_id = nspr.id;
  search.cur.vnf_host.assign(nspr.vnfs.size(), -1);
  search.cur.vlink_path.assign(nspr.vlinks.size(), {});
  search.e2e_left = nspr.e2e_latency;

  search.dfs_vnf(0);

  ExactResult res;
  res.budget_exhausted = search.exhausted;
  res.placement = std::move(search.best);
  if (res.placement) {
    if (!validate_placement(psn, nspr, *res.placement).empty())
      throw InvariantError("solve_exact: produced an invalid placement");
    if (placement_cost(psn, nspr, *res.placement).total() != search.best_cost)
      throw InvariantError("solve_exact: cost bookkeeping mismatch");
  }
  return res;
}

}  // namespace nsp
