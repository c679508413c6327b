#include "nsp/placement.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace nsp {

std::string Violation::describe() const {
  switch (kind) {
    case Kind::UnmappedVnf: return "VNF " + std::to_string(a) + " unmapped";
    case Kind::NodeCpu: return "CPU exceeded on server " + std::to_string(a);
    case Kind::NodeRam: return "RAM exceeded on server " + std::to_string(a);
    case Kind::LinkBw:
      return "bandwidth exceeded on link " + std::to_string(a) + "-" + std::to_string(b);
    case Kind::BrokenPath: return "broken path for virtual link " + std::to_string(a);
    case Kind::VlinkLatency: return "latency bound exceeded on virtual link " + std::to_string(a);
    case Kind::E2eLatency: return "end-to-end latency budget exceeded";
  }
  return "?";
}

namespace {

// Resolves a virtual link endpoint to a substrate node id.
int32_t endpoint_node(const Nspr& nspr, const Placement& p, int32_t endpoint) {
  if (endpoint == kAccess) return nspr.access_node;
  return p.vnf_host[endpoint];
}

}  // namespace

std::vector<Violation> validate_placement(const Psn& psn, const Nspr& nspr, const Placement& p) {
  std::vector<Violation> out;
  const size_t n_vnf = nspr.vnfs.size();

  bool structurally_usable = p.vnf_host.size() == n_vnf && p.vlink_path.size() == nspr.vlinks.size();
  for (size_t i = 0; i < n_vnf; ++i) {
    bool mapped = i < p.vnf_host.size() && psn.is_server(p.vnf_host[i]);
    if (!mapped) {
      out.push_back({Violation::Kind::UnmappedVnf, static_cast<int32_t>(i), -1});
      structurally_usable = false;
    }
  }
  if (!structurally_usable) return out;  // host/path sums below need every VNF resolved

  // per-server CPU/RAM sums over co-located VNFs of this request
  std::map<int32_t, std::pair<int64_t, int64_t>> node_load;
  for (size_t i = 0; i < n_vnf; ++i) {
    auto& load = node_load[p.vnf_host[i]];
    load.first += nspr.vnfs[i].cpu_req;
    load.second += nspr.vnfs[i].ram_req;
  }
  for (const auto& [sid, load] : node_load) {
    const ServerNode& s = psn.server(sid);
    if (load.first > s.cpu_free()) out.push_back({Violation::Kind::NodeCpu, sid, -1});
    if (load.second > s.ram_free()) out.push_back({Violation::Kind::NodeRam, sid, -1});
  }

  // paths: endpoints, simplicity, adjacency, per-vlink latency, e2e budget
  std::map<std::pair<int32_t, int32_t>, int64_t> link_load;
  int64_t e2e = 0;
  bool e2e_known = true;
  for (size_t li = 0; li < nspr.vlinks.size(); ++li) {
    const VirtualLink& vl = nspr.vlinks[li];
    const std::vector<int32_t>& path = p.vlink_path[li];
    const int32_t from = endpoint_node(nspr, p, vl.src);
    const int32_t to = endpoint_node(nspr, p, vl.dst);

    if (path.empty()) {
      if (from != to) {
        out.push_back({Violation::Kind::BrokenPath, static_cast<int32_t>(li), -1});
        e2e_known = false;
      }
      continue;  // co-located: zero latency, zero bandwidth
    }

    bool broken = path.size() < 2 || path.front() != from || path.back() != to;
    std::set<int32_t> visited;
    int64_t lat = 0;
    if (!broken) {
      for (int32_t node : path) {
        if (!psn.node_exists(node) || !visited.insert(node).second) {
          broken = true;
          break;
        }
      }
    }
    if (!broken) {
      for (size_t k = 0; k + 1 < path.size(); ++k) {
        const PhysicalLink* l = psn.find_link(path[k], path[k + 1]);
        if (!l) {
          broken = true;
          break;
        }
        lat += l->latency;
        link_load[{std::min(path[k], path[k + 1]), std::max(path[k], path[k + 1])}] += vl.bw_req;
      }
    }
    if (broken) {
      out.push_back({Violation::Kind::BrokenPath, static_cast<int32_t>(li), -1});
      e2e_known = false;
      continue;
    }
    if (lat > vl.lat_req)
      out.push_back({Violation::Kind::VlinkLatency, static_cast<int32_t>(li), -1});
    e2e += lat;
  }

  for (const auto& [key, load] : link_load) {
    const PhysicalLink* l = psn.find_link(key.first, key.second);
    if (load > l->bw_free()) out.push_back({Violation::Kind::LinkBw, key.first, key.second});
  }

  if (e2e_known && e2e > nspr.e2e_latency) out.push_back({Violation::Kind::E2eLatency, -1, -1});
  return out;
}

Cost placement_cost(const Psn& psn, const Nspr& nspr, const Placement& p) {
  Cost cost;
  for (size_t i = 0; i < nspr.vnfs.size(); ++i) {
    const ServerNode& s = psn.server(p.vnf_host[i]);
    cost.node_term += nspr.vnfs[i].cpu_req * s.cpu_weight + nspr.vnfs[i].ram_req * s.ram_weight;
  }
  for (size_t li = 0; li < nspr.vlinks.size(); ++li) {
    const auto& path = p.vlink_path[li];
    if (path.size() >= 2)
      cost.bw_hop_term += nspr.vlinks[li].bw_req * static_cast<int64_t>(path.size() - 1);
  }
  return cost;
}

namespace {

struct Label {
  int32_t hops;
  int64_t lat;
  int32_t node;
  int32_t parent;  // index into the label arena, -1 at the source
};

std::vector<int32_t> reconstruct(const std::vector<Label>& arena, int32_t idx) {
  std::vector<int32_t> nodes;
  for (int32_t i = idx; i != -1; i = arena[i].parent) nodes.push_back(arena[i].node);
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace

std::optional<PathResult> constrained_shortest_path(const Psn& psn, int32_t src, int32_t dst,
                                                    int64_t bw_req, int64_t lat_bound) {
  if (!psn.node_exists(src) || !psn.node_exists(dst))
    throw std::invalid_argument("constrained_shortest_path: unknown endpoint");
  if (bw_req < 0 || lat_bound < 0)
    throw std::invalid_argument("constrained_shortest_path: negative requirement");
  if (src == dst) return PathResult{{}, 0, 0};

  std::vector<Label> arena;
  // queue entries: (hops, lat, insertion seq) -> label index; seq makes pop order total
  using QKey = std::tuple<int32_t, int64_t, uint64_t>;
  std::priority_queue<std::pair<QKey, int32_t>, std::vector<std::pair<QKey, int32_t>>,
                      std::greater<>> queue;
  std::vector<std::vector<int32_t>> pareto(psn.node_count());  // accepted label indices per node
  uint64_t seq = 0;

  arena.push_back({0, 0, src, -1});
  queue.push({{0, 0, seq++}, 0});

  std::optional<std::pair<int32_t, int64_t>> best_key;  // (hops, lat) of the first dst label
  std::vector<int32_t> dst_labels;

  while (!queue.empty()) {
    auto [qkey, idx] = queue.top();
    queue.pop();
    const Label lab = arena[idx];
    if (best_key && std::make_pair(lab.hops, lab.lat) > *best_key) break;

    // dominance against accepted labels at this node; on an exact (hops, lat)
    // tie keep the lexicographically smaller prefix
    bool dominated = false;
    for (int32_t prev : pareto[lab.node]) {
      const Label& q = arena[prev];
      if (q.hops <= lab.hops && q.lat <= lab.lat) {
        if (q.hops == lab.hops && q.lat == lab.lat &&
            reconstruct(arena, idx) < reconstruct(arena, prev)) {
          continue;  // equal cost, better sequence: admit alongside
        }
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    pareto[lab.node].push_back(idx);

    if (lab.node == dst) {
      if (!best_key) best_key = std::make_pair(lab.hops, lab.lat);
      if (*best_key == std::make_pair(lab.hops, lab.lat)) dst_labels.push_back(idx);
      continue;
    }

    for (const Neighbor& nb : psn.neighbors(lab.node)) {
      const PhysicalLink& link = psn.links[nb.link];
      if (link.bw_free() < bw_req) continue;
      const int64_t nlat = lab.lat + link.latency;
      if (nlat > lat_bound) continue;
      arena.push_back({lab.hops + 1, nlat, nb.node, idx});
      queue.push({{lab.hops + 1, nlat, seq++}, static_cast<int32_t>(arena.size() - 1)});
    }
  }

  if (dst_labels.empty()) return std::nullopt;
  std::vector<int32_t> best_nodes;
  for (int32_t idx : dst_labels) {
    auto nodes = reconstruct(arena, idx);
    if (best_nodes.empty() || nodes < best_nodes) best_nodes = std::move(nodes);
  }
  PathResult res;
  res.hops = static_cast<int32_t>(best_nodes.size() - 1);
  res.latency = best_key->second;
  res.nodes = std::move(best_nodes);
  return res;
}

MinLatencyTable::MinLatencyTable(const Psn& psn) {
  n_ = psn.node_count();
  dist_.assign(static_cast<size_t>(n_) * n_, kUnreachable);
  using Entry = std::pair<int64_t, int32_t>;
  for (int32_t src = 0; src < n_; ++src) {
    if (!psn.node_exists(src)) continue;
    int64_t* row = dist_.data() + static_cast<size_t>(src) * n_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    row[src] = 0;
    queue.push({0, src});
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (d > row[u]) continue;
      for (const Neighbor& nb : psn.neighbors(u)) {
        const int64_t nd = d + psn.links[nb.link].latency;
        if (nd < row[nb.node]) {
          row[nb.node] = nd;
          queue.push({nd, nb.node});
        }
      }
    }
  }
}

}  // namespace nsp
