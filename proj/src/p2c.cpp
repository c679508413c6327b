#include "nsp/p2c.hpp"

#include <algorithm>
#include <set>

#include "nsp/ledger.hpp"
#include "nsp/rng.hpp"

namespace nsp {

void P2cConfig::validate() const {
  if (resample_attempts < 1)
    throw std::invalid_argument("p2c config: resample_attempts must be >= 1");
  if (backtrack_budget < 0)
    throw std::invalid_argument("p2c config: backtrack_budget must be >= 0");
  if (sample_choices != 1 && sample_choices != 2)
    throw std::invalid_argument("p2c config: sample_choices must be 1 or 2");
}

std::pair<uint64_t, uint64_t> sample_two_distinct(std::mt19937_64& rng, uint64_t n) {
  const uint64_t i = uniform_u64(rng, n);
  uint64_t j = uniform_u64(rng, n - 1);
  if (j >= i) ++j;
  return {i, j};
}

namespace {

struct Step {
  int32_t host = -1;
  std::vector<int32_t> path;
  int64_t path_latency = 0;
  int64_t cpu = 0, ram = 0, bw = 0;
};

struct Candidate {
  int32_t host;
  PathResult path;
  int64_t incremental_cost;
};

}  // namespace

std::optional<Placement> solve_p2c(Psn& psn, const Nspr& nspr, const P2cConfig& cfg,
                                   const MinLatencyTable& lat_table, std::mt19937_64& rng) {
  cfg.validate();
  validate_nspr(nspr);
  if (!psn.node_exists(nspr.access_node))
    throw std::invalid_argument("solve_p2c: access node not in substrate");
  if (lat_table.nodes() != psn.node_count())
    throw std::invalid_argument("solve_p2c: latency table does not match the substrate");

  const size_t n_vnf = nspr.vnfs.size();
  std::vector<Step> chosen;
  chosen.reserve(n_vnf);
  std::vector<std::set<int32_t>> excluded(n_vnf);
  int64_t e2e_left = nspr.e2e_latency;
  int32_t backtracks_left = cfg.backtrack_budget;

  auto undo_step = [&](const Step& st) {
    unreserve_path(psn, st.path, st.bw);
    unreserve_host(psn, st.host, st.cpu, st.ram);
    e2e_left += st.path_latency;
  };
  auto undo_all = [&] {
    while (!chosen.empty()) {
      undo_step(chosen.back());
      chosen.pop_back();
    }
  };

  size_t vi = 0;
  while (vi < n_vnf) {
    const Vnf& vnf = nspr.vnfs[vi];
    const VirtualLink& vlink = nspr.vlinks[vi];
    const int32_t anchor = vi == 0 ? nspr.access_node : chosen.back().host;
    const int64_t lat_bound = std::min(vlink.lat_req, e2e_left);

    // prefilter: enough CPU/RAM under tentative reservations, and reachable
    // within the latency bound on the unloaded topology
    std::vector<int32_t> pool;
    for (const ServerNode& srv : psn.servers) {
      if (excluded[vi].count(srv.id)) continue;
      if (srv.cpu_free() < vnf.cpu_req || srv.ram_free() < vnf.ram_req) continue;
      if (lat_table.at(anchor, srv.id) > lat_bound) continue;
      pool.push_back(srv.id);
    }

    std::optional<Candidate> pick;
    if (!pool.empty()) {
      // sample the initial candidates, then resample replacements for any
      // that fail the full path check, up to resample_attempts draws
      std::vector<int32_t> sampled;
      const size_t want = std::min<size_t>(cfg.sample_choices, pool.size());
      if (want == 2) {
        auto [i, j] = sample_two_distinct(rng, pool.size());
        sampled = {pool[i], pool[j]};
      } else {
        sampled = {pool[uniform_u64(rng, pool.size())]};
      }
      std::set<int32_t> drawn(sampled.begin(), sampled.end());

      std::vector<Candidate> survivors;
      int32_t resamples_left = cfg.resample_attempts;
      while (!sampled.empty() || (survivors.size() < want && resamples_left > 0)) {
        int32_t host;
        if (!sampled.empty()) {
          host = sampled.back();
          sampled.pop_back();
        } else {
          std::vector<int32_t> rest;
          for (int32_t id : pool)
            if (!drawn.count(id)) rest.push_back(id);
          if (rest.empty()) break;
          host = rest[uniform_u64(rng, rest.size())];
          drawn.insert(host);
          --resamples_left;
        }
        auto path = constrained_shortest_path(psn, anchor, host, vlink.bw_req, lat_bound);
        if (!path) continue;
        const ServerNode& srv = psn.server(host);
        const int64_t cost = vnf.cpu_req * srv.cpu_weight + vnf.ram_req * srv.ram_weight +
                             vlink.bw_req * path->hops;
        survivors.push_back({host, std::move(*path), cost});
      }
      for (const Candidate& c : survivors) {
        if (!pick || c.incremental_cost < pick->incremental_cost ||
            (c.incremental_cost == pick->incremental_cost && c.host < pick->host))
          pick = c;
      }
    }

    if (!pick) {
      if (vi > 0 && backtracks_left > 0) {
        --backtracks_left;
        excluded[vi - 1].insert(chosen.back().host);
        for (size_t j = vi; j < n_vnf; ++j) excluded[j].clear();
        undo_step(chosen.back());
        chosen.pop_back();
        --vi;
        continue;
      }
      undo_all();
      return std::nullopt;
    }

    Step st{pick->host, pick->path.nodes, pick->path.latency, vnf.cpu_req, vnf.ram_req,
            vlink.bw_req};
    reserve_host(psn, st.host, st.cpu, st.ram);
    reserve_path(psn, st.path, st.bw);
    e2e_left -= st.path_latency;
    chosen.push_back(std::move(st));
    ++vi;
  }

  Placement placement;
  placement.nspr_id = nspr.id;
  for (const Step& st : chosen) {
    placement.vnf_host.push_back(st.host);
    placement.vlink_path.push_back(st.path);
  }
  undo_all();
  if (!validate_placement(psn, nspr, placement).empty())
    throw InvariantError("solve_p2c: produced an invalid placement");
  return placement;
}

}  // namespace nsp
