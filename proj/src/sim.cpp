#include "nsp/sim.hpp"

#include <chrono>

#include "nsp/ledger.hpp"
#include "nsp/rng.hpp"

namespace nsp {

const char* to_string(Algo a) {
  switch (a) {
    case Algo::Exact: return "exact";
    case Algo::P2c: return "p2c";
    case Algo::Both: return "both";
  }
  return "?";
}

std::optional<Algo> algo_from_string(std::string_view s) {
  if (s == "exact") return Algo::Exact;
  if (s == "p2c") return Algo::P2c;
  if (s == "both") return Algo::Both;
  return std::nullopt;
}

namespace {

// Recomputes usage totals from the active set and compares them with the
// ledger; any drift is an engine bug.
void check_coherence(const SimState& st) {
  std::map<int32_t, std::pair<int64_t, int64_t>> host_use;
  std::map<std::pair<int32_t, int32_t>, int64_t> link_use;
  for (const auto& [id, slice] : st.active) {
    for (size_t i = 0; i < slice.nspr.vnfs.size(); ++i) {
      auto& h = host_use[slice.placement.vnf_host[i]];
      h.first += slice.nspr.vnfs[i].cpu_req;
      h.second += slice.nspr.vnfs[i].ram_req;
    }
    for (size_t li = 0; li < slice.nspr.vlinks.size(); ++li) {
      const auto& path = slice.placement.vlink_path[li];
      for (size_t k = 0; k + 1 < path.size(); ++k)
        link_use[{std::min(path[k], path[k + 1]), std::max(path[k], path[k + 1])}] +=
            slice.nspr.vlinks[li].bw_req;
    }
  }
  for (const ServerNode& s : st.psn.servers) {
    auto it = host_use.find(s.id);
    const int64_t cpu = it == host_use.end() ? 0 : it->second.first;
    const int64_t ram = it == host_use.end() ? 0 : it->second.second;
    if (s.cpu_used != cpu || s.ram_used != ram)
      throw InvariantError("sim: ledger drift on server " + std::to_string(s.id) + " at t=" +
                           std::to_string(st.clock) + " (active slices: " +
                           std::to_string(st.active.size()) + ")");
  }
  for (const PhysicalLink& l : st.psn.links) {
    auto it = link_use.find({l.a, l.b});
    const int64_t bw = it == link_use.end() ? 0 : it->second;
    if (l.bw_used != bw)
      throw InvariantError("sim: ledger drift on link " + std::to_string(l.a) + "-" +
                           std::to_string(l.b) + " at t=" + std::to_string(st.clock));
  }
}

}  // namespace

SimResult run_simulation(const Psn& psn, const EventTrace& trace, const SimConfig& cfg) {
  if (cfg.algo == Algo::Both)
    throw std::invalid_argument("run_simulation: use replay_compare for algo=both");
  if (cfg.sample_interval < 0)
    throw std::invalid_argument("run_simulation: sample_interval must be >= 0");
  cfg.exact.validate();
  cfg.p2c.validate();

  SimResult res;
  SimState& st = res.state;
  st.psn = psn;
  res.series.algo = to_string(cfg.algo);
  res.series.seed = cfg.seed;

  MinLatencyTable lat_table;
  std::mt19937_64 rng(derive_seed(cfg.seed, 2));
  if (cfg.algo == Algo::P2c) lat_table = MinLatencyTable(st.psn);

  int64_t last_decision_us = 0;
  auto sample = [&](int64_t t) {
    MetricsSample ms;
    ms.t = t;
    ms.arrivals = st.arrivals;
    ms.accepts = st.accepts;
    ms.rejects = st.rejects;
    if (auto ratio = acceptance_ratio(st.accepts, st.arrivals)) ms.acceptance = *ratio;
    ms.util = utilization(st.psn);
    ms.decision_us = last_decision_us;
    res.series.samples.push_back(std::move(ms));
  };

  const int64_t tick = cfg.sample_interval > 0 ? to_ticks(cfg.sample_interval) : 0;
  int64_t next_tick = tick;
  uint64_t events_done = 0;

  sample(0);
  for (const Event& ev : trace.events) {
    while (tick > 0 && next_tick < ev.t) {
      st.clock = next_tick;
      sample(next_tick);
      next_tick += tick;
    }
    st.clock = ev.t;

    if (ev.kind == EventKind::Arrival) {
      ++st.arrivals;
      DecisionRecord rec;
      rec.t = ev.t;
      rec.nspr_id = ev.nspr_id;
      rec.algo = to_string(cfg.algo);

      const auto t0 = std::chrono::steady_clock::now();
      std::optional<Placement> placement;
      if (cfg.algo == Algo::Exact) {
        placement = solve_exact(st.psn, ev.nspr, cfg.exact).placement;
      } else {
        placement = solve_p2c(st.psn, ev.nspr, cfg.p2c, lat_table, rng);
      }
      if (cfg.timing) {
        rec.decision_us = std::chrono::duration_cast<std::chrono::microseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
      }
      last_decision_us = rec.decision_us;

      if (placement) {
        rec.accepted = true;
        rec.cost = placement_cost(st.psn, ev.nspr, *placement);
        rec.placement = *placement;
        commit(st.psn, ev.nspr, *placement);
        st.active.emplace(ev.nspr_id, ActiveSlice{ev.nspr, std::move(*placement)});
        ++st.accepts;
      } else {
        ++st.rejects;
      }
      res.decisions.push_back(std::move(rec));
    } else {
      auto it = st.active.find(ev.nspr_id);
      if (it != st.active.end()) {  // departures of rejected requests are dropped
        release(st.psn, it->second.nspr, it->second.placement);
        st.active.erase(it);
      }
    }

    if (tick > 0 && next_tick == ev.t) next_tick += tick;
    sample(ev.t);
    ++events_done;
    if (cfg.coherence_every > 0 && events_done % cfg.coherence_every == 0) check_coherence(st);
  }

  const int64_t end_t = std::max(trace.horizon, st.clock);
  while (tick > 0 && next_tick <= end_t) {
    st.clock = next_tick;
    sample(next_tick);
    next_tick += tick;
  }
  st.clock = end_t;
  check_coherence(st);
  return res;
}

CompareResult replay_compare(const Psn& psn, const EventTrace& trace, const SimConfig& cfg) {
  SimConfig ce = cfg;
  ce.algo = Algo::Exact;
  SimConfig cp = cfg;
  cp.algo = Algo::P2c;
  return CompareResult{run_simulation(psn, trace, ce), run_simulation(psn, trace, cp)};
}

}  // namespace nsp
