#include "nsp/nspr.hpp"

#include <algorithm>

#include "nsp/rng.hpp"

namespace nsp {

void validate_nspr(const Nspr& nspr) {
  if (nspr.vnfs.empty()) throw std::invalid_argument("nspr: chain must hold at least one VNF");
  if (nspr.vlinks.size() != nspr.vnfs.size())
    throw std::invalid_argument("nspr: expected one virtual link per VNF (access leg included)");
  for (size_t i = 0; i < nspr.vnfs.size(); ++i) {
    const Vnf& v = nspr.vnfs[i];
    if (v.index != static_cast<int32_t>(i))
      throw std::invalid_argument("nspr: VNF indices must be 0..n-1 in order");
    if (v.cpu_req < 0 || v.ram_req < 0)
      throw std::invalid_argument("nspr: negative VNF requirement");
    if (v.cpu_req == 0 && v.ram_req == 0)
      throw std::invalid_argument("nspr: VNF with no resource demand");
  }
  for (size_t i = 0; i < nspr.vlinks.size(); ++i) {
    const VirtualLink& l = nspr.vlinks[i];
    int32_t want_src = i == 0 ? kAccess : static_cast<int32_t>(i - 1);
    if (l.src != want_src || l.dst != static_cast<int32_t>(i))
      throw std::invalid_argument("nspr: virtual links must chain access->v0->...->v(n-1)");
    if (l.bw_req < 0 || l.lat_req < 0)
      throw std::invalid_argument("nspr: negative virtual link requirement");
  }
  if (nspr.e2e_latency < 0) throw std::invalid_argument("nspr: negative end-to-end latency budget");
  if (nspr.holding_time <= 0) throw std::invalid_argument("nspr: holding time must be positive");
}

namespace {

void check_range(const Range& r, const char* name, int64_t min_lo) {
  if (r.lo > r.hi)
    throw std::invalid_argument(std::string("nspr params: empty range for ") + name);
  if (r.lo < min_lo)
    throw std::invalid_argument(std::string("nspr params: range for ") + name + " below " +
                                std::to_string(min_lo));
}

}  // namespace

void NsprParams::validate() const {
  check_range(chain_len, "chain_len", 1);
  check_range(vnf_cpu, "vnf_cpu", 0);
  check_range(vnf_ram, "vnf_ram", 0);
  if (vnf_cpu.lo == 0 && vnf_ram.lo == 0)
    throw std::invalid_argument("nspr params: cpu and ram ranges may not both start at zero");
  check_range(vlink_bw, "vlink_bw", 0);
  check_range(vlink_lat, "vlink_lat", 0);
  check_range(e2e_lat, "e2e_lat", 0);
  if (!(holding_mean > 0)) throw std::invalid_argument("nspr params: holding_mean must be > 0");
}

void validate_trace(const EventTrace& trace) {
  std::map<uint64_t, int64_t> due;  // id -> expected departure time
  int64_t prev = INT64_MIN;
  for (const Event& ev : trace.events) {
    if (ev.t < prev) throw std::invalid_argument("trace: events not sorted by time");
    prev = ev.t;
    if (ev.kind == EventKind::Arrival) {
      validate_nspr(ev.nspr);
      if (ev.nspr.arrival_time != ev.t)
        throw std::invalid_argument("trace: arrival event time disagrees with the request");
      if (!due.emplace(ev.nspr_id, ev.t + ev.nspr.holding_time).second)
        throw std::invalid_argument("trace: duplicate arrival id");
    } else {
      auto it = due.find(ev.nspr_id);
      if (it == due.end()) throw std::invalid_argument("trace: departure precedes its arrival");
      if (it->second != ev.t)
        throw std::invalid_argument("trace: departure time != arrival + holding");
      due.erase(it);
    }
  }
  if (!due.empty()) throw std::invalid_argument("trace: arrival without a paired departure");
}

Nspr generate_nspr(const NsprParams& params, const Psn& psn, std::mt19937_64& rng) {
  params.validate();
  const std::vector<int32_t> access = psn.access_switch_ids();
  if (access.empty())
    throw std::invalid_argument("generate_nspr: substrate has no access switch");

  Nspr nspr;
  const int64_t len = uniform_int(rng, params.chain_len.lo, params.chain_len.hi);
  nspr.vnfs.reserve(len);
  nspr.vlinks.reserve(len);
  for (int64_t i = 0; i < len; ++i) {
    Vnf v;
    v.index = static_cast<int32_t>(i);
    v.cpu_req = uniform_int(rng, params.vnf_cpu.lo, params.vnf_cpu.hi);
    v.ram_req = uniform_int(rng, params.vnf_ram.lo, params.vnf_ram.hi);
    nspr.vnfs.push_back(v);  // params.validate() rules out a (0, 0) draw
  }
  for (int64_t i = 0; i < len; ++i) {
    VirtualLink l;
    l.src = i == 0 ? kAccess : static_cast<int32_t>(i - 1);
    l.dst = static_cast<int32_t>(i);
    l.bw_req = uniform_int(rng, params.vlink_bw.lo, params.vlink_bw.hi);
    l.lat_req = uniform_int(rng, params.vlink_lat.lo, params.vlink_lat.hi);
    nspr.vlinks.push_back(l);
  }
  nspr.e2e_latency = uniform_int(rng, params.e2e_lat.lo, params.e2e_lat.hi);
  nspr.access_node = access[uniform_u64(rng, access.size())];
  nspr.holding_time =
      std::max<int64_t>(1, to_ticks(exponential(rng, params.holding_mean)));
  return nspr;
}

EventTrace generate_trace(const NsprParams& params, double arrival_rate, double horizon_units,
                          const Psn& psn, uint64_t seed) {
  params.validate();
  if (arrival_rate < 0) throw std::invalid_argument("generate_trace: arrival_rate must be >= 0");
  if (!(horizon_units > 0)) throw std::invalid_argument("generate_trace: horizon must be > 0");

  EventTrace trace;
  trace.horizon = to_ticks(horizon_units);
  std::mt19937_64 rng(seed);

  if (arrival_rate > 0) {
    uint64_t next_id = 0;
    double t_units = 0.0;
    for (;;) {
      t_units += exponential(rng, 1.0 / arrival_rate);
      if (t_units > horizon_units) break;
      Nspr nspr = generate_nspr(params, psn, rng);
      nspr.id = next_id++;
      nspr.arrival_time = to_ticks(t_units);
      Event arrival{nspr.arrival_time, EventKind::Arrival, nspr.id, nspr};
      Event departure{nspr.arrival_time + nspr.holding_time, EventKind::Departure, nspr.id, {}};
      trace.events.push_back(std::move(arrival));
      trace.events.push_back(departure);
    }
  }

  std::stable_sort(trace.events.begin(), trace.events.end(), [](const Event& x, const Event& y) {
    auto key = [](const Event& e) {
      return std::make_tuple(e.t, e.kind == EventKind::Departure ? 0 : 1, e.nspr_id);
    };
    return key(x) < key(y);
  });
  return trace;
}

}  // namespace nsp
