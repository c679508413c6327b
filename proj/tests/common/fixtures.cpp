#include "common/fixtures.hpp"

#include "nsp/rng.hpp"

namespace nsp::test {

Psn fixture_d4() {
  Psn psn;
  psn.dc_index[0] = DcInfo{DcType::Edc, {}};
  psn.servers = {
      {kD4_N1, 0, 4, 4, 0, 0, 1, 1},
      {kD4_N2, 0, 4, 4, 0, 0, 1, 1},
      {kD4_N3, 0, 2, 2, 0, 0, 1, 1},
      {kD4_N4, 0, 8, 8, 0, 0, 1, 1},
  };
  psn.links = {
      {kD4_N1, kD4_N2, 10, 0, 10},
      {kD4_N1, kD4_N3, 5, 0, 5},
      {kD4_N3, kD4_N2, 5, 0, 5},
      {kD4_N2, kD4_N4, 20, 0, 20},
  };
  psn.finalize();
  return psn;
}

Nspr nspr_x() {
  Nspr nspr;
  nspr.id = 7;
  nspr.vnfs = {{0, 2, 2}, {1, 2, 2}};
  nspr.vlinks = {{kAccess, 0, 1, 10}, {0, 1, 4, 15}};
  nspr.e2e_latency = 20;
  nspr.access_node = kD4_N1;
  nspr.holding_time = 10;
  return nspr;
}

Psn star_psn(int32_t n_servers, int64_t cpu, int64_t ram, int64_t link_bw, int64_t link_lat) {
  Psn psn;
  psn.dc_index[0] = DcInfo{DcType::Edc, {}};
  psn.switches.push_back({0, 0, true});
  for (int32_t i = 1; i <= n_servers; ++i) {
    psn.servers.push_back({i, 0, cpu, ram, 0, 0, 1, 1});
    psn.links.push_back({0, i, link_bw, 0, link_lat});
  }
  psn.finalize();
  return psn;
}

Psn random_graph_psn(std::mt19937_64& rng, int32_t max_nodes) {
  const int32_t n = static_cast<int32_t>(uniform_int(rng, 3, max_nodes));
  Psn psn;
  psn.dc_index[0] = DcInfo{DcType::Edc, {}};
  for (int32_t i = 0; i < n; ++i) {
    const int64_t cpu = uniform_int(rng, 2, 10);
    const int64_t ram = uniform_int(rng, 2, 10);
    const int64_t wc = uniform_int(rng, 1, 3);
    const int64_t wr = uniform_int(rng, 1, 3);
    psn.servers.push_back({i, 0, cpu, ram, 0, 0, wc, wr});
  }
  // spanning chain keeps it connected; extra random edges add cycles
  for (int32_t i = 1; i < n; ++i) {
    const int32_t j = static_cast<int32_t>(uniform_int(rng, 0, i - 1));
    psn.links.push_back({j, i, uniform_int(rng, 2, 12), 0, uniform_int(rng, 1, 12)});
  }
  for (int32_t a = 0; a < n; ++a)
    for (int32_t b = a + 1; b < n; ++b) {
      bool exists = false;
      for (const auto& l : psn.links)
        if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) exists = true;
      if (!exists && uniform01(rng) < 0.25)
        psn.links.push_back({a, b, uniform_int(rng, 2, 12), 0, uniform_int(rng, 1, 12)});
    }
  psn.finalize();
  return psn;
}

Nspr random_nspr(std::mt19937_64& rng, const Psn& psn, int32_t max_vnfs, bool tight) {
  Nspr nspr;
  nspr.id = rng();
  const int32_t n_vnf = static_cast<int32_t>(uniform_int(rng, 1, max_vnfs));
  for (int32_t i = 0; i < n_vnf; ++i)
    nspr.vnfs.push_back({i, uniform_int(rng, 1, tight ? 8 : 4), uniform_int(rng, 1, tight ? 8 : 4)});
  for (int32_t i = 0; i < n_vnf; ++i) {
    VirtualLink vl;
    vl.src = i == 0 ? kAccess : i - 1;
    vl.dst = i;
    vl.bw_req = uniform_int(rng, 1, tight ? 8 : 4);
    vl.lat_req = uniform_int(rng, tight ? 4 : 8, tight ? 16 : 30);
    nspr.vlinks.push_back(vl);
  }
  nspr.e2e_latency = uniform_int(rng, tight ? 8 : 20, tight ? 30 : 80);
  const auto access = psn.access_switch_ids();
  if (access.empty()) {
    nspr.access_node = psn.servers[uniform_u64(rng, psn.servers.size())].id;
  } else {
    nspr.access_node = access[uniform_u64(rng, access.size())];
  }
  nspr.holding_time = uniform_int(rng, 1, 50);
  return nspr;
}

void random_preload(std::mt19937_64& rng, Psn& psn, double max_fill) {
  for (ServerNode& s : psn.servers) {
    s.cpu_used = static_cast<int64_t>(uniform01(rng) * max_fill * static_cast<double>(s.cpu_cap));
    s.ram_used = static_cast<int64_t>(uniform01(rng) * max_fill * static_cast<double>(s.ram_cap));
  }
  for (PhysicalLink& l : psn.links)
    l.bw_used = static_cast<int64_t>(uniform01(rng) * max_fill * static_cast<double>(l.bw_cap));
}

}  // namespace nsp::test
