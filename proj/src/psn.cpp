#include "nsp/psn.hpp"

#include <algorithm>
#include <queue>

namespace nsp {

const char* to_string(DcType t) {
  switch (t) {
    case DcType::Edc: return "EDC";
    case DcType::Cdc: return "CDC";
    case DcType::Ccp: return "CCP";
  }
  return "?";
}

std::optional<DcType> dc_type_from_string(std::string_view s) {
  if (s == "EDC") return DcType::Edc;
  if (s == "CDC") return DcType::Cdc;
  if (s == "CCP") return DcType::Ccp;
  return std::nullopt;
}

void Psn::finalize() {
  std::sort(servers.begin(), servers.end(),
            [](const ServerNode& x, const ServerNode& y) { return x.id < y.id; });
  std::sort(switches.begin(), switches.end(),
            [](const SwitchNode& x, const SwitchNode& y) { return x.id < y.id; });
  for (auto& l : links) {
    if (l.a > l.b) std::swap(l.a, l.b);
  }
  std::sort(links.begin(), links.end(), [](const PhysicalLink& x, const PhysicalLink& y) {
    return std::make_pair(x.a, x.b) < std::make_pair(y.a, y.b);
  });

  const int32_t n = node_count();
  server_pos_.assign(n, -1);
  switch_pos_.assign(n, -1);
  link_pos_.clear();
  adj_.assign(n, {});

  auto check_id = [n](int32_t id) {
    if (id < 0 || id >= n)
      throw std::invalid_argument("psn: node ids must be dense in [0, node_count)");
  };

  for (size_t i = 0; i < servers.size(); ++i) {
    const ServerNode& s = servers[i];
    check_id(s.id);
    if (server_pos_[s.id] != -1 || switch_pos_[s.id] != -1)
      throw std::invalid_argument("psn: duplicate node id " + std::to_string(s.id));
    if (s.cpu_cap < 0 || s.ram_cap < 0 || s.cpu_weight < 0 || s.ram_weight < 0)
      throw std::invalid_argument("psn: negative capacity or weight on server " + std::to_string(s.id));
    if (s.cpu_used < 0 || s.cpu_used > s.cpu_cap || s.ram_used < 0 || s.ram_used > s.ram_cap)
      throw std::invalid_argument("psn: usage out of bounds on server " + std::to_string(s.id));
    if (s.dc_id < 0)
      throw std::invalid_argument("psn: server " + std::to_string(s.id) + " belongs to no DC");
    if (!dc_index.count(s.dc_id))
      throw std::invalid_argument("psn: server " + std::to_string(s.id) + " references unknown DC");
    server_pos_[s.id] = static_cast<int32_t>(i);
  }
  for (size_t i = 0; i < switches.size(); ++i) {
    const SwitchNode& w = switches[i];
    check_id(w.id);
    if (server_pos_[w.id] != -1 || switch_pos_[w.id] != -1)
      throw std::invalid_argument("psn: duplicate node id " + std::to_string(w.id));
    if (w.dc_id >= 0 && !dc_index.count(w.dc_id))
      throw std::invalid_argument("psn: switch " + std::to_string(w.id) + " references unknown DC");
    switch_pos_[w.id] = static_cast<int32_t>(i);
  }

  for (auto& [dc, info] : dc_index) info.members.clear();
  for (const auto& s : servers) dc_index[s.dc_id].members.push_back(s.id);
  for (const auto& w : switches)
    if (w.dc_id >= 0) dc_index[w.dc_id].members.push_back(w.id);
  for (auto& [dc, info] : dc_index) std::sort(info.members.begin(), info.members.end());

  for (size_t i = 0; i < links.size(); ++i) {
    const PhysicalLink& l = links[i];
    check_id(l.a);
    check_id(l.b);
    if (l.a == l.b) throw std::invalid_argument("psn: self-loop link on node " + std::to_string(l.a));
    if (l.bw_cap < 0 || l.latency < 0)
      throw std::invalid_argument("psn: negative link capacity or latency");
    if (l.bw_used < 0 || l.bw_used > l.bw_cap)
      throw std::invalid_argument("psn: link usage out of bounds");
    auto key = std::make_pair(l.a, l.b);
    if (link_pos_.count(key))
      throw std::invalid_argument("psn: duplicate link " + std::to_string(l.a) + "-" + std::to_string(l.b));
    link_pos_[key] = static_cast<int32_t>(i);
    adj_[l.a].push_back({l.b, static_cast<int32_t>(i)});
    adj_[l.b].push_back({l.a, static_cast<int32_t>(i)});
  }
  for (auto& nb : adj_)
    std::sort(nb.begin(), nb.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
}

bool Psn::node_exists(int32_t id) const {
  return id >= 0 && id < node_count() && (server_pos_[id] != -1 || switch_pos_[id] != -1);
}

bool Psn::is_server(int32_t id) const {
  return id >= 0 && id < node_count() && server_pos_[id] != -1;
}

const ServerNode& Psn::server(int32_t id) const {
  if (!is_server(id)) throw std::invalid_argument("psn: no server with id " + std::to_string(id));
  return servers[server_pos_[id]];
}

ServerNode& Psn::server(int32_t id) {
  if (!is_server(id)) throw std::invalid_argument("psn: no server with id " + std::to_string(id));
  return servers[server_pos_[id]];
}

const SwitchNode* Psn::find_switch(int32_t id) const {
  if (id < 0 || id >= node_count() || switch_pos_[id] == -1) return nullptr;
  return &switches[switch_pos_[id]];
}

const PhysicalLink* Psn::find_link(int32_t a, int32_t b) const {
  if (a > b) std::swap(a, b);
  auto it = link_pos_.find({a, b});
  return it == link_pos_.end() ? nullptr : &links[it->second];
}

PhysicalLink* Psn::find_link(int32_t a, int32_t b) {
  if (a > b) std::swap(a, b);
  auto it = link_pos_.find({a, b});
  return it == link_pos_.end() ? nullptr : &links[it->second];
}

std::span<const Neighbor> Psn::neighbors(int32_t id) const {
  if (id < 0 || id >= node_count()) return {};
  return adj_[id];
}

DcType Psn::node_tier(int32_t id) const {
  int32_t dc = -1;
  if (is_server(id))
    dc = server(id).dc_id;
  else if (const SwitchNode* w = find_switch(id))
    dc = w->dc_id;
  auto it = dc_index.find(dc);
  return it == dc_index.end() ? DcType::Ccp : it->second.type;
}

bool Psn::connected() const {
  const int32_t n = node_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<int32_t> q;
  int32_t start = servers.empty() ? switches.front().id : servers.front().id;
  q.push(start);
  seen[start] = 1;
  int32_t reached = 0;
  while (!q.empty()) {
    int32_t u = q.front();
    q.pop();
    ++reached;
    for (const Neighbor& nb : neighbors(u)) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        q.push(nb.node);
      }
    }
  }
  return reached == n;
}

std::vector<int32_t> Psn::access_switch_ids() const {
  std::vector<int32_t> out;
  for (const auto& w : switches)
    if (w.is_access) out.push_back(w.id);
  return out;  // switches are sorted by id
}

int64_t PsnConfig::total_servers() const {
  return int64_t{n_edc} * servers_per_edc + int64_t{n_cdc} * servers_per_cdc +
         int64_t{n_ccp} * servers_per_ccp;
}

void PsnConfig::validate() const {
  if (n_edc < 0 || n_cdc < 0 || n_ccp < 0)
    throw std::invalid_argument("psn config: DC counts must be >= 0");
  if (servers_per_edc < 0 || servers_per_cdc < 0 || servers_per_ccp < 0)
    throw std::invalid_argument("psn config: servers per DC must be >= 0");
  if (total_dcs() == 0) throw std::invalid_argument("psn config: at least one DC required");
  if (total_servers() == 0) throw std::invalid_argument("psn config: at least one server required");
  for (const TierServerSpec* t : {&edc, &cdc, &ccp}) {
    if (t->cpu_cap < 0 || t->ram_cap < 0 || t->cpu_weight < 0 || t->ram_weight < 0)
      throw std::invalid_argument("psn config: negative server capacity or weight");
  }
  for (const LinkSpec* l : {&intra_dc, &edc_cdc, &cdc_cdc, &cdc_ccp, &edc_ccp, &edc_edc, &ccp_ccp}) {
    if (l->bw < 0 || l->latency < 0)
      throw std::invalid_argument("psn config: negative link bandwidth or latency");
  }
}

namespace {

struct DcBuild {
  DcType type;
  int32_t dc_id;
  int32_t switch_id;
};

}  // namespace

Psn build_psn(const PsnConfig& cfg) {
  cfg.validate();

  Psn psn;
  int32_t next_node = 0;
  int32_t next_dc = 0;
  std::vector<DcBuild> edcs, cdcs, ccps;

  auto add_dc = [&](DcType type, int32_t n_servers, const TierServerSpec& spec,
                    std::vector<DcBuild>& out) {
    DcBuild dc{type, next_dc++, next_node++};
    psn.dc_index[dc.dc_id] = DcInfo{type, {}};
    psn.switches.push_back({dc.switch_id, dc.dc_id, type == DcType::Edc});
    for (int32_t s = 0; s < n_servers; ++s) {
      int32_t id = next_node++;
      psn.servers.push_back(
          {id, dc.dc_id, spec.cpu_cap, spec.ram_cap, 0, 0, spec.cpu_weight, spec.ram_weight});
      psn.links.push_back({dc.switch_id, id, cfg.intra_dc.bw, 0, cfg.intra_dc.latency});
    }
    out.push_back(dc);
  };

  for (int32_t i = 0; i < cfg.n_edc; ++i) add_dc(DcType::Edc, cfg.servers_per_edc, cfg.edc, edcs);
  for (int32_t i = 0; i < cfg.n_cdc; ++i) add_dc(DcType::Cdc, cfg.servers_per_cdc, cfg.cdc, cdcs);
  for (int32_t i = 0; i < cfg.n_ccp; ++i) add_dc(DcType::Ccp, cfg.servers_per_ccp, cfg.ccp, ccps);

  std::map<std::pair<int32_t, int32_t>, bool> seen;
  auto add_link = [&](int32_t a, int32_t b, const LinkSpec& spec) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    if (seen.emplace(std::make_pair(a, b), true).second)
      psn.links.push_back({a, b, spec.bw, 0, spec.latency});
  };

  // EDC uplinks: round-robin to CDCs, falling back to CCPs, then to an EDC
  // ring when no higher tier exists.
  for (size_t i = 0; i < edcs.size(); ++i) {
    if (!cdcs.empty())
      add_link(edcs[i].switch_id, cdcs[i % cdcs.size()].switch_id, cfg.edc_cdc);
    else if (!ccps.empty())
      add_link(edcs[i].switch_id, ccps[i % ccps.size()].switch_id, cfg.edc_ccp);
    else if (edcs.size() >= 2)
      add_link(edcs[i].switch_id, edcs[(i + 1) % edcs.size()].switch_id, cfg.edc_edc);
  }
  // CDC ring
  if (cdcs.size() >= 2)
    for (size_t i = 0; i < cdcs.size(); ++i)
      add_link(cdcs[i].switch_id, cdcs[(i + 1) % cdcs.size()].switch_id, cfg.cdc_cdc);
  // CDC uplinks
  for (size_t i = 0; i < cdcs.size(); ++i)
    if (!ccps.empty()) add_link(cdcs[i].switch_id, ccps[i % ccps.size()].switch_id, cfg.cdc_ccp);
  // CCP chain
  for (size_t i = 0; i + 1 < ccps.size(); ++i)
    add_link(ccps[i].switch_id, ccps[i + 1].switch_id, cfg.ccp_ccp);

  psn.finalize();
  if (!psn.connected()) throw InvariantError("build_psn: generated substrate is not connected");
  return psn;
}

}  // namespace nsp
