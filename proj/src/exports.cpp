#include "nsp/exports.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nsp {

using nlohmann::json;

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xF];
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return in;
}

}  // namespace

const char* const kMetricsCsvHeader =
    "t,arrivals,accepts,rejects,acceptance_ratio,"
    "util_cpu_edc,util_cpu_cdc,util_cpu_ccp,util_cpu_all,"
    "util_ram_edc,util_ram_cdc,util_ram_ccp,util_ram_all,"
    "util_bw_edc,util_bw_cdc,util_bw_ccp,util_bw_all,decision_us";

MetricsCsvRow to_csv_row(const MetricsSample& s) {
  MetricsCsvRow r;
  r.t = s.t;
  r.arrivals = s.arrivals;
  r.accepts = s.accepts;
  r.rejects = s.rejects;
  if (s.acceptance.defined()) r.acceptance = s.acceptance.value();
  for (size_t g = 0; g < 4; ++g) {
    r.util_cpu[g] = s.util.cpu[g].value();
    r.util_ram[g] = s.util.ram[g].value();
    r.util_bw[g] = s.util.bw[g].value();
  }
  r.decision_us = s.decision_us;
  return r;
}

void export_csv(const MetricsSeries& series, const std::string& path) {
  auto out = open_out(path);
  out << kMetricsCsvHeader << "\n";
  for (const MetricsSample& s : series.samples) {
    const MetricsCsvRow r = to_csv_row(s);
    out << r.t << ',' << r.arrivals << ',' << r.accepts << ',' << r.rejects << ',';
    if (r.acceptance) out << format_double(*r.acceptance);
    for (size_t g = 0; g < 4; ++g) out << ',' << format_double(r.util_cpu[g]);
    for (size_t g = 0; g < 4; ++g) out << ',' << format_double(r.util_ram[g]);
    for (size_t g = 0; g < 4; ++g) out << ',' << format_double(r.util_bw[g]);
    out << ',' << r.decision_us << "\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
T parse_num(const std::string& s, const std::string& path) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw IoError("bad numeric field '" + s + "' in " + path);
  return v;
}

}  // namespace

std::vector<MetricsCsvRow> parse_metrics_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty metrics file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMetricsCsvHeader) throw IoError("unexpected CSV header in " + path);

  std::vector<MetricsCsvRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 18) throw IoError("bad column count in " + path);
    MetricsCsvRow r;
    r.t = parse_num<int64_t>(f[0], path);
    r.arrivals = parse_num<uint64_t>(f[1], path);
    r.accepts = parse_num<uint64_t>(f[2], path);
    r.rejects = parse_num<uint64_t>(f[3], path);
    if (!f[4].empty()) r.acceptance = parse_num<double>(f[4], path);
    for (size_t g = 0; g < 4; ++g) r.util_cpu[g] = parse_num<double>(f[5 + g], path);
    for (size_t g = 0; g < 4; ++g) r.util_ram[g] = parse_num<double>(f[9 + g], path);
    for (size_t g = 0; g < 4; ++g) r.util_bw[g] = parse_num<double>(f[13 + g], path);
    r.decision_us = parse_num<int64_t>(f[17], path);
    rows.push_back(r);
  }
  return rows;
}

namespace {

json ratio_json(const Ratio& r) { return json{{"num", r.num}, {"den", r.den}}; }

json sample_json(const MetricsSample& s) {
  json util;
  for (Group g : kGroups) {
    util["cpu_" + std::string(to_string(g))] = ratio_json(s.util.cpu_of(g));
    util["ram_" + std::string(to_string(g))] = ratio_json(s.util.ram_of(g));
    util["bw_" + std::string(to_string(g))] = ratio_json(s.util.bw_of(g));
  }
  return json{{"t", s.t},
              {"arrivals", s.arrivals},
              {"accepts", s.accepts},
              {"rejects", s.rejects},
              {"acceptance", s.acceptance.defined() ? json(ratio_json(s.acceptance)) : json()},
              {"util", util},
              {"decision_us", s.decision_us}};
}

}  // namespace

void export_jsonl(const MetricsSeries& series, const std::string& path) {
  auto out = open_out(path);
  out << json{{"meta",
               {{"algo", series.algo}, {"seed", series.seed}, {"config_hash", series.config_hash}}}}
             .dump()
      << "\n";
  for (const MetricsSample& s : series.samples) out << sample_json(s).dump() << "\n";
}

void write_decision_log(const std::vector<DecisionRecord>& log, const std::string& path) {
  auto out = open_out(path);
  for (const DecisionRecord& d : log) {
    json j{{"t", d.t},        {"nspr", d.nspr_id},
           {"algo", d.algo},  {"accepted", d.accepted},
           {"cost", d.cost ? json(d.cost->total()) : json()},
           {"decision_us", d.decision_us}};
    out << j.dump() << "\n";
  }
}

std::string to_dot(const Psn& psn) {
  std::ostringstream out;
  out << "graph psn {\n";
  for (const ServerNode& s : psn.servers)
    out << "  n" << s.id << " [shape=box, label=\"" << s.id << " " << s.cpu_cap << "/"
        << s.ram_cap << "\"];\n";
  for (const SwitchNode& w : psn.switches) {
    out << "  n" << w.id << " [shape=ellipse, label=\"" << w.id << "\"";
    if (w.is_access) out << ", peripheries=2";
    out << "];\n";
  }
  for (const PhysicalLink& l : psn.links)
    out << "  n" << l.a << " -- n" << l.b << " [label=\"" << l.bw_cap << "," << l.latency
        << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const Nspr& nspr) {
  std::ostringstream out;
  out << "digraph nspr {\n";
  out << "  access [shape=ellipse, label=\"access " << nspr.access_node << "\"];\n";
  for (const Vnf& v : nspr.vnfs)
    out << "  v" << v.index << " [shape=box, label=\"" << v.cpu_req << "/" << v.ram_req
        << "\"];\n";
  for (const VirtualLink& vl : nspr.vlinks) {
    out << "  " << (vl.src == kAccess ? std::string("access") : "v" + std::to_string(vl.src))
        << " -> v" << vl.dst << " [label=\"" << vl.bw_req << "," << vl.lat_req << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

void export_dot(const Psn& psn, const std::string& path) { open_out(path) << to_dot(psn); }
void export_dot(const Nspr& nspr, const std::string& path) { open_out(path) << to_dot(nspr); }

json to_json(const Psn& psn) {
  json servers = json::array();
  for (const ServerNode& s : psn.servers)
    servers.push_back({{"id", s.id},
                       {"dc_id", s.dc_id},
                       {"cpu_cap", s.cpu_cap},
                       {"ram_cap", s.ram_cap},
                       {"cpu_used", s.cpu_used},
                       {"ram_used", s.ram_used},
                       {"cpu_weight", s.cpu_weight},
                       {"ram_weight", s.ram_weight}});
  json switches = json::array();
  for (const SwitchNode& w : psn.switches) {
    json jw{{"id", w.id}, {"is_access", w.is_access}};
    if (w.dc_id >= 0) jw["dc_id"] = w.dc_id;
    switches.push_back(std::move(jw));
  }
  json links = json::array();
  for (const PhysicalLink& l : psn.links)
    links.push_back({{"a", l.a},
                     {"b", l.b},
                     {"bw_cap", l.bw_cap},
                     {"bw_used", l.bw_used},
                     {"latency", l.latency}});
  json dcs = json::array();
  for (const auto& [id, info] : psn.dc_index)
    dcs.push_back({{"id", id}, {"type", to_string(info.type)}, {"members", info.members}});
  return json{{"servers", servers}, {"switches", switches}, {"links", links}, {"dc_index", dcs}};
}

Psn psn_from_json(const json& j) {
  Psn psn;
  for (const json& js : j.at("servers")) {
    ServerNode s;
    s.id = js.at("id").get<int32_t>();
    s.dc_id = js.at("dc_id").get<int32_t>();
    s.cpu_cap = js.at("cpu_cap").get<int64_t>();
    s.ram_cap = js.at("ram_cap").get<int64_t>();
    s.cpu_used = js.value("cpu_used", int64_t{0});
    s.ram_used = js.value("ram_used", int64_t{0});
    s.cpu_weight = js.value("cpu_weight", int64_t{1});
    s.ram_weight = js.value("ram_weight", int64_t{1});
    psn.servers.push_back(s);
  }
  for (const json& jw : j.at("switches")) {
    SwitchNode w;
    w.id = jw.at("id").get<int32_t>();
    w.dc_id = jw.value("dc_id", int32_t{-1});
    w.is_access = jw.value("is_access", false);
    psn.switches.push_back(w);
  }
  for (const json& jl : j.at("links")) {
    PhysicalLink l;
    l.a = jl.at("a").get<int32_t>();
    l.b = jl.at("b").get<int32_t>();
    l.bw_cap = jl.at("bw_cap").get<int64_t>();
    l.bw_used = jl.value("bw_used", int64_t{0});
    l.latency = jl.at("latency").get<int64_t>();
    psn.links.push_back(l);
  }
  for (const json& jd : j.at("dc_index")) {
    auto type = dc_type_from_string(jd.at("type").get<std::string>());
    if (!type) throw IoError("psn json: unknown DC type");
    psn.dc_index[jd.at("id").get<int32_t>()] = DcInfo{*type, {}};
  }
  psn.finalize();
  return psn;
}

void save_psn(const Psn& psn, const std::string& path) {
  open_out(path) << to_json(psn).dump(2) << "\n";
}

Psn load_psn(const std::string& path) {
  json j;
  open_in(path) >> j;
  return psn_from_json(j);
}

json to_json(const Nspr& nspr) {
  json vnfs = json::array();
  for (const Vnf& v : nspr.vnfs)
    vnfs.push_back({{"index", v.index}, {"cpu_req", v.cpu_req}, {"ram_req", v.ram_req}});
  json vlinks = json::array();
  for (const VirtualLink& vl : nspr.vlinks)
    vlinks.push_back(
        {{"src", vl.src}, {"dst", vl.dst}, {"bw_req", vl.bw_req}, {"lat_req", vl.lat_req}});
  return json{{"id", nspr.id},
              {"vnfs", vnfs},
              {"vlinks", vlinks},
              {"e2e_latency", nspr.e2e_latency},
              {"access_node", nspr.access_node},
              {"arrival_time", nspr.arrival_time},
              {"holding_time", nspr.holding_time}};
}

Nspr nspr_from_json(const json& j) {
  Nspr nspr;
  nspr.id = j.at("id").get<uint64_t>();
  for (const json& jv : j.at("vnfs")) {
    Vnf v;
    v.index = jv.at("index").get<int32_t>();
    v.cpu_req = jv.at("cpu_req").get<int64_t>();
    v.ram_req = jv.at("ram_req").get<int64_t>();
    nspr.vnfs.push_back(v);
  }
  for (const json& jl : j.at("vlinks")) {
    VirtualLink vl;
    vl.src = jl.at("src").get<int32_t>();
    vl.dst = jl.at("dst").get<int32_t>();
    vl.bw_req = jl.at("bw_req").get<int64_t>();
    vl.lat_req = jl.at("lat_req").get<int64_t>();
    nspr.vlinks.push_back(vl);
  }
  nspr.e2e_latency = j.at("e2e_latency").get<int64_t>();
  nspr.access_node = j.at("access_node").get<int32_t>();
  nspr.arrival_time = j.value("arrival_time", int64_t{0});
  nspr.holding_time = j.value("holding_time", int64_t{1});
  validate_nspr(nspr);
  return nspr;
}

json to_json(const Placement& p, const std::optional<Cost>& cost) {
  json hosts = json::object();
  for (size_t i = 0; i < p.vnf_host.size(); ++i) hosts[std::to_string(i)] = p.vnf_host[i];
  json paths = json::object();
  for (size_t i = 0; i < p.vlink_path.size(); ++i) paths[std::to_string(i)] = p.vlink_path[i];
  json j{{"nspr", p.nspr_id}, {"hosts", hosts}, {"paths", paths}};
  if (cost)
    j["cost"] = {{"node_term", cost->node_term},
                 {"bw_hop_term", cost->bw_hop_term},
                 {"total", cost->total()}};
  return j;
}

void save_trace(const EventTrace& trace, const std::string& path) {
  auto out = open_out(path);
  for (const Event& ev : trace.events) {
    if (ev.kind == EventKind::Arrival)
      out << json{{"t", ev.t}, {"kind", "arrival"}, {"nspr", to_json(ev.nspr)}}.dump() << "\n";
    else
      out << json{{"t", ev.t}, {"kind", "departure"}, {"id", ev.nspr_id}}.dump() << "\n";
  }
}

EventTrace load_trace(const std::string& path, std::optional<int64_t> horizon) {
  auto in = open_in(path);
  EventTrace trace;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Event ev;
    ev.t = j.at("t").get<int64_t>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "arrival") {
      ev.kind = EventKind::Arrival;
      ev.nspr = nspr_from_json(j.at("nspr"));
      ev.nspr_id = ev.nspr.id;
    } else if (kind == "departure") {
      ev.kind = EventKind::Departure;
      ev.nspr_id = j.at("id").get<uint64_t>();
    } else {
      throw IoError(path + ":" + std::to_string(lineno) + ": unknown event kind " + kind);
    }
    trace.events.push_back(std::move(ev));
  }
  trace.horizon = horizon.value_or(trace.events.empty() ? 0 : trace.events.back().t);
  validate_trace(trace);
  return trace;
}

}  // namespace nsp
