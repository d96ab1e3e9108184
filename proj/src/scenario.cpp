#include "bpsim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bpsim/errors.hpp"

namespace bpsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

ArrivalSpec parse_arrival(const json& a, const std::string& path) {
  const json& kind_v = member(a, "kind", path);
  if (!kind_v.is_string()) fail(path + ".kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  ArrivalSpec spec;
  if (kind == "poisson") {
    spec = PoissonPerSlot{as_number(member(a, "rate", path), path + ".rate")};
  } else if (kind == "finite-batch") {
    spec = FiniteBatch{as_number(member(a, "mean", path), path + ".mean")};
  } else if (kind == "bursty-file") {
    spec = BurstyFile{as_number(member(a, "p", path), path + ".p"),
                      as_number(member(a, "mean_size", path), path + ".mean_size")};
  } else {
    fail(path + ".kind", "unknown arrival kind '" + kind + "' (expected poisson, finite-batch or bursty-file)");
  }
  try {
    validate(spec);
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
  return spec;
}

json arrival_json(const ArrivalSpec& spec) {
  if (const auto* p = std::get_if<PoissonPerSlot>(&spec)) return {{"kind", "poisson"}, {"rate", p->rate}};
  if (const auto* b = std::get_if<FiniteBatch>(&spec)) return {{"kind", "finite-batch"}, {"mean", b->mean}};
  const auto& f = std::get<BurstyFile>(spec);
  return {{"kind", "bursty-file"}, {"p", f.file_probability}, {"mean_size", f.mean_file_size}};
}

Topology make_topology(const Scenario& s) {
  try {
    return Topology(s.nodes, s.links);
  } catch (const ConfigError& e) {
    throw ConfigError("scenario '" + s.name + "': " + e.what());
  }
}

std::vector<Flow> make_flows(const Scenario& s, const Topology& topology) {
  std::vector<Flow> flows;
  for (std::size_t i = 0; i < s.flows.size(); ++i) {
    const FlowConfig& fc = s.flows[i];
    const std::string path = "flows[" + std::to_string(i) + "]";
    Flow f;
    f.id = fc.id;
    f.arrival = fc.arrival;
    try {
      f.route = route_from_nodes(topology, fc.route);
      validate_route(topology, f);
    } catch (const ConfigError& e) {
      fail(path + ".route", e.what());
    }
    flows.push_back(std::move(f));
  }
  return flows;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("$", "scenario must be a JSON object");
  Scenario s;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) fail("name", "expected a string");
    s.name = it->get<std::string>();
  }

  const json& nodes = as_array(member(doc, "nodes", "$"), "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    const auto n = static_cast<NodeId>(as_int(nodes[i], path));
    if (std::find(s.nodes.begin(), s.nodes.end(), n) != s.nodes.end()) fail(path, "duplicate node " + std::to_string(n));
    s.nodes.push_back(n);
  }

  const json& links = as_array(member(doc, "links", "$"), "links");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string path = "links[" + std::to_string(i) + "]";
    Link l;
    l.src = static_cast<NodeId>(as_int(member(links[i], "src", path), path + ".src"));
    l.dst = static_cast<NodeId>(as_int(member(links[i], "dst", path), path + ".dst"));
    l.capacity = 1;
    if (links[i].contains("capacity")) {
      l.capacity = static_cast<int>(as_int(links[i]["capacity"], path + ".capacity"));
    }
    const std::string label = " (link " + std::to_string(l.src) + "->" + std::to_string(l.dst) + ")";
    for (NodeId end : {l.src, l.dst}) {
      if (std::find(s.nodes.begin(), s.nodes.end(), end) == s.nodes.end()) {
        fail(path + label, "endpoint node " + std::to_string(end) + " is not declared in nodes");
      }
    }
    if (l.capacity < 1) fail(path + ".capacity", "must be >= 1");
    s.links.push_back(l);
  }

  if (auto it = doc.find("interference"); it != doc.end()) {
    const json& intf = *it;
    const json& kind = member(intf, "kind", "interference");
    if (kind == "khop") {
      const auto k = as_int(member(intf, "k", "interference"), "interference.k");
      if (k < 1) fail("interference.k", "must be >= 1");
      s.interference = KHopInterference{static_cast<int>(k)};
    } else if (kind == "explicit") {
      ExplicitInterference e;
      const json& list = as_array(member(intf, "conflicts", "interference"), "interference.conflicts");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "interference.conflicts[" + std::to_string(i) + "]";
        const json& entry = list[i];
        auto pair_ref = [&](const json& v, const std::string& p) -> std::pair<FlowId, int> {
          if (!v.is_array() || v.size() != 2) fail(p, "expected [flow, hop]");
          return {static_cast<FlowId>(as_int(v[0], p + "[0]")), static_cast<int>(as_int(v[1], p + "[1]"))};
        };
        if (!entry.is_array() || entry.size() != 2) fail(path, "expected [[flow, hop], [flow, hop]]");
        e.conflicts.push_back({pair_ref(entry[0], path + "[0]"), pair_ref(entry[1], path + "[1]")});
      }
      s.interference = e;
    } else {
      fail("interference.kind", "expected \"khop\" or \"explicit\"");
    }
  }

  const json& flows = as_array(member(doc, "flows", "$"), "flows");
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const std::string path = "flows[" + std::to_string(i) + "]";
    FlowConfig fc;
    fc.id = static_cast<FlowId>(as_int(member(flows[i], "id", path), path + ".id"));
    const json& route = as_array(member(flows[i], "route", path), path + ".route");
    for (std::size_t j = 0; j < route.size(); ++j) {
      fc.route.push_back(static_cast<NodeId>(as_int(route[j], path + ".route[" + std::to_string(j) + "]")));
    }
    fc.arrival = parse_arrival(member(flows[i], "arrival", path), path + ".arrival");
    for (const FlowConfig& other : s.flows) {
      if (other.id == fc.id) fail(path + ".id", "duplicate flow id " + std::to_string(fc.id));
    }
    s.flows.push_back(std::move(fc));
  }

  if (auto it = doc.find("defaults"); it != doc.end()) {
    const json& d = *it;
    if (!d.is_object()) fail("defaults", "expected an object");
    if (d.contains("horizon")) {
      s.defaults.horizon = as_int(d["horizon"], "defaults.horizon");
      if (s.defaults.horizon < 1) fail("defaults.horizon", "must be >= 1");
    }
    if (d.contains("seed")) {
      if (!d["seed"].is_number_unsigned()) fail("defaults.seed", "expected a non-negative integer");
      s.defaults.seed = d["seed"].get<std::uint64_t>();
    }
    if (d.contains("policy")) {
      if (!d["policy"].is_string()) fail("defaults.policy", "expected a string");
      auto p = parse_policy(d["policy"].get<std::string>());
      if (!p) fail("defaults.policy", "expected qbp, dbp, qgms or dgms");
      s.defaults.policy = *p;
    }
  }

  // Routes and interference references are checked against the built network.
  build_network(s);
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ConfigError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["nodes"] = s.nodes;
  doc["links"] = json::array();
  for (const Link& l : s.links) doc["links"].push_back({{"src", l.src}, {"dst", l.dst}, {"capacity", l.capacity}});
  if (const auto* k = std::get_if<KHopInterference>(&s.interference)) {
    doc["interference"] = {{"kind", "khop"}, {"k", k->k}};
  } else {
    json list = json::array();
    for (const auto& [a, b] : std::get<ExplicitInterference>(s.interference).conflicts) {
      list.push_back(json::array({json::array({a.first, a.second}), json::array({b.first, b.second})}));
    }
    doc["interference"] = {{"kind", "explicit"}, {"conflicts", list}};
  }
  doc["flows"] = json::array();
  for (const FlowConfig& f : s.flows) {
    doc["flows"].push_back({{"id", f.id}, {"route", f.route}, {"arrival", arrival_json(f.arrival)}});
  }
  doc["defaults"] = {{"horizon", s.defaults.horizon},
                     {"seed", s.defaults.seed},
                     {"policy", std::string(to_string(s.defaults.policy))}};
  return doc;
}

Network build_network(const Scenario& s) {
  Topology topology = make_topology(s);
  std::vector<Flow> flows = make_flows(s, topology);
  try {
    return Network(std::move(topology), std::move(flows), s.interference);
  } catch (const ConfigError& e) {
    throw ConfigError("scenario '" + s.name + "': " + e.what());
  }
}

std::vector<std::string> builtin_scenario_names() { return {"hnet", "grid4x4"}; }

bool is_builtin_scenario(const std::string& name) {
  auto names = builtin_scenario_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

// H-shaped network: short flow 2->4->6 carries one Poisson(10) batch, long
// flows 1->2->3 and 5->6->7 inject Poisson(3) every slot. Every link carries
// 5 packets per slot; 2-hop interference.
Scenario make_hnet() {
  Scenario s;
  s.name = "hnet";
  s.nodes = {1, 2, 3, 4, 5, 6, 7};
  s.links = {{1, 2, 5}, {2, 3, 5}, {2, 4, 5}, {4, 6, 5}, {5, 6, 5}, {6, 7, 5}};
  s.interference = KHopInterference{2};
  s.flows = {
      {1, {2, 4, 6}, FiniteBatch{10.0}},
      {2, {1, 2, 3}, PoissonPerSlot{3.0}},
      {3, {5, 6, 7}, PoissonPerSlot{3.0}},
  };
  s.defaults = {100000, 1, Policy::dbp};
  return s;
}

// 4x4 grid, nodes 1..16 row-major. Each of the 24 grid adjacencies is one
// directed link, oriented along the flow that uses it. Flow 1 is the bursty
// flow 11->10->9 (file probability 0.01, mean file size 0.1/0.01 = 10, i.e.
// rate 0.1 before rho scaling); flows 2..9 are Poisson with rate 1 before
// rho scaling. Routes and capacities (1, 3 or 4 packets per slot) are a fixed
// asymmetric choice; with them the Q-BP stability boundary lies between
// rho = 0.2 and rho = 0.25.
Scenario make_grid4x4() {
  Scenario s;
  s.name = "grid4x4";
  for (NodeId n = 1; n <= 16; ++n) s.nodes.push_back(n);
  s.links = {
      // bursty flow
      {11, 10, 3}, {10, 9, 1},
      // row 1, left to right
      {1, 2, 4}, {2, 3, 3}, {3, 4, 1},
      // column 1, upwards
      {13, 9, 3}, {9, 5, 4}, {5, 1, 1},
      // column 4, downwards
      {4, 8, 3}, {8, 12, 1}, {12, 16, 4},
      // row 4, right to left
      {16, 15, 1}, {15, 14, 4}, {14, 13, 3},
      // row 2, left to right
      {5, 6, 3}, {6, 7, 4}, {7, 8, 3},
      // column 2, downwards
      {2, 6, 1}, {6, 10, 3}, {10, 14, 4},
      // column 3, two hops down
      {3, 7, 4}, {7, 11, 1},
      // 12 -> 11 -> 15
      {12, 11, 3}, {11, 15, 1},
  };
  s.interference = KHopInterference{2};
  s.flows = {
      {1, {11, 10, 9}, BurstyFile{0.01, 10.0}},
      {2, {1, 2, 3, 4}, PoissonPerSlot{1.0}},
      {3, {13, 9, 5, 1}, PoissonPerSlot{1.0}},
      {4, {4, 8, 12, 16}, PoissonPerSlot{1.0}},
      {5, {16, 15, 14, 13}, PoissonPerSlot{1.0}},
      {6, {5, 6, 7, 8}, PoissonPerSlot{1.0}},
      {7, {2, 6, 10, 14}, PoissonPerSlot{1.0}},
      {8, {3, 7, 11}, PoissonPerSlot{1.0}},
      {9, {12, 11, 15}, PoissonPerSlot{1.0}},
  };
  s.defaults = {100000, 1, Policy::dbp};
  return s;
}

}  // namespace

Scenario builtin_scenario(const std::string& name) {
  if (name == "hnet") return make_hnet();
  if (name == "grid4x4") return make_grid4x4();
  throw ConfigError("unknown built-in scenario '" + name + "' (expected hnet or grid4x4)");
}

Scenario load_scenario(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return builtin_scenario(spec.substr(prefix.size()));
  std::error_code ec;
  if (is_builtin_scenario(spec) && !std::filesystem::exists(spec, ec)) return builtin_scenario(spec);
  std::ifstream in(spec);
  if (!in) throw ConfigError("cannot open scenario file '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(spec + ": " + e.what());
  }
}

}  // namespace bpsim
