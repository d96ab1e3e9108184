#include "bpsim/model.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "bpsim/errors.hpp"

namespace bpsim {

Topology::Topology(std::vector<NodeId> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  std::set<NodeId> seen;
  for (NodeId n : nodes_) {
    if (!seen.insert(n).second) {
      throw ConfigError("duplicate node id " + std::to_string(n));
    }
  }
  std::set<std::pair<NodeId, NodeId>> link_keys;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    std::ostringstream where;
    where << "link " << i << " (" << l.src << "->" << l.dst << ")";
    if (!seen.count(l.src) || !seen.count(l.dst)) {
      NodeId missing = seen.count(l.src) ? l.dst : l.src;
      throw ConfigError(where.str() + ": endpoint node " + std::to_string(missing) + " is not declared");
    }
    if (l.src == l.dst) throw ConfigError(where.str() + ": self loop");
    if (l.capacity < 1) throw ConfigError(where.str() + ": capacity must be >= 1");
    if (!link_keys.insert({l.src, l.dst}).second) throw ConfigError(where.str() + ": duplicate link");
  }

  // All-pairs BFS on the undirected support.
  const std::size_t n = nodes_.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Link& l : links_) {
    std::size_t a = node_slot(l.src);
    std::size_t b = node_slot(l.dst);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  distance_.assign(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> frontier{s};
    distance_[s][s] = 0;
    while (!frontier.empty()) {
      std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t v : adj[u]) {
        if (distance_[s][v] < 0) {
          distance_[s][v] = distance_[s][u] + 1;
          frontier.push_back(v);
        }
      }
    }
  }
}

std::size_t Topology::node_slot(NodeId n) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), n);
  if (it == nodes_.end()) throw ConfigError("unknown node " + std::to_string(n));
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool Topology::has_node(NodeId n) const { return std::find(nodes_.begin(), nodes_.end(), n) != nodes_.end(); }

std::optional<LinkIndex> Topology::find_link(NodeId src, NodeId dst) const {
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (links_[i].src == src && links_[i].dst == dst) return i;
  }
  return std::nullopt;
}

std::optional<int> Topology::node_distance(NodeId a, NodeId b) const {
  int d = distance_[node_slot(a)][node_slot(b)];
  if (d < 0) return std::nullopt;
  return d;
}

std::optional<int> Topology::link_distance(LinkIndex a, LinkIndex b) const {
  const Link& la = link(a);
  const Link& lb = link(b);
  std::optional<int> best;
  for (NodeId x : {la.src, la.dst}) {
    for (NodeId y : {lb.src, lb.dst}) {
      auto d = node_distance(x, y);
      if (d && (!best || *d < *best)) best = d;
    }
  }
  return best;
}

std::vector<LinkIndex> route_from_nodes(const Topology& topology, const std::vector<NodeId>& nodes) {
  if (nodes.size() < 2) throw ConfigError("route needs at least two nodes");
  std::vector<LinkIndex> route;
  route.reserve(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto l = topology.find_link(nodes[i], nodes[i + 1]);
    if (!l) {
      throw ConfigError("route hop " + std::to_string(i + 1) + " uses unknown link " + std::to_string(nodes[i]) +
                        "->" + std::to_string(nodes[i + 1]));
    }
    route.push_back(*l);
  }
  return route;
}

void validate_route(const Topology& topology, const Flow& flow) {
  const std::string who = "flow " + std::to_string(flow.id);
  if (flow.route.empty()) throw ConfigError(who + ": empty route");
  std::set<NodeId> visited;
  for (std::size_t k = 0; k < flow.route.size(); ++k) {
    if (flow.route[k] >= topology.links().size()) {
      throw ConfigError(who + ": hop " + std::to_string(k + 1) + " references unknown link index " +
                        std::to_string(flow.route[k]));
    }
    const Link& l = topology.link(flow.route[k]);
    if (k == 0) {
      visited.insert(l.src);
    } else if (topology.link(flow.route[k - 1]).dst != l.src) {
      throw ConfigError(who + ": hop " + std::to_string(k + 1) + " does not start where hop " + std::to_string(k) +
                        " ends");
    }
    if (!visited.insert(l.dst).second) {
      throw ConfigError(who + ": route is not loop-free (node " + std::to_string(l.dst) + " repeats)");
    }
  }
}

std::vector<LinkFlowPair> build_pairs(const Topology& topology, const std::vector<Flow>& flows) {
  std::vector<const Flow*> ordered;
  ordered.reserve(flows.size());
  std::set<FlowId> ids;
  for (const Flow& f : flows) {
    if (!ids.insert(f.id).second) throw ConfigError("duplicate flow id " + std::to_string(f.id));
    validate_route(topology, f);
    ordered.push_back(&f);
  }
  std::sort(ordered.begin(), ordered.end(), [](const Flow* a, const Flow* b) { return a->id < b->id; });

  std::vector<LinkFlowPair> pairs;
  for (const Flow* f : ordered) {
    for (std::size_t k = 0; k < f->route.size(); ++k) {
      LinkIndex l = f->route[k];
      pairs.push_back({f->id, static_cast<int>(k + 1), l, topology.link(l).capacity});
    }
  }
  return pairs;
}

ConflictGraph::ConflictGraph(std::size_t pair_count)
    : matrix_(pair_count * pair_count, 0), neighbors_(pair_count) {}

void ConflictGraph::connect(PairIndex a, PairIndex b) {
  if (a >= size() || b >= size()) throw ConfigError("conflict references a pair index out of range");
  if (a == b) throw ConfigError("a pair cannot conflict with itself");
  if (adjacent(a, b)) return;
  matrix_[a * size() + b] = 1;
  matrix_[b * size() + a] = 1;
  auto insert_sorted = [](std::vector<PairIndex>& v, PairIndex x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); };
  insert_sorted(neighbors_[a], b);
  insert_sorted(neighbors_[b], a);
}

std::size_t ConflictGraph::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& n : neighbors_) degree_sum += n.size();
  return degree_sum / 2;
}

std::vector<std::pair<PairIndex, PairIndex>> ConflictGraph::edges() const {
  std::vector<std::pair<PairIndex, PairIndex>> out;
  for (PairIndex a = 0; a < size(); ++a) {
    for (PairIndex b : neighbors_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

ConflictGraph khop_conflicts(const Topology& topology, const std::vector<LinkFlowPair>& pairs, int k) {
  if (k < 1) throw ConfigError("K-hop interference needs K >= 1");
  ConflictGraph g(pairs.size());
  for (PairIndex a = 0; a < pairs.size(); ++a) {
    for (PairIndex b = a + 1; b < pairs.size(); ++b) {
      auto d = topology.link_distance(pairs[a].link, pairs[b].link);
      if (pairs[a].link == pairs[b].link || (d && *d <= k - 1)) g.connect(a, b);
    }
  }
  return g;
}

ConflictGraph explicit_conflicts(std::size_t pair_count,
                                 const std::vector<std::pair<PairIndex, PairIndex>>& conflicts) {
  ConflictGraph g(pair_count);
  for (const auto& [a, b] : conflicts) g.connect(a, b);
  return g;
}

Network::Network(Topology topology, std::vector<Flow> flows, const InterferenceSpec& interference)
    : topology_(std::move(topology)), flows_(std::move(flows)) {
  pairs_ = build_pairs(topology_, flows_);
  std::sort(flows_.begin(), flows_.end(), [](const Flow& a, const Flow& b) { return a.id < b.id; });
  for (const Flow& f : flows_) validate(f.arrival);
  PairIndex next = 0;
  for (const Flow& f : flows_) {
    first_pair_.push_back(next);
    next += f.hops();
  }

  if (const auto* khop = std::get_if<KHopInterference>(&interference)) {
    conflicts_ = khop_conflicts(topology_, pairs_, khop->k);
  } else {
    const auto& expl = std::get<ExplicitInterference>(interference);
    std::vector<std::pair<PairIndex, PairIndex>> indices;
    for (const auto& [a, b] : expl.conflicts) {
      indices.emplace_back(pair_index(a.first, a.second), pair_index(b.first, b.second));
    }
    conflicts_ = explicit_conflicts(pairs_.size(), indices);
  }
}

std::size_t Network::flow_position(FlowId id) const {
  for (std::size_t f = 0; f < flows_.size(); ++f) {
    if (flows_[f].id == id) return f;
  }
  throw ConfigError("unknown flow id " + std::to_string(id));
}

PairIndex Network::pair_index(FlowId id, int hop) const {
  std::size_t f = flow_position(id);
  if (hop < 1 || static_cast<std::size_t>(hop) > hops(f)) {
    throw ConfigError("flow " + std::to_string(id) + " has no hop " + std::to_string(hop));
  }
  return first_pair_[f] + static_cast<PairIndex>(hop - 1);
}

bool Network::unit_capacity() const {
  return std::all_of(pairs_.begin(), pairs_.end(), [](const LinkFlowPair& p) { return p.capacity == 1; });
}

}  // namespace bpsim
