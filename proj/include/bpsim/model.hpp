#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bpsim/traffic.hpp"

namespace bpsim {

using NodeId = int;
using FlowId = int;
using LinkIndex = std::size_t;
using PairIndex = std::size_t;

struct Link {
  NodeId src = 0;
  NodeId dst = 0;
  int capacity = 1;  // packets per slot

  bool operator==(const Link&) const = default;
};

// Directed network graph. Immutable once constructed.
class Topology {
 public:
  Topology() = default;
  // Throws ConfigError on duplicate nodes, duplicate (src, dst) links,
  // undeclared endpoints, self loops or capacity < 1.
  Topology(std::vector<NodeId> nodes, std::vector<Link> links);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkIndex i) const { return links_.at(i); }

  std::optional<LinkIndex> find_link(NodeId src, NodeId dst) const;
  bool has_node(NodeId n) const;

  // Hop distance between two nodes on the undirected support, nullopt if
  // they are disconnected.
  std::optional<int> node_distance(NodeId a, NodeId b) const;
  // Minimum node_distance over the four endpoint combinations.
  std::optional<int> link_distance(LinkIndex a, LinkIndex b) const;

 private:
  std::size_t node_slot(NodeId n) const;

  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> distance_;  // -1 = unreachable
};

struct Flow {
  FlowId id = 0;
  std::vector<LinkIndex> route;
  ArrivalSpec arrival = PoissonPerSlot{};

  std::size_t hops() const { return route.size(); }
};

// Converts a node sequence into link indices; throws ConfigError when a
// consecutive node pair has no directed link.
std::vector<LinkIndex> route_from_nodes(const Topology& topology, const std::vector<NodeId>& nodes);

// Checks the route is non-empty, chains hop to hop and visits no node twice.
void validate_route(const Topology& topology, const Flow& flow);

struct LinkFlowPair {
  FlowId flow = 0;
  int hop = 1;  // 1-based
  LinkIndex link = 0;
  int capacity = 1;
};

// Pairs sorted by (flow id, hop). Validates every route and rejects
// duplicate flow ids.
std::vector<LinkFlowPair> build_pairs(const Topology& topology, const std::vector<Flow>& flows);

// Symmetric, irreflexive interference relation over pair indices.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(std::size_t pair_count);

  std::size_t size() const { return neighbors_.size(); }
  bool adjacent(PairIndex a, PairIndex b) const { return matrix_[a * size() + b] != 0; }
  const std::vector<PairIndex>& neighbors(PairIndex p) const { return neighbors_.at(p); }
  std::size_t edge_count() const;
  // Undirected edge list with a < b, lexicographic order.
  std::vector<std::pair<PairIndex, PairIndex>> edges() const;

  void connect(PairIndex a, PairIndex b);

  bool operator==(const ConflictGraph& other) const { return matrix_ == other.matrix_; }

 private:
  std::vector<std::uint8_t> matrix_;
  std::vector<std::vector<PairIndex>> neighbors_;
};

// Pairs p != q conflict iff link_distance(link(p), link(q)) <= k - 1. Pairs on
// the same physical link always conflict.
ConflictGraph khop_conflicts(const Topology& topology, const std::vector<LinkFlowPair>& pairs, int k);

// Symmetrized copy of an explicit conflict list. Throws ConfigError on
// out-of-range or self-referencing entries.
ConflictGraph explicit_conflicts(std::size_t pair_count,
                                 const std::vector<std::pair<PairIndex, PairIndex>>& conflicts);

struct KHopInterference {
  int k = 2;

  bool operator==(const KHopInterference&) const = default;
};
struct ExplicitInterference {
  // Entries name pairs as ((flow, hop), (flow, hop)).
  std::vector<std::pair<std::pair<FlowId, int>, std::pair<FlowId, int>>> conflicts;

  bool operator==(const ExplicitInterference&) const = default;
};
using InterferenceSpec = std::variant<KHopInterference, ExplicitInterference>;

// Everything a simulation needs about the static network.
class Network {
 public:
  Network(Topology topology, std::vector<Flow> flows, const InterferenceSpec& interference);

  const Topology& topology() const { return topology_; }
  // Flows ordered by id; flow position f is used for all per-flow vectors.
  const std::vector<Flow>& flows() const { return flows_; }
  const std::vector<LinkFlowPair>& pairs() const { return pairs_; }
  const ConflictGraph& conflicts() const { return conflicts_; }

  std::size_t flow_count() const { return flows_.size(); }
  std::size_t pair_count() const { return pairs_.size(); }
  // Index of (flow position f, hop 1).
  PairIndex first_pair(std::size_t f) const { return first_pair_[f]; }
  std::size_t hops(std::size_t f) const { return flows_[f].hops(); }
  std::size_t flow_position(FlowId id) const;
  PairIndex pair_index(FlowId id, int hop) const;
  bool unit_capacity() const;

 private:
  Topology topology_;
  std::vector<Flow> flows_;
  std::vector<LinkFlowPair> pairs_;
  std::vector<PairIndex> first_pair_;
  ConflictGraph conflicts_;
};

}  // namespace bpsim
