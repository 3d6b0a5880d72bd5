#ifndef WSNSIM_TOPOLOGY_HPP
#define WSNSIM_TOPOLOGY_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "wsnsim/config.hpp"

namespace wsnsim {

using NodeId = std::int32_t;

struct NodeSite {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
};

// Immutable after construction. Nodes are adjacent iff their Euclidean
// distance is within the transmission range; the parent DAG is built by
// hop-count layering toward the sink (every strictly-closer neighbor is a
// parent), which gives every connected node at least one parent and multiple
// parents wherever geometry allows.
class Topology {
 public:
  // Builds from explicit positions. Throws TopologyDisconnected (message
  // lists the unreachable node ids) when some node cannot reach the sink.
  static Topology from_sites(std::vector<NodeSite> sites, NodeId sink,
                             double tx_range);

  const std::vector<NodeSite>& sites() const { return sites_; }
  NodeId sink() const { return sink_; }
  int node_count() const { return static_cast<int>(sites_.size()); }

  const std::vector<NodeId>& neighbors(NodeId n) const {
    return neighbors_[static_cast<std::size_t>(n)];
  }
  const std::vector<NodeId>& parents(NodeId n) const {
    return parents_[static_cast<std::size_t>(n)];
  }
  // Nodes that list n among their parents.
  const std::vector<NodeId>& children(NodeId n) const {
    return children_[static_cast<std::size_t>(n)];
  }
  // BFS hop distance to the sink.
  int hop_distance(NodeId n) const {
    return hop_distance_[static_cast<std::size_t>(n)];
  }

  double distance(NodeId a, NodeId b) const;
  bool adjacent(NodeId a, NodeId b) const;

  // Text form: "# wsn-topology v1" then one line per node,
  // "id x y is_sink parents" with 6-decimal coordinates and comma-separated
  // parent ids ("-" when none). Byte-stable for determinism checks.
  void serialize(std::ostream& out) const;

 private:
  std::vector<NodeSite> sites_;
  NodeId sink_ = 0;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<int> hop_distance_;
};

// Random uniform deployment over the configured field; deterministic in
// (config, seed). Sink defaults to the node nearest the field center.
Topology build_topology(const SimConfig& config, std::uint64_t seed);

inline constexpr std::int64_t kUnlimitedBudget = -1;

// Hop count of the best path found by expanding neighbors outward from
// `source` until the sink is reached or `budget` node expansions are spent.
// With an unlimited budget this equals the BFS hop distance. Throws
// NoPathFound when the budget (or the component) is exhausted first.
int find_path_length(const Topology& topology, NodeId source,
                     std::int64_t budget = kUnlimitedBudget);

// Mean discovered path length per BFS hop-distance bucket, unlimited budget.
std::map<int, double> average_path_length(const Topology& topology);

}  // namespace wsnsim

#endif  // WSNSIM_TOPOLOGY_HPP
