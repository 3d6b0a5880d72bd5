#include "wsnsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <string>

#include "wsnsim/errors.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

Topology Topology::from_sites(std::vector<NodeSite> sites, NodeId sink,
                              double tx_range) {
  Topology t;
  t.sites_ = std::move(sites);
  t.sink_ = sink;
  const auto n = t.sites_.size();
  t.neighbors_.assign(n, {});
  t.parents_.assign(n, {});
  t.children_.assign(n, {});
  t.hop_distance_.assign(n, -1);

  const double range2 = tx_range * tx_range;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = t.sites_[i].x - t.sites_[j].x;
      const double dy = t.sites_[i].y - t.sites_[j].y;
      if (dx * dx + dy * dy <= range2) {
        t.neighbors_[i].push_back(static_cast<NodeId>(j));
        t.neighbors_[j].push_back(static_cast<NodeId>(i));
      }
    }
  }

  // BFS layering from the sink.
  std::deque<NodeId> frontier{sink};
  t.hop_distance_[static_cast<std::size_t>(sink)] = 0;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId v : t.neighbors_[static_cast<std::size_t>(u)]) {
      if (t.hop_distance_[static_cast<std::size_t>(v)] < 0) {
        t.hop_distance_[static_cast<std::size_t>(v)] =
            t.hop_distance_[static_cast<std::size_t>(u)] + 1;
        frontier.push_back(v);
      }
    }
  }

  std::string unreachable;
  for (std::size_t i = 0; i < n; ++i) {
    if (t.hop_distance_[i] < 0) {
      if (!unreachable.empty()) unreachable += ",";
      unreachable += std::to_string(i);
    }
  }
  if (!unreachable.empty()) {
    throw Error(ErrorCode::TopologyDisconnected,
                "no path to sink from nodes: " + unreachable);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId v : t.neighbors_[i]) {
      if (t.hop_distance_[static_cast<std::size_t>(v)] ==
          t.hop_distance_[i] - 1) {
        t.parents_[i].push_back(v);
        t.children_[static_cast<std::size_t>(v)].push_back(
            static_cast<NodeId>(i));
      }
    }
    std::sort(t.parents_[i].begin(), t.parents_[i].end());
  }
  for (auto& kids : t.children_) std::sort(kids.begin(), kids.end());
  return t;
}

double Topology::distance(NodeId a, NodeId b) const {
  const auto& sa = sites_[static_cast<std::size_t>(a)];
  const auto& sb = sites_[static_cast<std::size_t>(b)];
  return std::hypot(sa.x - sb.x, sa.y - sb.y);
}

bool Topology::adjacent(NodeId a, NodeId b) const {
  const auto& nbrs = neighbors_[static_cast<std::size_t>(a)];
  return std::find(nbrs.begin(), nbrs.end(), b) != nbrs.end();
}

void Topology::serialize(std::ostream& out) const {
  out << "# wsn-topology v1\n";
  char buf[64];
  for (const auto& s : sites_) {
    out << s.id << ' ';
    std::snprintf(buf, sizeof buf, "%.6f %.6f", s.x, s.y);
    out << buf << ' ' << (s.id == sink_ ? 1 : 0) << ' ';
    const auto& ps = parents_[static_cast<std::size_t>(s.id)];
    if (ps.empty()) {
      out << '-';
    } else {
      for (std::size_t k = 0; k < ps.size(); ++k) {
        if (k) out << ',';
        out << ps[k];
      }
    }
    out << '\n';
  }
}

Topology build_topology(const SimConfig& config, std::uint64_t seed) {
  if (config.node_count < 2) {
    throw Error(ErrorCode::InvalidValue, "node_count must be >= 2");
  }
  if (config.field_side <= 0 || config.tx_range <= 0) {
    throw Error(ErrorCode::InvalidValue,
                "field_side and tx_range must be > 0");
  }

  Rng rng = Rng(seed).derive(0);  // stream 0: deployment
  std::vector<NodeSite> sites;
  sites.reserve(static_cast<std::size_t>(config.node_count));
  for (int i = 0; i < config.node_count; ++i) {
    NodeSite s;
    s.id = i;
    s.x = rng.uniform() * config.field_side;
    s.y = rng.uniform() * config.field_side;
    sites.push_back(s);
  }

  NodeId sink = config.sink_id;
  if (sink < 0) {
    // Node nearest the field center, lowest id on ties.
    const double cx = config.field_side / 2, cy = config.field_side / 2;
    double best = -1;
    for (const auto& s : sites) {
      const double d2 = (s.x - cx) * (s.x - cx) + (s.y - cy) * (s.y - cy);
      if (best < 0 || d2 < best) {
        best = d2;
        sink = s.id;
      }
    }
  }
  return Topology::from_sites(std::move(sites), sink, config.tx_range);
}

int find_path_length(const Topology& topology, NodeId source,
                     std::int64_t budget) {
  const NodeId sink = topology.sink();
  if (source == sink) return 0;

  // Iterative neighbor expansion outward from the source; each expanded
  // node costs one budget unit. The first time the sink is touched the
  // discovered path is the shortest one.
  std::vector<char> seen(static_cast<std::size_t>(topology.node_count()), 0);
  std::deque<std::pair<NodeId, int>> frontier{{source, 0}};
  seen[static_cast<std::size_t>(source)] = 1;
  std::int64_t spent = 0;
  while (!frontier.empty()) {
    if (budget >= 0 && spent >= budget) {
      throw Error(ErrorCode::NoPathFound,
                  "path search budget exhausted before reaching the sink");
    }
    auto [u, hops] = frontier.front();
    frontier.pop_front();
    ++spent;
    for (NodeId v : topology.neighbors(u)) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      if (v == sink) return hops + 1;
      seen[static_cast<std::size_t>(v)] = 1;
      frontier.emplace_back(v, hops + 1);
    }
  }
  throw Error(ErrorCode::NoPathFound,
              "no path from node " + std::to_string(source) + " to the sink");
}

std::map<int, double> average_path_length(const Topology& topology) {
  std::map<int, std::pair<double, int>> acc;  // bucket -> (sum, count)
  for (const auto& s : topology.sites()) {
    const int bucket = topology.hop_distance(s.id);
    const int len = find_path_length(topology, s.id);
    auto& [sum, count] = acc[bucket];
    sum += len;
    ++count;
  }
  std::map<int, double> out;
  for (const auto& [bucket, sc] : acc) out[bucket] = sc.first / sc.second;
  return out;
}

}  // namespace wsnsim
