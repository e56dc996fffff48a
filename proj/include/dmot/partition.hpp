#pragma once

// Preprocessing-phase construction of the hierarchical partition.

#include <vector>

#include "dmot/common.hpp"
#include "dmot/metric.hpp"

namespace dmot {

struct CarvedSet {
  PointId leader = -1;
  std::vector<PointId> members;
};

// Greedy ball carving: scanning leaders by ascending id, each unassigned
// leader v takes every unassigned leader strictly within 2^(-eta-1) * r.
std::vector<CarvedSet> carve_partition(const std::vector<PointId>& leaders_in, double r,
                                       const MetricSpace& metric, int eta);

struct PartitionLevel {
  Level j = 0;
  double r = 0.0;
  std::vector<CarvedSet> sets;            // ordered by node id
  std::vector<NodeId> node_of_set;        // tree node carrying each set
  std::vector<std::vector<int>> knows;    // symmetric, over set indices
};

// The partition tree in merge-forest form: a node exists for every set that
// is not a copy of its only child, so level j's partition is the set of nodes
// alive at j (level(x) <= j < level(parent(x))). Meetings record the first
// level at which two simultaneously alive nodes know each other.
struct PartitionTree {
  struct Node {
    Level level = 0;
    NodeId parent = kNoNode;
    std::vector<NodeId> children;  // ascending id
    PointId leader = -1;
    double rad = 0.0;              // upper bound on member distance to leader
    int leaf_begin = 0;            // range into leaf_order
    int leaf_end = 0;
  };

  PartitionConfig config;
  int n = 0;
  std::vector<Node> nodes;         // nodes [0, n) are the leaves of points 0..n-1
  NodeId root = kNoNode;
  std::vector<Meeting> meetings;   // a < b, sorted by (level, a, b)
  std::vector<Level> levels;       // retained event levels, ascending
  std::vector<PointId> leaf_order; // points in depth-first order
  const MetricSpace* metric = nullptr;

  Level parent_level(NodeId x) const {
    return nodes[x].parent == kNoNode ? kInfLevel : nodes[nodes[x].parent].level;
  }
  bool alive_at(NodeId x, Level j) const {
    return nodes[x].level <= j && j < parent_level(x);
  }
  std::vector<PointId> members(NodeId x) const;
  // Materializes the partition and knows relation at level j (brute force).
  PartitionLevel level_view(Level j) const;
};

PartitionTree build_partition_tree(const MetricSpace& metric, const MetricParams& params,
                                   PartitionConfig config);

// True iff the r_j-ball union around a's members crosses b (or a == b).
bool knows_at_level(const PartitionTree& tree, Level j, NodeId a, NodeId b);

}  // namespace dmot
