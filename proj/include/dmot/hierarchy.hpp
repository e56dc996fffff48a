#pragma once

// The compressed tree: one node per distinct set of the hierarchy, with its
// meetings, responsibility dictionaries and an LCA index. Query-phase type.

#include <optional>
#include <unordered_map>
#include <vector>

#include "dmot/common.hpp"

namespace dmot {

struct CNode {
  Level level = 0;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;   // ascending id
  PointId point = -1;             // leaves only
  int32_t leaf_count = 0;
  int32_t subtree_nodes = 0;
  int32_t leaf_begin = 0;         // inorder index of the leftmost leaf
  std::vector<int32_t> meetings;  // indices into CompressedTree::meetings, by (level, partner)
};

class CompressedTree {
 public:
  PartitionConfig config;
  uint64_t hash_seed = 0x9e3779b97f4a7c15ULL;
  int n = 0;
  NodeId root = kNoNode;
  std::vector<CNode> nodes;
  std::vector<Meeting> meetings;  // a < b, sorted by (level, a, b)
  std::vector<Level> levels;      // retained levels, ascending
  std::vector<NodeId> leaf_of;    // point -> leaf node
  std::vector<PointId> inorder;   // left-to-right leaf points

  // LCA index: Euler tour with first occurrences; the sparse table is derived.
  std::vector<NodeId> euler;
  std::vector<int32_t> depth;
  std::vector<int32_t> first;

  // Rebuilds meeting lists, responsibility dictionaries and LCA tables from
  // nodes/meetings/levels. Called after construction and after loading.
  void finalize(bool rebuild_euler = true);

  NodeId node_count() const { return static_cast<NodeId>(nodes.size()); }
  Level level(NodeId x) const { return nodes[x].level; }
  Level parent_level(NodeId x) const {
    return nodes[x].parent == kNoNode ? kInfLevel : nodes[nodes[x].parent].level;
  }
  bool alive_at(NodeId x, Level j) const { return level(x) <= j && j < parent_level(x); }
  double radius(Level j) const { return config.radius(j); }
  PointId rep_point(NodeId x) const { return inorder[nodes[x].leaf_begin]; }
  bool is_ancestor(NodeId a, NodeId x) const;  // a is x or an ancestor of x

  // Meeting level of x and y (level(x) when x == y), if they meet.
  std::optional<Level> know_query(NodeId x, NodeId y) const;
  NodeId lca(NodeId u, NodeId v) const;
  // Responsibility dictionary of x: partner -> meeting index.
  const std::unordered_map<NodeId, int32_t, SeededHash>& responsibility(NodeId x) const {
    return resp_[x];
  }
  std::vector<PointId> points_of(NodeId x) const;

  void check_node(NodeId x) const;
  void check_point(PointId p) const;

 private:
  std::vector<std::unordered_map<NodeId, int32_t, SeededHash>> resp_;
  std::vector<std::vector<int32_t>> sparse_;  // euler indices with min depth
  std::vector<int32_t> log2_;
};

struct PartitionTree;
CompressedTree compress(const PartitionTree& ptree, uint64_t hash_seed = 0x9e3779b97f4a7c15ULL);

}  // namespace dmot
