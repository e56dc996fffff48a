#pragma once

// Query-phase extraction of the subtree induced by a point set S, with the
// induced meetings. Reads only the compressed tree and its path index.

#include <unordered_map>
#include <vector>

#include "dmot/hierarchy.hpp"
#include "dmot/path_nav.hpp"

namespace dmot {

struct ENode {
  Level level = 0;
  int32_t parent = -1;
  std::vector<int32_t> children;  // left to right
  NodeId origin = kNoNode;        // lowest node of the full tree with the same trace on S
  int32_t leaf_begin = 0;         // range into ExtractedTree::inorder
  int32_t leaf_count = 0;
  std::vector<int32_t> meetings;  // indices, sorted by (level, partner)
};

struct ExtractedTree {
  std::vector<ENode> nodes;       // leaves first, in inorder
  int32_t root = -1;
  std::vector<PointId> inorder;   // points of S, left to right
  std::vector<Meeting> meetings;  // local ids, a < b, sorted by (level, a, b)

  int32_t size() const { return static_cast<int32_t>(nodes.size()); }
  int32_t leaf_count() const { return static_cast<int32_t>(inorder.size()); }
  Level parent_level(int32_t x) const {
    return nodes[x].parent < 0 ? kInfLevel : nodes[nodes[x].parent].level;
  }
  PointId rep(int32_t x) const { return inorder[nodes[x].leaf_begin]; }
  std::vector<PointId> members(int32_t x) const;
  // x stores meeting m when its parent appears no later than the partner's.
  bool responsible(int32_t x, const Meeting& m) const {
    return parent_level(x) <= parent_level(m.other(x));
  }
};

// Nodes and edges only.
ExtractedTree extract_nodes(const CompressedTree& t, std::vector<PointId> s);
// Fills the induced meetings of a skeleton.
void extract_meetings(ExtractedTree& et, const CompressedTree& t, const PathNav& nav);
ExtractedTree extract_subtree(const CompressedTree& t, const PathNav& nav,
                              const std::vector<PointId>& s);

}  // namespace dmot
