#include "dmot/hierarchy.hpp"

#include <algorithm>
#include <string>

namespace dmot {

void CompressedTree::finalize(bool rebuild_euler) {
  NodeId count = node_count();
  for (auto& node : nodes) node.meetings.clear();
  for (int32_t i = 0; i < static_cast<int32_t>(meetings.size()); ++i) {
    nodes[meetings[i].a].meetings.push_back(i);
    nodes[meetings[i].b].meetings.push_back(i);
  }
  for (NodeId x = 0; x < count; ++x) {
    auto& list = nodes[x].meetings;
    std::sort(list.begin(), list.end(), [&](int32_t p, int32_t q) {
      return std::pair(meetings[p].level, meetings[p].other(x)) <
             std::pair(meetings[q].level, meetings[q].other(x));
    });
  }
  // The endpoint whose parent appears first stores the meeting; both on ties.
  SeededHash h{hash_seed};
  resp_.assign(count, std::unordered_map<NodeId, int32_t, SeededHash>(0, h));
  for (int32_t i = 0; i < static_cast<int32_t>(meetings.size()); ++i) {
    const Meeting& m = meetings[i];
    Level pa = parent_level(m.a), pb = parent_level(m.b);
    if (pa <= pb) resp_[m.a].emplace(m.b, i);
    if (pb <= pa) resp_[m.b].emplace(m.a, i);
  }
  if (rebuild_euler) {
    euler.clear();
    depth.clear();
    first.assign(count, -1);
    std::vector<std::pair<NodeId, size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto [x, idx] = stack.back();
      if (idx == 0) first[x] = static_cast<int32_t>(euler.size());
      euler.push_back(x);
      depth.push_back(static_cast<int32_t>(stack.size() - 1));
      if (idx < nodes[x].children.size()) {
        stack.back().second++;
        stack.push_back({nodes[x].children[idx], 0});
      } else {
        stack.pop_back();
      }
    }
  }
  size_t m = euler.size();
  log2_.assign(m + 1, 0);
  for (size_t i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  sparse_.assign(log2_[m] + 1, std::vector<int32_t>(m));
  for (size_t i = 0; i < m; ++i) sparse_[0][i] = static_cast<int32_t>(i);
  for (size_t k = 1; k < sparse_.size(); ++k) {
    for (size_t i = 0; i + (size_t{1} << k) <= m; ++i) {
      int32_t a = sparse_[k - 1][i], b = sparse_[k - 1][i + (size_t{1} << (k - 1))];
      sparse_[k][i] = depth[a] <= depth[b] ? a : b;
    }
  }
}

void CompressedTree::check_node(NodeId x) const {
  if (x < 0 || x >= node_count()) throw Error(ErrorCode::InvalidNode, std::to_string(x));
}

void CompressedTree::check_point(PointId p) const {
  if (p < 0 || p >= n) throw Error(ErrorCode::InvalidPoint, std::to_string(p));
}

bool CompressedTree::is_ancestor(NodeId a, NodeId x) const {
  const CNode& na = nodes[a];
  const CNode& nx = nodes[x];
  // Inner nodes have at least two children, so leaf ranges identify nodes.
  return na.leaf_begin <= nx.leaf_begin &&
         nx.leaf_begin + nx.leaf_count <= na.leaf_begin + na.leaf_count;
}

std::optional<Level> CompressedTree::know_query(NodeId x, NodeId y) const {
  check_node(x);
  check_node(y);
  if (x == y) return level(x);
  auto it = resp_[x].find(y);
  if (it != resp_[x].end()) return meetings[it->second].level;
  it = resp_[y].find(x);
  if (it != resp_[y].end()) return meetings[it->second].level;
  return std::nullopt;
}

NodeId CompressedTree::lca(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  int32_t a = first[u], b = first[v];
  if (a > b) std::swap(a, b);
  int k = log2_[b - a + 1];
  int32_t p = sparse_[k][a], q = sparse_[k][b - (1 << k) + 1];
  return euler[depth[p] <= depth[q] ? p : q];
}

std::vector<PointId> CompressedTree::points_of(NodeId x) const {
  std::vector<PointId> out(inorder.begin() + nodes[x].leaf_begin,
                           inorder.begin() + nodes[x].leaf_begin + nodes[x].leaf_count);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dmot
