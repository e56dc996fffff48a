#include "dmot/extraction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace dmot {

std::vector<PointId> ExtractedTree::members(int32_t x) const {
  std::vector<PointId> out(inorder.begin() + nodes[x].leaf_begin,
                           inorder.begin() + nodes[x].leaf_begin + nodes[x].leaf_count);
  std::sort(out.begin(), out.end());
  return out;
}

ExtractedTree extract_nodes(const CompressedTree& t, std::vector<PointId> s) {
  if (s.empty()) throw Error(ErrorCode::EmptyQuery, "empty point set");
  for (PointId p : s) {
    if (p < 0 || p >= t.n) throw Error(ErrorCode::UnknownPoint, std::to_string(p));
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  auto pos = [&](NodeId x) { return t.nodes[x].leaf_begin; };
  std::sort(s.begin(), s.end(),
            [&](PointId a, PointId b) { return pos(t.leaf_of[a]) < pos(t.leaf_of[b]); });

  ExtractedTree et;
  et.inorder = s;
  int k = static_cast<int>(s.size());
  // P: current top nodes keyed by inorder position of their leftmost leaf.
  std::map<int32_t, int32_t> P;
  for (int i = 0; i < k; ++i) {
    ENode leaf;
    leaf.origin = t.leaf_of[s[i]];
    leaf.leaf_begin = i;
    leaf.leaf_count = 1;
    et.nodes.push_back(leaf);
    P.emplace(pos(leaf.origin), i);
  }
  // M: (level(lca), lca) -> neighbouring pair, several values per key.
  std::multimap<std::pair<Level, NodeId>, std::pair<NodeId, NodeId>> M;
  auto add_pair = [&](NodeId a, NodeId b) {
    NodeId c = t.lca(a, b);
    M.emplace(std::make_pair(t.level(c), c), std::make_pair(a, b));
  };
  for (int i = 0; i + 1 < k; ++i) add_pair(et.nodes[i].origin, et.nodes[i + 1].origin);

  et.root = 0;
  while (!M.empty()) {
    auto key = M.begin()->first;
    auto range = M.equal_range(key);
    std::vector<int32_t> kids;
    auto take = [&](NodeId a) {
      auto it = P.find(pos(a));
      if (it == P.end() || et.nodes[it->second].origin != a) return;
      kids.push_back(it->second);
      P.erase(it);
    };
    for (auto it = range.first; it != range.second; ++it) {
      take(it->second.first);
      take(it->second.second);
    }
    M.erase(range.first, range.second);
    if (kids.size() < 2) {
      for (int32_t x : kids) P.emplace(pos(et.nodes[x].origin), x);
      continue;
    }
    std::sort(kids.begin(), kids.end(), [&](int32_t a, int32_t b) {
      return et.nodes[a].leaf_begin < et.nodes[b].leaf_begin;
    });
    ENode q;
    q.level = key.first;
    q.origin = key.second;
    q.children = kids;
    q.leaf_begin = et.nodes[kids.front()].leaf_begin;
    for (int32_t x : kids) q.leaf_count += et.nodes[x].leaf_count;
    auto id = static_cast<int32_t>(et.nodes.size());
    for (int32_t x : kids) et.nodes[x].parent = id;
    et.nodes.push_back(std::move(q));
    et.root = id;
    auto it = P.emplace(pos(key.second), id).first;
    if (it != P.begin()) add_pair(et.nodes[std::prev(it)->second].origin, key.second);
    if (std::next(it) != P.end()) add_pair(key.second, et.nodes[std::next(it)->second].origin);
  }
  return et;
}

void extract_meetings(ExtractedTree& et, const CompressedTree& t, const PathNav& nav) {
  int32_t count = et.size();
  std::vector<Meeting> found;
  std::set<std::pair<int32_t, int32_t>> seen;
  std::vector<std::vector<int32_t>> lists(count);
  // First level at which x and y know each other while both exist, if any.
  auto try_meet = [&](int32_t x, int32_t y) {
    if (x == y) return;
    auto key = std::minmax(x, y);
    if (seen.count(key)) return;
    Level lo = std::max(et.nodes[x].level, et.nodes[y].level);
    Level hi = std::min(et.parent_level(x), et.parent_level(y));
    Level j = std::max(lo, nav.meet(et.rep(x), et.rep(y)));
    if (j >= hi) return;
    seen.insert(key);
    auto idx = static_cast<int32_t>(found.size());
    found.push_back({key.first, key.second, j});
    lists[x].push_back(idx);
    lists[y].push_back(idx);
  };

  std::vector<int32_t> inner;
  for (int32_t x = 0; x < count; ++x)
    if (!et.nodes[x].children.empty()) inner.push_back(x);
  std::sort(inner.begin(), inner.end(), [&](int32_t a, int32_t b) {
    return std::pair(et.nodes[a].level, a) > std::pair(et.nodes[b].level, b);
  });
  for (size_t g = 0; g < inner.size();) {
    Level l = et.nodes[inner[g]].level;
    size_t end = g;
    while (end < inner.size() && et.nodes[inner[end]].level == l) ++end;
    // Children whose sets meet inside the group: mark, for each child, the
    // node of the full tree just below its parent's origin.
    std::unordered_map<NodeId, int32_t> marked;
    for (size_t u = g; u < end; ++u) {
      for (int32_t v : et.nodes[inner[u]].children) {
        marked.emplace(nav.level_ancestor_jump(et.rep(v), l - 1), v);
      }
    }
    for (auto [x, v] : marked) {
      for (const auto& [y, mi] : t.responsibility(x)) {
        auto it = marked.find(y);
        if (it != marked.end()) try_meet(v, it->second);
      }
    }
    // Meetings inherited from the parent's meetings at its own level.
    for (size_t u = g; u < end; ++u) {
      int32_t un = inner[u];
      std::vector<int32_t> partners;
      for (int32_t mi : lists[un]) {
        if (found[mi].level == l) partners.push_back(found[mi].other(un));
      }
      for (int32_t w : partners) {
        if (et.parent_level(w) <= l) continue;
        for (int32_t v : et.nodes[un].children) try_meet(v, w);
      }
    }
    g = end;
  }

  std::vector<int32_t> order(found.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
  std::sort(order.begin(), order.end(), [&](int32_t p, int32_t q) {
    return std::tie(found[p].level, found[p].a, found[p].b) <
           std::tie(found[q].level, found[q].a, found[q].b);
  });
  et.meetings.clear();
  for (int32_t i : order) et.meetings.push_back(found[i]);
  for (auto& node : et.nodes) node.meetings.clear();
  for (int32_t i = 0; i < static_cast<int32_t>(et.meetings.size()); ++i) {
    et.nodes[et.meetings[i].a].meetings.push_back(i);
    et.nodes[et.meetings[i].b].meetings.push_back(i);
  }
  for (int32_t x = 0; x < count; ++x) {
    auto& list = et.nodes[x].meetings;
    std::sort(list.begin(), list.end(), [&](int32_t p, int32_t q) {
      return std::pair(et.meetings[p].level, et.meetings[p].other(x)) <
             std::pair(et.meetings[q].level, et.meetings[q].other(x));
    });
  }
}

ExtractedTree extract_subtree(const CompressedTree& t, const PathNav& nav,
                              const std::vector<PointId>& s) {
  ExtractedTree et = extract_nodes(t, s);
  extract_meetings(et, t, nav);
  return et;
}

}  // namespace dmot
