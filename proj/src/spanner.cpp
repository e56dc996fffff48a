#include "dmot/spanner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

namespace dmot {

int32_t Pseudospanner::vertex(PointId p) const {
  auto it = index_of.find(p);
  if (it == index_of.end()) throw Error(ErrorCode::EndpointNotInQuery, std::to_string(p));
  return it->second;
}

std::vector<PointId> assign_leaders(const ExtractedTree& et) {
  std::vector<PointId> leader(et.size(), -1);
  // Children precede parents in the extraction order.
  for (int32_t x = 0; x < et.size(); ++x) {
    const auto& kids = et.nodes[x].children;
    if (kids.empty()) {
      leader[x] = et.rep(x);
    } else {
      leader[x] = leader[kids.front()];
      for (int32_t c : kids) leader[x] = std::min(leader[x], leader[c]);
    }
  }
  return leader;
}

Pseudospanner build_pseudospanner(const ExtractedTree& et, const PartitionConfig& config) {
  Pseudospanner sp;
  sp.vertices = et.inorder;
  std::sort(sp.vertices.begin(), sp.vertices.end());
  for (int32_t i = 0; i < sp.size(); ++i) sp.index_of.emplace(sp.vertices[i], i);
  sp.leader_of_node = assign_leaders(et);
  sp.beaten_at.assign(sp.size(), kInfLevel);
  std::map<std::pair<int32_t, int32_t>, double> best;
  auto add = [&](PointId a, PointId b, double w) {
    int32_t u = sp.index_of.at(a), v = sp.index_of.at(b);
    if (u > v) std::swap(u, v);
    auto [it, fresh] = best.emplace(std::make_pair(u, v), w);
    if (!fresh) it->second = std::min(it->second, w);
  };
  double son = 2.0 * config.leader_factor();
  for (int32_t x = 0; x < et.size(); ++x) {
    PointId lx = sp.leader_of_node[x];
    for (int32_t c : et.nodes[x].children) {
      PointId lc = sp.leader_of_node[c];
      if (lc == lx) continue;
      add(lc, lx, son * config.radius(et.nodes[x].level));
      sp.beaten_at[sp.index_of.at(lc)] = et.nodes[x].level;
    }
  }
  double meet = config.sandwich_factor();
  for (const auto& m : et.meetings) {
    add(sp.leader_of_node[m.a], sp.leader_of_node[m.b], meet * config.radius(m.level - 1));
  }
  sp.adj.assign(sp.size(), {});
  for (const auto& [key, w] : best) {
    sp.edges.push_back({key.first, key.second, w});
    sp.adj[key.first].push_back({key.second, w});
    sp.adj[key.second].push_back({key.first, w});
  }
  return sp;
}

ShortestPaths spanner_shortest_paths(const Pseudospanner& sp, const std::vector<int32_t>& sources) {
  ShortestPaths out;
  out.dist.assign(sp.size(), kInf);
  out.parent.assign(sp.size(), -1);
  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int32_t s : sources) {
    out.dist[s] = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > out.dist[u]) continue;
    for (auto [v, w] : sp.adj[u]) {
      if (d + w < out.dist[v]) {
        out.dist[v] = d + w;
        out.parent[v] = u;
        heap.push({d + w, v});
      }
    }
  }
  for (double d : out.dist) {
    if (d == kInf) throw Error(ErrorCode::DisconnectedSpanner, "unreachable vertex");
  }
  return out;
}

std::vector<std::vector<double>> spanner_distance_matrix(const Pseudospanner& sp) {
  std::vector<std::vector<double>> d(sp.size());
  for (int32_t s = 0; s < sp.size(); ++s) d[s] = spanner_shortest_paths(sp, {s}).dist;
  return d;
}

}  // namespace dmot
