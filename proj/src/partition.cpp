#include "dmot/partition.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace dmot {

std::vector<CarvedSet> carve_partition(const std::vector<PointId>& leaders_in, double r,
                                       const MetricSpace& metric, int eta) {
  std::vector<PointId> order = leaders_in;
  std::sort(order.begin(), order.end());
  double ball = std::ldexp(r, -eta - 1);
  std::vector<char> taken(order.size(), 0);
  std::vector<CarvedSet> out;
  for (size_t i = 0; i < order.size(); ++i) {
    if (taken[i]) continue;
    CarvedSet s;
    s.leader = order[i];
    for (size_t k = i; k < order.size(); ++k) {
      if (!taken[k] && metric.d(order[i], order[k]) < ball) {
        taken[k] = 1;
        s.members.push_back(order[k]);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PointId> PartitionTree::members(NodeId x) const {
  std::vector<PointId> m(leaf_order.begin() + nodes[x].leaf_begin,
                         leaf_order.begin() + nodes[x].leaf_end);
  std::sort(m.begin(), m.end());
  return m;
}

namespace {

double min_dist_brute(const PartitionTree& t, NodeId a, NodeId b) {
  const MetricSpace& ms = *t.metric;
  double best = kInf;
  for (int i = t.nodes[a].leaf_begin; i < t.nodes[a].leaf_end; ++i)
    for (int k = t.nodes[b].leaf_begin; k < t.nodes[b].leaf_end; ++k)
      best = std::min(best, ms.d(t.leaf_order[i], t.leaf_order[k]));
  return best;
}

// Merge phase: carve only leaders that have another leader inside the carve
// ball; all other leaders would form singleton groups anyway.
void build_merges(PartitionTree& t) {
  const MetricSpace& ms = *t.metric;
  const PartitionConfig& cfg = t.config;
  int n = t.n;
  t.nodes.assign(n, {});
  for (int i = 0; i < n; ++i) t.nodes[i].leader = i;
  std::vector<NodeId> node_of(n);
  for (int i = 0; i < n; ++i) node_of[i] = i;
  std::vector<char> alive(n, 1);
  std::vector<double> nnd(n, kInf);
  std::vector<PointId> nnid(n, -1);
  std::vector<PointId> leaders(n);
  for (int i = 0; i < n; ++i) leaders[i] = i;
  auto recompute = [&](PointId u) {
    nnd[u] = kInf;
    nnid[u] = -1;
    for (PointId v : leaders) {
      if (v == u) continue;
      double x = ms.d(u, v);
      if (x < nnd[u] || (x == nnd[u] && v < nnid[u])) {
        nnd[u] = x;
        nnid[u] = v;
      }
    }
  };
  std::set<std::pair<double, PointId>> pq;
  for (PointId u : leaders) {
    recompute(u);
    pq.insert({nnd[u], u});
  }
  Level j = 0;
  double factor = cfg.leader_factor();
  while (leaders.size() > 1) {
    Level jn = cfg.first_carve_level_above(pq.begin()->first, j);
    double R = cfg.carve_radius(jn);
    std::vector<PointId> active;
    for (auto it = pq.begin(); it != pq.end() && it->first < R; ++it) active.push_back(it->second);
    std::sort(active.begin(), active.end());
    std::vector<char> taken(active.size(), 0);
    std::vector<PointId> died;
    for (size_t i = 0; i < active.size(); ++i) {
      if (taken[i]) continue;
      taken[i] = 1;
      std::vector<PointId> group{active[i]};
      for (size_t k = i + 1; k < active.size(); ++k) {
        if (!taken[k] && ms.d(active[i], active[k]) < R) {
          taken[k] = 1;
          group.push_back(active[k]);
        }
      }
      if (group.size() < 2) continue;
      NodeId id = static_cast<NodeId>(t.nodes.size());
      PartitionTree::Node node;
      node.level = jn;
      node.leader = active[i];
      double rad = 0.0;
      for (PointId g : group) {
        NodeId c = node_of[g];
        node.children.push_back(c);
        t.nodes[c].parent = id;
        rad = std::max(rad, ms.d(active[i], g) + t.nodes[c].rad);
        if (g != active[i]) died.push_back(g);
      }
      node.rad = std::min(rad, factor * cfg.radius(jn));
      std::sort(node.children.begin(), node.children.end());
      t.nodes.push_back(std::move(node));
      node_of[active[i]] = id;
    }
    for (PointId g : died) {
      alive[g] = 0;
      pq.erase({nnd[g], g});
    }
    leaders.erase(std::remove_if(leaders.begin(), leaders.end(),
                                 [&](PointId u) { return !alive[u]; }),
                  leaders.end());
    for (PointId u : leaders) {
      if (nnid[u] >= 0 && !alive[nnid[u]]) {
        pq.erase({nnd[u], u});
        recompute(u);
        pq.insert({nnd[u], u});
      }
    }
    j = jn;
  }
  t.root = node_of[leaders.front()];
}

void assign_leaf_order(PartitionTree& t) {
  t.leaf_order.clear();
  std::vector<std::pair<NodeId, size_t>> stack{{t.root, 0}};
  t.nodes[t.root].leaf_begin = 0;
  while (!stack.empty()) {
    auto& [x, idx] = stack.back();
    auto& node = t.nodes[x];
    if (node.children.empty()) {
      node.leaf_begin = static_cast<int>(t.leaf_order.size());
      t.leaf_order.push_back(node.leader);
      node.leaf_end = node.leaf_begin + 1;
      stack.pop_back();
      continue;
    }
    if (idx == 0) node.leaf_begin = static_cast<int>(t.leaf_order.size());
    if (idx < node.children.size()) {
      NodeId c = node.children[idx++];
      stack.push_back({c, 0});
    } else {
      node.leaf_end = static_cast<int>(t.leaf_order.size());
      stack.pop_back();
    }
  }
}

// Closest pair between the member sets of a and b, pruned against `best`;
// returns best unchanged when no pair is strictly closer.
double bichromatic_min(const PartitionTree& t, NodeId a, NodeId b, double best) {
  const MetricSpace& ms = *t.metric;
  const auto& A = t.nodes[a];
  const auto& B = t.nodes[b];
  double lb = ms.d(A.leader, B.leader) - A.rad - B.rad;
  if (lb * (1.0 - 1e-12) >= best) return best;
  long sa = A.leaf_end - A.leaf_begin, sb = B.leaf_end - B.leaf_begin;
  if (sa * sb <= 64 || (A.children.empty() && B.children.empty())) {
    for (int i = A.leaf_begin; i < A.leaf_end; ++i)
      for (int k = B.leaf_begin; k < B.leaf_end; ++k)
        best = std::min(best, ms.d(t.leaf_order[i], t.leaf_order[k]));
    return best;
  }
  bool split_a = B.children.empty() || (!A.children.empty() && A.rad >= B.rad);
  if (split_a) {
    for (NodeId c : A.children) best = bichromatic_min(t, c, b, best);
  } else {
    for (NodeId c : B.children) best = bichromatic_min(t, a, c, best);
  }
  return best;
}

// Meeting phase: a meeting of two nodes implies a meeting (or identity) of
// the pair alive one level after the first of them dies, so meetings are
// found top-down starting from sibling pairs.
void build_meetings(PartitionTree& t) {
  const PartitionConfig& cfg = t.config;
  auto key = [](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
  };
  std::unordered_set<uint64_t, SeededHash> seen;
  std::deque<std::pair<NodeId, NodeId>> queue;
  auto push = [&](NodeId a, NodeId b) {
    if (seen.insert(key(a, b)).second) queue.push_back({a, b});
  };
  for (const auto& node : t.nodes) {
    for (size_t i = 0; i < node.children.size(); ++i)
      for (size_t k = i + 1; k < node.children.size(); ++k) push(node.children[i], node.children[k]);
  }
  t.meetings.clear();
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    Level lo = std::max(t.nodes[a].level, t.nodes[b].level);
    Level hi = std::min(t.parent_level(a), t.parent_level(b));
    if (lo >= hi) continue;
    double threshold = cfg.radius(hi - 1);
    double md = bichromatic_min(t, a, b, threshold);
    if (!(md < threshold)) continue;
    Level level = std::max(lo, cfg.first_radius_level_above(md, 0));
    t.meetings.push_back({std::min(a, b), std::max(a, b), level});
    Level la = t.nodes[a].level, lb = t.nodes[b].level;
    if (la > lb) {
      for (NodeId c : t.nodes[a].children) push(c, b);
    } else if (lb > la) {
      for (NodeId c : t.nodes[b].children) push(a, c);
    } else {
      for (NodeId c : t.nodes[a].children)
        for (NodeId e : t.nodes[b].children) push(c, e);
    }
  }
  std::sort(t.meetings.begin(), t.meetings.end(), [](const Meeting& x, const Meeting& y) {
    return std::tie(x.level, x.a, x.b) < std::tie(y.level, y.a, y.b);
  });
}

}  // namespace

PartitionTree build_partition_tree(const MetricSpace& metric, const MetricParams& params,
                                   PartitionConfig config) {
  if (config.r0 <= 0.0) config.r0 = params.r0;
  config.validate();
  if (!(config.r0 < metric.min_dist())) {
    throw Error(ErrorCode::ConfigInadmissible, "r0 must be below the minimum distance");
  }
  PartitionTree t;
  t.config = config;
  t.n = metric.size();
  t.metric = &metric;
  build_merges(t);
  assign_leaf_order(t);
  build_meetings(t);
  std::vector<Level> lv{0};
  for (const auto& node : t.nodes) lv.push_back(node.level);
  for (const auto& m : t.meetings) lv.push_back(m.level);
  std::sort(lv.begin(), lv.end());
  lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  t.levels = std::move(lv);
  return t;
}

PartitionLevel PartitionTree::level_view(Level j) const {
  if (j < 0) throw Error(ErrorCode::InvalidLevel, std::to_string(j));
  PartitionLevel pl;
  pl.j = j;
  pl.r = config.radius(j);
  for (NodeId x = 0; x < static_cast<NodeId>(nodes.size()); ++x) {
    if (!alive_at(x, j)) continue;
    pl.sets.push_back({nodes[x].leader, members(x)});
    pl.node_of_set.push_back(x);
  }
  size_t s = pl.sets.size();
  pl.knows.assign(s, {});
  for (size_t a = 0; a < s; ++a) {
    for (size_t b = a + 1; b < s; ++b) {
      if (min_dist_brute(*this, pl.node_of_set[a], pl.node_of_set[b]) < pl.r) {
        pl.knows[a].push_back(static_cast<int>(b));
        pl.knows[b].push_back(static_cast<int>(a));
      }
    }
  }
  return pl;
}

bool knows_at_level(const PartitionTree& tree, Level j, NodeId a, NodeId b) {
  NodeId count = static_cast<NodeId>(tree.nodes.size());
  if (j < 0 || a < 0 || b < 0 || a >= count || b >= count || !tree.alive_at(a, j) ||
      !tree.alive_at(b, j)) {
    throw Error(ErrorCode::InvalidLevel, "sets not present at level " + std::to_string(j));
  }
  if (a == b) return true;
  return min_dist_brute(tree, a, b) < tree.config.radius(j);
}

}  // namespace dmot

#include "dmot/hierarchy.hpp"

namespace dmot {

CompressedTree compress(const PartitionTree& ptree, uint64_t hash_seed) {
  CompressedTree t;
  t.config = ptree.config;
  t.hash_seed = hash_seed;
  t.n = ptree.n;
  t.root = ptree.root;
  t.levels = ptree.levels;
  t.meetings = ptree.meetings;
  t.inorder = ptree.leaf_order;
  t.nodes.resize(ptree.nodes.size());
  t.leaf_of.resize(ptree.n);
  for (NodeId x = 0; x < static_cast<NodeId>(ptree.nodes.size()); ++x) {
    const auto& src = ptree.nodes[x];
    CNode& dst = t.nodes[x];
    dst.level = src.level;
    dst.parent = src.parent;
    dst.children = src.children;
    dst.point = x < ptree.n ? x : -1;
    dst.leaf_begin = src.leaf_begin;
    dst.leaf_count = src.leaf_end - src.leaf_begin;
    if (x < ptree.n) t.leaf_of[x] = x;
  }
  // Children are created before parents, so ids are a topological order.
  for (NodeId x = 0; x < static_cast<NodeId>(t.nodes.size()); ++x) {
    t.nodes[x].subtree_nodes += 1;
    if (t.nodes[x].parent != kNoNode) t.nodes[t.nodes[x].parent].subtree_nodes += t.nodes[x].subtree_nodes;
  }
  t.finalize();
  return t;
}

}  // namespace dmot
