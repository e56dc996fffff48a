#include "dmot/path_nav.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace dmot {

void PathNav::build(const CompressedTree& t) {
  NodeId count = t.node_count();
  paths_.clear();
  interior_path_.assign(count, -1);
  // Root: every child edge opens a path. Elsewhere the child with the most
  // nodes (smallest id on ties) continues the path; other children open paths.
  std::deque<NodeId> queue{t.root};
  while (!queue.empty()) {
    NodeId w = queue.front();
    queue.pop_front();
    const auto& kids = t.nodes[w].children;
    NodeId heavy = kNoNode;
    if (w != t.root) {
      for (NodeId c : kids) {
        if (heavy == kNoNode || t.nodes[c].subtree_nodes > t.nodes[heavy].subtree_nodes) heavy = c;
      }
    }
    for (NodeId c : kids) {
      if (c == heavy) {
        int32_t p = interior_path_[w];
        paths_[p].vertices.push_back(c);
        interior_path_[c] = p;
      } else {
        HeavyPath hp;
        hp.vertices = {w, c};
        if (w != t.root) {
          hp.parent_path = interior_path_[w];
          hp.depth = paths_[hp.parent_path].depth + 1;
        }
        interior_path_[c] = static_cast<int32_t>(paths_.size());
        paths_.push_back(std::move(hp));
      }
      queue.push_back(c);
    }
  }
  double lg = std::log2(std::max(2, t.n));
  x_ = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(1.0, lg)) - 1e-12)));
  for (auto& p : paths_) {
    int32_t dist = x_ << (p.depth % x_);
    int32_t q = -1;
    if (p.depth >= dist) {
      q = p.parent_path;
      for (int32_t k = 1; k < dist; ++k) q = paths_[q].parent_path;
    }
    p.skip = q;
  }
  paths_of_.assign(count, {});
  for (NodeId v = 0; v < count; ++v) {
    NodeId cur = v;
    while (cur != t.root) {
      int32_t p = interior_path_[cur];
      paths_of_[v].push_back({p, t.level(cur)});
      cur = paths_[p].vertices.front();
    }
  }
  std::unordered_map<uint64_t, Level, SeededHash> best(0, SeededHash{t.hash_seed});
  for (const auto& m : t.meetings) {
    int32_t p = interior_path_[m.a], q = interior_path_[m.b];
    if (p > q) std::swap(p, q);
    uint64_t key = (static_cast<uint64_t>(p) << 32) | static_cast<uint32_t>(q);
    auto [it, fresh] = best.try_emplace(key, m.level);
    if (!fresh) it->second = std::min(it->second, m.level);
  }
  path_meetings_.clear();
  for (auto [key, level] : best) {
    path_meetings_.push_back({static_cast<int32_t>(key >> 32), static_cast<int32_t>(key & 0xffffffffu), level});
  }
  std::sort(path_meetings_.begin(), path_meetings_.end(),
            [](const PathMeeting& x, const PathMeeting& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  meeting_levels_.clear();
  for (const auto& m : t.meetings) meeting_levels_.push_back(m.level);
  std::sort(meeting_levels_.begin(), meeting_levels_.end());
  meeting_levels_.erase(std::unique(meeting_levels_.begin(), meeting_levels_.end()), meeting_levels_.end());
  level_keys_.assign(paths_.size(), {});
  meeting_keys_.assign(paths_.size(), {});
  for (size_t p = 0; p < paths_.size(); ++p) {
    for (NodeId v : paths_[p].vertices) level_keys_[p].push_back(static_cast<uint64_t>(t.level(v)));
    for (size_t k = 1; k < paths_[p].vertices.size(); ++k) {
      for (int32_t mi : t.nodes[paths_[p].vertices[k]].meetings) {
        Level l = t.meetings[mi].level;
        auto r = static_cast<uint64_t>(
            std::lower_bound(meeting_levels_.begin(), meeting_levels_.end(), l) - meeting_levels_.begin());
        meeting_keys_[p].push_back(r);
      }
    }
    std::sort(level_keys_[p].begin(), level_keys_[p].end());
    std::sort(meeting_keys_[p].begin(), meeting_keys_[p].end());
    meeting_keys_[p].erase(std::unique(meeting_keys_[p].begin(), meeting_keys_[p].end()),
                           meeting_keys_[p].end());
  }
  derive(t);
}

void PathNav::derive(const CompressedTree& t) {
  t_ = &t;
  hash_ = SeededHash{t.hash_seed};
  NodeId count = t.node_count();
  paths_dict_ = FlatTable(t.hash_seed);
  size_t entries = 0;
  for (const auto& segs : paths_of_) entries += segs.size();
  paths_dict_.reset(entries);
  for (NodeId v = 0; v < count; ++v)
    for (const auto& s : paths_of_[v]) paths_dict_.insert(FlatTable::pack(v, s.path), s.entry);
  top_level_.resize(paths_.size());
  for (size_t p = 0; p < paths_.size(); ++p) top_level_[p] = t.level(paths_[p].vertices.front());
  pm_dict_ = FlatTable(t.hash_seed);
  pm_dict_.reset(2 * path_meetings_.size());
  for (const auto& pm : path_meetings_) {
    pm_dict_.insert(FlatTable::pack(pm.a, pm.b), pm.level);
    pm_dict_.insert(FlatTable::pack(pm.b, pm.a), pm.level);
  }
  rank_of_ = std::unordered_map<Level, uint64_t, SeededHash>(0, hash_);
  for (size_t r = 0; r < meeting_levels_.size(); ++r) rank_of_.emplace(meeting_levels_[r], r);
  int level_bits = YFastTrie::bits_for(static_cast<uint64_t>(t.level(t.root)));
  int rank_bits = YFastTrie::bits_for(meeting_levels_.empty() ? 0 : meeting_levels_.size() - 1);
  level_trie_.clear();
  meeting_trie_.clear();
  node_at_level_ = FlatTable(t.hash_seed);
  node_at_level_.reset(static_cast<size_t>(count) + paths_.size());
  meeting_at_rank_ = FlatTable(t.hash_seed);
  meeting_at_rank_.reset(t.meetings.size());
  for (size_t p = 0; p < paths_.size(); ++p) {
    level_trie_.emplace_back(level_bits, t.hash_seed);
    for (uint64_t k : level_keys_[p]) level_trie_.back().insert(k);
    meeting_trie_.emplace_back(rank_bits, t.hash_seed);
    for (uint64_t k : meeting_keys_[p]) meeting_trie_.back().insert(k);
    const auto& verts = paths_[p].vertices;
    auto pp = static_cast<int32_t>(p);
    for (NodeId v : verts) node_at_level_.insert(FlatTable::pack(pp, t.level(v)), v);
    for (size_t k = 1; k < verts.size(); ++k) {
      for (int32_t mi : t.nodes[verts[k]].meetings) {
        // meeting lists are sorted by (level, partner): keep the first per level
        meeting_at_rank_.insert(
            FlatTable::pack(pp, static_cast<int32_t>(rank_of_.at(t.meetings[mi].level))), mi);
      }
    }
  }
  snapshot_.assign(count, {});
  for (NodeId x = 0; x < count; ++x) {
    std::vector<NodeId> acc;
    for (int32_t mi : t.nodes[x].meetings) {
      NodeId other = t.meetings[mi].other(x);
      acc.insert(std::upper_bound(acc.begin(), acc.end(), other), other);
      snapshot_[x].push_back(acc);
    }
  }
}

size_t PathNav::paths_entry_count() const {
  size_t total = 0;
  for (const auto& s : paths_of_) total += s.size();
  return total;
}

bool PathNav::top_is_root(int32_t path) const { return paths_[path].depth == 0; }

Level PathNav::top_level(int32_t path) const { return top_level_[path]; }

std::optional<Level> PathNav::path_meeting(int32_t p, int32_t q) const {
  const int32_t* v = pm_dict_.find(FlatTable::pack(p, q));
  if (!v) return std::nullopt;
  return *v;
}

std::optional<Level> PathNav::paths_entry(NodeId v, int32_t path) const {
  const int32_t* e = paths_dict_.find(FlatTable::pack(v, path));
  if (!e) return std::nullopt;
  return *e;
}

size_t PathNav::segment_at(const std::vector<PathSegment>& segs, Level l) const {
  auto it = std::upper_bound(segs.begin(), segs.end(), l,
                             [](Level x, const PathSegment& s) { return x < s.entry; });
  return static_cast<size_t>(it - segs.begin()) - 1;
}

bool PathNav::known_before_top(const std::vector<PathSegment>& mine, size_t s,
                               NodeId other_leaf) const {
  int32_t p = mine[s].path;
  // Sharing the path means sharing the node alive just below its top.
  if (paths_dict_.find(FlatTable::pack(other_leaf, p))) return true;
  Level below_top = top_level(p) - 1;
  const auto& other = paths_of_[other_leaf];
  int32_t q = other[segment_at(other, below_top)].path;
  auto pm = path_meeting(p, q);
  return pm && *pm <= below_top;
}

Level PathNav::meet(PointId u, PointId v) const {
  t_->check_point(u);
  t_->check_point(v);
  NodeId lu = t_->leaf_of[u], lv = t_->leaf_of[v];
  if (u == v) return t_->level(lu);
  const auto& su = paths_of_[lu];
  const auto& sv = paths_of_[lv];
  auto first_true = [&](const std::vector<PathSegment>& segs, NodeId other_leaf) {
    size_t lo = 0, hi = segs.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (known_before_top(segs, mid, other_leaf)) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  };
  size_t s = first_true(su, lv);
  size_t r = first_true(sv, lu);
  if (s == su.size() || r == sv.size()) return t_->level(t_->root);
  Level result = std::max(su[s].entry, sv[r].entry);
  if (su[s].path != sv[r].path) {
    auto pm = path_meeting(su[s].path, sv[r].path);
    if (!pm) throw Error(ErrorCode::InvalidNode, "inconsistent path meetings");
    result = std::max(result, *pm);
  }
  return result;
}

uint64_t PathNav::rank_at_least(Level l) const {
  auto it = rank_of_.find(l);
  if (it != rank_of_.end()) return it->second;
  return static_cast<uint64_t>(std::lower_bound(meeting_levels_.begin(), meeting_levels_.end(), l) -
                               meeting_levels_.begin());
}

std::pair<NodeId, Meeting> PathNav::meeting_jump(PointId v, Level i) const {
  t_->check_point(v);
  const auto& segs = paths_of_[t_->leaf_of[v]];
  // Lowest segment whose path top lies above i.
  size_t lo = 0, hi = segs.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (top_level(segs[mid].path) > i) hi = mid;
    else lo = mid + 1;
  }
  for (size_t s = lo; s < segs.size(); ++s) {
    uint64_t r = rank_at_least(std::max(i, segs[s].entry));
    if (r >= meeting_levels_.size()) break;
    int32_t p = segs[s].path;
    auto hit = meeting_trie_[p].successor(r);
    if (!hit) continue;
    int32_t mi = *meeting_at_rank_.find(FlatTable::pack(p, static_cast<int32_t>(*hit)));
    const Meeting& m = t_->meetings[mi];
    NodeId node = t_->is_ancestor(m.a, t_->leaf_of[v]) ? m.a : m.b;
    return {node, m};
  }
  throw Error(ErrorCode::NoMeetingAbove,
              "point " + std::to_string(v) + " level " + std::to_string(i));
}

NodeId PathNav::level_ancestor_jump(PointId v, Level j, int* steps) const {
  t_->check_point(v);
  NodeId leaf = t_->leaf_of[v];
  int moves = 0;
  if (leaf == t_->root || j < t_->level(leaf)) {
    if (steps) *steps = 0;
    return leaf;
  }
  auto g = [&](int32_t p) { return top_is_root(p) || top_level(p) > j; };
  int32_t pi = interior_path_[leaf];
  while (!g(pi) && paths_[pi].depth % x_ != x_ - 1) {
    pi = paths_[pi].parent_path;
    ++moves;
  }
  for (int it = 0; it < x_ && !g(pi); ++it) {
    int32_t s = paths_[pi].skip;
    if (s >= 0 && !g(s)) pi = paths_[s].parent_path;
    else pi = paths_[pi].parent_path;
    ++moves;
  }
  while (!g(pi)) {
    pi = paths_[pi].parent_path;
    ++moves;
  }
  if (steps) *steps = moves;
  auto key = level_trie_[pi].predecessor(static_cast<uint64_t>(std::min<Level>(j, t_->level(t_->root))));
  return *node_at_level_.find(FlatTable::pack(pi, static_cast<int32_t>(*key)));
}

std::vector<std::pair<Level, NodeId>> PathNav::known_sets_in_range(
    PointId x, Level i, Level j, std::optional<Level> anchor) const {
  t_->check_point(x);
  if (i < 0 || i > j) {
    throw Error(ErrorCode::InvalidRange, "[" + std::to_string(i) + "," + std::to_string(j) + "]");
  }
  NodeId y;
  if (anchor && *anchor <= i) {
    y = level_ancestor_jump(x, *anchor);
  } else {
    y = level_ancestor_jump(x, i);
  }
  std::vector<std::pair<Level, NodeId>> out;
  for (Level l = i; l <= j; ++l) {
    while (!t_->alive_at(y, l)) y = t_->nodes[y].parent;
    const auto& list = t_->nodes[y].meetings;
    auto it = std::upper_bound(list.begin(), list.end(), l, [&](Level lv, int32_t mi) {
      return lv < t_->meetings[mi].level;
    });
    size_t k = static_cast<size_t>(it - list.begin());
    size_t start = out.size();
    out.push_back({l, y});
    if (k > 0) {
      for (NodeId z : snapshot_[y][k - 1])
        if (t_->alive_at(z, l)) out.push_back({l, z});
    }
    std::sort(out.begin() + static_cast<long>(start), out.end());
  }
  return out;
}

}  // namespace dmot
