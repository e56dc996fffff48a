#pragma once

// Heavy-path decomposition of the compressed tree and the navigation
// primitives built on it: meet, meeting jump, level-ancestor jump and
// range enumeration of known sets.

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dmot/flat_table.hpp"
#include "dmot/hierarchy.hpp"
#include "dmot/yfast.hpp"

namespace dmot {

struct HeavyPath {
  std::vector<NodeId> vertices;  // top-down; vertices[0] is the top, the rest are interior
  int32_t depth = 0;             // 0 when the top is the root
  int32_t parent_path = -1;      // path holding the top as an interior vertex
  int32_t skip = -1;             // ancestor path x * 2^(depth mod x) steps up, if any
};

struct PathSegment {
  int32_t path = -1;
  Level entry = 0;  // level of the lowest vertex of the path on the walk
};

struct PathMeeting {
  int32_t a = -1;
  int32_t b = -1;
  Level level = 0;
  bool operator==(const PathMeeting&) const = default;
};

class PathNav {
 public:
  PathNav() = default;
  explicit PathNav(const CompressedTree& t) { build(t); }

  void build(const CompressedTree& t);
  // Rebuilds every dictionary, trie and snapshot from the persisted arrays.
  void derive(const CompressedTree& t);
  void bind(const CompressedTree* t) { t_ = t; }

  // Lowest level at which the ancestors of u and v know each other or coincide.
  Level meet(PointId u, PointId v) const;
  // First meeting (S, S', j) with v in S and j >= i; returns S and the meeting.
  std::pair<NodeId, Meeting> meeting_jump(PointId v, Level i) const;
  // Deepest ancestor of v's leaf with level <= j. `steps` receives the number
  // of path pointer moves.
  NodeId level_ancestor_jump(PointId v, Level j, int* steps = nullptr) const;
  // For every integer level l in [i, j]: the nodes known at l to x's ancestor
  // alive at l (the ancestor included), as (l, node) pairs sorted.
  std::vector<std::pair<Level, NodeId>> known_sets_in_range(
      PointId x, Level i, Level j, std::optional<Level> anchor = std::nullopt) const;

  std::optional<Level> path_meeting(int32_t p, int32_t q) const;
  const std::vector<PathSegment>& paths_of(NodeId v) const { return paths_of_[v]; }
  std::optional<Level> paths_entry(NodeId v, int32_t path) const;
  int32_t interior_path(NodeId v) const { return interior_path_[v]; }
  const std::vector<HeavyPath>& paths() const { return paths_; }
  int x() const { return x_; }
  size_t paths_entry_count() const;

  // Persisted arrays.
  int x_ = 1;
  std::vector<HeavyPath> paths_;
  std::vector<int32_t> interior_path_;             // -1 for the root
  std::vector<std::vector<PathSegment>> paths_of_;
  std::vector<PathMeeting> path_meetings_;         // a < b, minimum level per pair
  std::vector<Level> meeting_levels_;              // distinct meeting levels, ascending
  std::vector<std::vector<uint64_t>> level_keys_;  // per path
  std::vector<std::vector<uint64_t>> meeting_keys_;

 private:
  Level top_level(int32_t path) const;
  bool top_is_root(int32_t path) const;
  // Segment index of the walk in `segs` holding level l.
  size_t segment_at(const std::vector<PathSegment>& segs, Level l) const;
  // Whether the walks of the two segment lists know each other before
  // leaving segment s of `mine`.
  bool known_before_top(const std::vector<PathSegment>& mine, size_t s, NodeId other_leaf) const;
  uint64_t rank_at_least(Level l) const;

  const CompressedTree* t_ = nullptr;
  SeededHash hash_;
  std::vector<Level> top_level_;  // per path
  FlatTable paths_dict_;  // (node, path) -> entry level
  FlatTable pm_dict_;     // (path, path) -> meeting level
  std::unordered_map<Level, uint64_t, SeededHash> rank_of_;
  std::vector<YFastTrie> level_trie_;
  std::vector<YFastTrie> meeting_trie_;
  FlatTable node_at_level_;    // (path, level) -> node
  FlatTable meeting_at_rank_;  // (path, rank) -> first meeting at that rank
  // snapshot_[x][k]: sorted partners of x's first k+1 meetings.
  std::vector<std::vector<std::vector<NodeId>>> snapshot_;
};

}  // namespace dmot
