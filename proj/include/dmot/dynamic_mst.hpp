#pragma once

// Layered approximate minimum spanning tree over a point subset X, built
// around a root point r and maintained under insertions and deletions.
// Layer i holds the points x with meet(x, r) = i + 1; inside a layer, points
// knowing a common set S at level l are chained with edges of weight
// 2 D r_(l-1), and each layer is spanned by a minimum spanning tree of those
// chains plus one edge to r.

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "dmot/hierarchy.hpp"
#include "dmot/path_nav.hpp"

namespace dmot {

struct TreeEdge {
  PointId u = 0;
  PointId v = 0;
  double w = 0.0;
  bool operator==(const TreeEdge&) const = default;
};

// Spanning forest engine for one layer's auxiliary graph. Edges arrive in
// nondecreasing weight order.
class LayerMstEngine {
 public:
  virtual ~LayerMstEngine() = default;
  virtual std::vector<TreeEdge> span(const std::vector<PointId>& vertices,
                                     const std::vector<TreeEdge>& sorted_edges) const;
};

// Weight bound of the layered tree relative to the exact minimum spanning tree.
double layered_mst_bound(const PartitionConfig& c);

class LayeredMst {
 public:
  using BucketKey = std::pair<Level, NodeId>;
  struct Layer {
    std::map<BucketKey, std::vector<PointId>> buckets;  // ascending level
    std::set<PointId> members;
    std::vector<TreeEdge> tree;                         // spanning tree of the layer
  };

  LayeredMst(const CompressedTree& t, const PathNav& nav, uint64_t seed = 1,
             std::shared_ptr<const LayerMstEngine> engine = nullptr);

  // Static construction on X; `root` picks the root (random member when unset)
  // and `window_k` the k used for the bucket window (|X| when unset).
  void build(const std::vector<PointId>& xs, std::optional<PointId> root = std::nullopt,
             std::optional<int> window_k = std::nullopt);
  void insert(PointId x);
  void erase(PointId x);

  std::vector<TreeEdge> edges() const;
  double weight() const;
  int size() const { return static_cast<int>(layer_of_.size()) + (root_ >= 0 ? 1 : 0); }
  PointId root() const { return root_; }
  bool contains(PointId x) const { return x == root_ || layer_of_.count(x) > 0; }
  const std::map<int, Layer>& layers() const { return layers_; }
  std::optional<int> layer_of(PointId x) const;
  std::pair<Level, Level> window(int layer) const;
  int rebuilds() const { return rebuilds_; }
  int root_rebuilds() const { return root_rebuilds_; }
  int k_at_rebuild() const { return k0_; }
  size_t bucket_entries() const;

 private:
  void place(PointId x);
  void unplace(PointId x);
  void respan(int layer);
  void rebuild(bool root_deleted);

  const CompressedTree* t_;
  const PathNav* nav_;
  std::shared_ptr<const LayerMstEngine> engine_;
  std::mt19937_64 rng_;
  PointId root_ = -1;
  int k0_ = 0;
  int window_k_ = 1;
  int rebuilds_ = 0;
  int root_rebuilds_ = 0;
  std::map<int, Layer> layers_;
  std::unordered_map<PointId, int> layer_of_;
  std::unordered_map<PointId, std::vector<BucketKey>> occurrences_;
};

}  // namespace dmot
