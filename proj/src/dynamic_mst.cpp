#include "dmot/dynamic_mst.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dmot {

std::vector<TreeEdge> LayerMstEngine::span(const std::vector<PointId>& vertices,
                                           const std::vector<TreeEdge>& sorted_edges) const {
  // Kruskal with component ids; the larger component keeps its id.
  std::unordered_map<PointId, int32_t> comp;
  std::vector<std::vector<PointId>> members(vertices.size());
  for (size_t i = 0; i < vertices.size(); ++i) {
    comp[vertices[i]] = static_cast<int32_t>(i);
    members[i] = {vertices[i]};
  }
  std::vector<TreeEdge> out;
  for (const auto& e : sorted_edges) {
    int32_t a = comp.at(e.u), b = comp.at(e.v);
    if (a == b) continue;
    if (members[a].size() < members[b].size()) std::swap(a, b);
    for (PointId p : members[b]) comp[p] = a;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    out.push_back(e);
    if (out.size() + 1 == vertices.size()) break;
  }
  return out;
}

double layered_mst_bound(const PartitionConfig& c) {
  double D = c.sandwich_factor();
  double m = ceil_log(c.tau, 1.0 + D);
  return 8.0 * D * m * (1.0 + D) + 3.0 * D * c.tau / (c.tau - 1.0);
}

LayeredMst::LayeredMst(const CompressedTree& t, const PathNav& nav, uint64_t seed,
                       std::shared_ptr<const LayerMstEngine> engine)
    : t_(&t), nav_(&nav), engine_(std::move(engine)), rng_(seed) {
  if (!engine_) engine_ = std::make_shared<LayerMstEngine>();
}

std::optional<int> LayeredMst::layer_of(PointId x) const {
  auto it = layer_of_.find(x);
  if (it == layer_of_.end()) return std::nullopt;
  return it->second;
}

std::pair<Level, Level> LayeredMst::window(int layer) const {
  int down = ceil_log(t_->config.tau, std::max(1, window_k_));
  int up = ceil_log(t_->config.tau, 2.0 * t_->config.sandwich_factor());
  Level lo = std::max(0, layer - down + 1);
  Level hi = std::min(layer + 1 + up, t_->level(t_->root));
  return {std::min(lo, hi), hi};
}

size_t LayeredMst::bucket_entries() const {
  size_t total = 0;
  for (const auto& [i, layer] : layers_)
    for (const auto& [key, list] : layer.buckets) total += list.size();
  return total;
}

void LayeredMst::place(PointId x) {
  int i = nav_->meet(x, root_) - 1;
  layer_of_[x] = i;
  Layer& layer = layers_[i];
  layer.members.insert(x);
  auto [lo, hi] = window(i);
  auto& occ = occurrences_[x];
  for (auto [l, node] : nav_->known_sets_in_range(x, lo, hi, i + 1)) {
    layer.buckets[{l, node}].push_back(x);
    occ.push_back({l, node});
  }
}

void LayeredMst::unplace(PointId x) {
  int i = layer_of_.at(x);
  Layer& layer = layers_.at(i);
  // Dropping x from a chain joins its two neighbours.
  for (const auto& key : occurrences_.at(x)) {
    auto& list = layer.buckets.at(key);
    list.erase(std::find(list.begin(), list.end(), x));
    if (list.empty()) layer.buckets.erase(key);
  }
  occurrences_.erase(x);
  layer.members.erase(x);
  layer_of_.erase(x);
  if (layer.members.empty()) layers_.erase(i);
}

void LayeredMst::respan(int i) {
  auto it = layers_.find(i);
  if (it == layers_.end()) return;
  Layer& layer = it->second;
  double factor = 2.0 * t_->config.sandwich_factor();
  std::vector<TreeEdge> edges;
  for (const auto& [key, list] : layer.buckets) {
    double w = factor * t_->config.radius(key.first - 1);
    for (size_t p = 1; p < list.size(); ++p) edges.push_back({list[p - 1], list[p], w});
  }
  std::vector<PointId> verts(layer.members.begin(), layer.members.end());
  layer.tree = engine_->span(verts, edges);
  if (layer.tree.size() + 1 != verts.size()) {
    throw Error(ErrorCode::DisconnectedSpanner, "layer " + std::to_string(i) + " is not connected");
  }
}

void LayeredMst::build(const std::vector<PointId>& xs_in, std::optional<PointId> root,
                       std::optional<int> window_k) {
  std::vector<PointId> xs = xs_in;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.empty()) throw Error(ErrorCode::EmptyX, "empty point set");
  for (PointId x : xs) t_->check_point(x);
  layers_.clear();
  layer_of_.clear();
  occurrences_.clear();
  if (root) {
    if (!std::binary_search(xs.begin(), xs.end(), *root)) throw Error(ErrorCode::NotPresent, "root");
    root_ = *root;
  } else {
    root_ = xs[rng_() % xs.size()];
  }
  k0_ = static_cast<int>(xs.size());
  window_k_ = window_k.value_or(k0_);
  for (PointId x : xs)
    if (x != root_) place(x);
  for (auto& [i, layer] : layers_) respan(i);
}

void LayeredMst::rebuild(bool root_deleted) {
  std::vector<PointId> xs;
  if (root_ >= 0) xs.push_back(root_);
  for (const auto& [x, i] : layer_of_) xs.push_back(x);
  ++rebuilds_;
  if (root_deleted) ++root_rebuilds_;
  if (xs.empty()) {
    root_ = -1;
    k0_ = 0;
    return;
  }
  // Between rebuilds k stays below twice its value here.
  std::sort(xs.begin(), xs.end());
  PointId r = xs[rng_() % xs.size()];
  build(xs, r, 2 * static_cast<int>(xs.size()));
}

void LayeredMst::insert(PointId x) {
  t_->check_point(x);
  if (contains(x)) throw Error(ErrorCode::AlreadyPresent, std::to_string(x));
  if (root_ < 0) {
    root_ = x;
    k0_ = 1;
    window_k_ = 2;
    return;
  }
  place(x);
  respan(layer_of_.at(x));
  if (size() >= 2 * k0_) rebuild(false);
}

void LayeredMst::erase(PointId x) {
  t_->check_point(x);
  if (!contains(x)) throw Error(ErrorCode::NotPresent, std::to_string(x));
  if (x == root_) {
    // Lift the remaining points out, drop the root and start over.
    root_ = -1;
    std::vector<PointId> rest;
    for (const auto& [p, i] : layer_of_) rest.push_back(p);
    layers_.clear();
    layer_of_.clear();
    occurrences_.clear();
    ++rebuilds_;
    ++root_rebuilds_;
    if (rest.empty()) {
      k0_ = 0;
      return;
    }
    std::sort(rest.begin(), rest.end());
    PointId r = rest[rng_() % rest.size()];
    build(rest, r, 2 * static_cast<int>(rest.size()));
    return;
  }
  int i = layer_of_.at(x);
  unplace(x);
  respan(i);
  if (2 * size() <= k0_) rebuild(false);
}

std::vector<TreeEdge> LayeredMst::edges() const {
  std::vector<TreeEdge> out;
  double D = t_->config.sandwich_factor();
  for (const auto& [i, layer] : layers_) {
    out.insert(out.end(), layer.tree.begin(), layer.tree.end());
    out.push_back({*layer.members.begin(), root_, D * t_->config.radius(i)});
  }
  return out;
}

double LayeredMst::weight() const {
  double w = 0.0;
  for (const auto& e : edges()) w += e.w;
  return w;
}

}  // namespace dmot
