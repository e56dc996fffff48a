#pragma once

// Pseudospanner on the points of an extracted subtree: father-son edges
// between leaders and one edge per induced meeting, with weights that upper
// bound the true distances.

#include <unordered_map>
#include <vector>

#include "dmot/extraction.hpp"

namespace dmot {

struct SpannerEdge {
  int32_t u = 0;  // vertex indices, u < v
  int32_t v = 0;
  double w = 0.0;
  bool operator==(const SpannerEdge&) const = default;
};

struct Pseudospanner {
  std::vector<PointId> vertices;                  // sorted point ids
  std::unordered_map<PointId, int32_t> index_of;  // point -> vertex index
  std::vector<SpannerEdge> edges;                 // sorted by (u, v)
  std::vector<std::vector<std::pair<int32_t, double>>> adj;
  std::vector<PointId> leader_of_node;            // extracted node -> leader point
  std::vector<Level> beaten_at;                   // vertex -> level it stops leading (kInfLevel: never)

  int32_t size() const { return static_cast<int32_t>(vertices.size()); }
  int32_t vertex(PointId p) const;  // throws EndpointNotInQuery
};

// Leader of every node: the smallest point id among its members, which is
// the leader of the child holding that point.
std::vector<PointId> assign_leaders(const ExtractedTree& et);

Pseudospanner build_pseudospanner(const ExtractedTree& et, const PartitionConfig& config);

struct ShortestPaths {
  std::vector<double> dist;     // per vertex index
  std::vector<int32_t> parent;  // -1 at sources
};

// Multi-source shortest paths over the spanner.
ShortestPaths spanner_shortest_paths(const Pseudospanner& sp, const std::vector<int32_t>& sources);
// All-pairs distances by one sweep per vertex.
std::vector<std::vector<double>> spanner_distance_matrix(const Pseudospanner& sp);

}  // namespace dmot
