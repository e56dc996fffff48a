#pragma once

// Approximation solvers that run on a pseudospanner, and the index that
// reduces facility location with facilities anywhere to a restricted query.

#include <utility>
#include <vector>

#include "dmot/extraction.hpp"
#include "dmot/path_nav.hpp"
#include "dmot/spanner.hpp"

namespace dmot {

struct WeightedTree {
  std::vector<std::pair<PointId, PointId>> edges;  // point ids
  double weight = 0.0;
};

struct Tour {
  std::vector<PointId> order;  // each point once; the cycle closes back to order[0]
  double length = 0.0;         // under the spanner distance
};

struct CenterSet {
  std::vector<PointId> centers;
  std::vector<PointId> assignment;  // per spanner vertex: its nearest center
  double radius = 0.0;
};

struct FLSolution {
  std::vector<PointId> open;
  std::vector<std::pair<PointId, PointId>> assignment;  // (city, facility)
  double opening_cost = 0.0;
  double connection_cost = 0.0;
  double cost = 0.0;
};

// Guarantee of the greedy facility location rule used below.
constexpr double kGreedyFLRatio = 1.861;

// Exact minimum spanning tree of the spanner graph.
WeightedTree approx_mst(const Pseudospanner& sp);
// Preorder shortcut of the spanner MST.
Tour tsp_tour(const Pseudospanner& sp);
// Terminals are all spanner vertices: minimum spanning tree over them.
WeightedTree steiner_tree(const Pseudospanner& sp);
// Primal-dual moat growing on the spanner graph with reverse pruning.
WeightedTree steiner_forest(const Pseudospanner& sp,
                            const std::vector<std::pair<PointId, PointId>>& pairs);
// Farthest-point centers under the spanner distance.
CenterSet k_center(const Pseudospanner& sp, int r);

// Greedy facility location on an explicit cost table dist[c][f].
FLSolution greedy_facility_location(const std::vector<std::vector<double>>& dist,
                                    const std::vector<double>& opening);
// Same with spanner distances; cities and facilities are points of the spanner.
FLSolution facility_location_restricted(const Pseudospanner& sp, const std::vector<PointId>& cities,
                                        const std::vector<PointId>& facilities,
                                        const std::vector<double>& opening);

// Candidate facilities per point along its root walk, cut by the opening
// cost tests against the visibility radius of each level.
struct FLEntry {
  Level level = 0;
  PointId low = -1;  // cheapest point among the sets known at this level
  double cost = 0.0;
  bool operator==(const FLEntry&) const = default;
};

struct FLIndex {
  double eps0 = 0.5;
  std::vector<std::vector<FLEntry>> F;  // per point, ascending level
  PointId root_low = -1;                // cheapest point overall
  double root_low_cost = 0.0;
  Level root_level = 0;
  // Longest candidate list allowed for n points.
  static int list_bound(const PartitionConfig& c, int n, double eps0);
};

// Upper bound on d(v, w) for points of two sets that know each other at level j.
double visibility(const PartitionConfig& c, Level j);

FLIndex fl_preprocess_unrestricted(const CompressedTree& t, const std::vector<double>& f,
                                   double eps0 = 0.5);
// Facilities F(C) offered to the query cities, with their opening costs.
std::vector<std::pair<PointId, double>> fl_candidates(const FLIndex& idx, const PartitionConfig& c,
                                                      const std::vector<PointId>& cities);
FLSolution fl_query_unrestricted(const CompressedTree& t, const PathNav& nav, const FLIndex& idx,
                                 const std::vector<PointId>& cities);
// Cost factor by which the best solution restricted to F(C) may exceed the
// unrestricted optimum.
double fl_reduction_factor(const PartitionConfig& c, double eps0);

}  // namespace dmot
