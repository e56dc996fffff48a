#pragma once

// Brute-force reference implementations. These read the metric directly and
// share no code with the structures they check.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmot/common.hpp"
#include "dmot/extraction.hpp"
#include "dmot/hierarchy.hpp"
#include "dmot/metric.hpp"

namespace dmot::oracle {

// Level-by-level run of the construction with no level skipping.
struct NaiveLevel {
  Level j = 0;
  std::vector<std::vector<PointId>> sets;  // sorted members
  std::vector<PointId> leader;
};

struct NaiveTree {
  std::vector<NaiveLevel> levels;
  // First level of each distinct set.
  std::map<std::vector<PointId>, Level> nodes;
  // First level at which two distinct, simultaneously present sets know each other.
  std::map<std::pair<std::vector<PointId>, std::vector<PointId>>, Level> meetings;
};

NaiveTree naive_build(const MetricSpace& ms, const PartitionConfig& config);

// Lowest level at which the sets holding u and v coincide or know each other.
Level naive_first_knowing(const NaiveTree& t, const MetricSpace& ms,
                          const PartitionConfig& config, PointId u, PointId v);

// Upward walks over the compressed tree, level by level.
NodeId naive_ancestor_at(const CompressedTree& t, PointId v, Level l);
Level naive_meet(const CompressedTree& t, PointId u, PointId v);
// (node on v's walk, meeting) with the lowest level >= i, smallest partner on
// ties; nullopt when there is none.
std::optional<std::pair<NodeId, Meeting>> naive_meeting_jump(const CompressedTree& t, PointId v,
                                                             Level i);
NodeId naive_level_ancestor(const CompressedTree& t, PointId v, Level j);
std::vector<std::pair<Level, NodeId>> naive_known_sets(const CompressedTree& t, PointId x,
                                                       Level i, Level j);
// Known sets from the metric: for each level, the members of every set of
// the level-by-level construction that knows x's set (or is x's set).
std::vector<std::pair<Level, std::vector<PointId>>> naive_known_sets_metric(
    const NaiveTree& nt, const MetricSpace& ms, const PartitionConfig& config, PointId x, Level i,
    Level j);

// Induced subtree by set algebra over every node and meeting of the tree.
struct NaiveExtract {
  std::map<std::vector<PointId>, Level> nodes;                 // trace -> lowest level
  std::map<std::vector<PointId>, std::vector<PointId>> parent;  // smallest strict superset
  std::map<std::pair<std::vector<PointId>, std::vector<PointId>>, Level> meetings;
};
NaiveExtract naive_extract(const CompressedTree& t, const std::vector<PointId>& s);
// Empty when the extraction equals the set-algebra definition, else the first difference.
std::string compare_extraction(const CompressedTree& t, const ExtractedTree& et,
                               const std::vector<PointId>& s);

struct Tree {
  double weight = 0.0;
  std::vector<std::pair<int, int>> edges;
};

// Exact MST of the points (indices into `pts`) under ms: Kruskal and Prim.
Tree exact_mst(const MetricSpace& ms, const std::vector<PointId>& pts);
double exact_mst_prim(const MetricSpace& ms, const std::vector<PointId>& pts);

// Same on an explicit symmetric distance matrix.
double mst_weight_matrix(const std::vector<std::vector<double>>& d);

// Held-Karp optimal tour length (k <= 16) and factorial enumeration (k <= 9).
double exact_tsp(const std::vector<std::vector<double>>& d);
double exact_tsp_enumerate(const std::vector<std::vector<double>>& d);

// Dreyfus-Wagner: minimum Steiner tree weight for `terminals` over the full
// ground set of the matrix; and the Steiner-point subset enumeration check.
double exact_steiner(const std::vector<std::vector<double>>& d, const std::vector<int>& terminals);
double exact_steiner_enumerate(const std::vector<std::vector<double>>& d,
                               const std::vector<int>& terminals);

// Minimum Steiner forest connecting each pair, via Steiner trees of every
// terminal group and a set-partition dynamic program over terminal groups.
double exact_steiner_forest(const std::vector<std::vector<double>>& d,
                            const std::vector<std::pair<int, int>>& pairs);

// Facility location: dist[c][f] connection costs, open[f] opening costs.
double exact_fl(const std::vector<std::vector<double>>& dist, const std::vector<double>& open);
double exact_fl_gray(const std::vector<std::vector<double>>& dist, const std::vector<double>& open);

// Exact r-center radius with centers chosen among the points.
double exact_k_center(const std::vector<std::vector<double>>& d, int r);

}  // namespace dmot::oracle
