#pragma once

// Preprocessing-phase metric access. Query-phase code never includes this.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dmot/common.hpp"

namespace dmot {

class MetricSpace {
 public:
  enum class Source { Points, Matrix };

  // points: one coordinate vector per point, all of equal dimension.
  static MetricSpace from_points(std::vector<std::vector<double>> points);
  // matrix: n x n, symmetric, zero diagonal, positive off-diagonal.
  static MetricSpace from_matrix(std::vector<std::vector<double>> matrix,
                                 uint64_t check_seed = 1);

  int size() const { return n_; }
  int dim() const { return dim_; }
  Source source() const { return source_; }
  double distance(PointId u, PointId v) const;
  // Unchecked variant for inner loops.
  double d(PointId u, PointId v) const {
    if (source_ == Source::Matrix) return matrix_[static_cast<size_t>(u) * n_ + v];
    return euclid(u, v);
  }
  double min_dist() const { return min_dist_; }
  double max_dist() const { return max_dist_; }
  const std::vector<double>& coords() const { return coords_; }
  std::vector<double> point(PointId u) const;

  // Restriction to a subset (ids renumbered 0..|ids|-1 in the given order).
  MetricSpace restrict_to(const std::vector<PointId>& ids) const;

 private:
  double euclid(PointId u, PointId v) const {
    double s = 0.0;
    const double* a = &coords_[static_cast<size_t>(u) * dim_];
    const double* b = &coords_[static_cast<size_t>(v) * dim_];
    for (int k = 0; k < dim_; ++k) {
      double t = a[k] - b[k];
      s += t * t;
    }
    return std::sqrt(s);
  }
  void compute_extremes();

  int n_ = 0;
  int dim_ = 0;
  Source source_ = Source::Points;
  std::vector<double> coords_;
  std::vector<double> matrix_;
  double min_dist_ = 0.0;
  double max_dist_ = 0.0;
};

struct MetricParams {
  int lambda_hat = 2;
  double stretch = 1.0;
  double r0 = 0.0;
};

MetricParams compute_params(const MetricSpace& ms, uint64_t seed = 1);

// Text formats: points are one per line (comma or whitespace separated);
// a matrix file starts with n followed by n rows of n reals.
MetricSpace read_points(std::istream& in);
MetricSpace read_matrix(std::istream& in);
MetricSpace read_metric_file(const std::string& path, const std::string& format);
void write_points(std::ostream& out, const MetricSpace& ms);
void write_matrix(std::ostream& out, const MetricSpace& ms);

// Instance families over [0,1]^2 (grid uses the integer lattice).
MetricSpace generate_uniform2d(int n, uint64_t seed);
MetricSpace generate_clustered2d(int n, uint64_t seed, double sigma = 0.02);
MetricSpace generate_grid(int n);
// Explicit matrix: shortest-path metric of a random complete graph with
// weights in [1,2] (every triangle holds, so the matrix is already metric).
MetricSpace generate_matrix(int n, uint64_t seed);
MetricSpace generate_family(const std::string& family, int n, uint64_t seed);

}  // namespace dmot
