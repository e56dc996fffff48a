#include "dmot/metric.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace dmot {

namespace {

std::string pair_str(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

MetricSpace MetricSpace::from_points(std::vector<std::vector<double>> points) {
  if (points.size() < 2) throw Error(ErrorCode::BadInput, "need at least 2 points");
  MetricSpace ms;
  ms.source_ = Source::Points;
  ms.n_ = static_cast<int>(points.size());
  ms.dim_ = static_cast<int>(points[0].size());
  if (ms.dim_ == 0) throw Error(ErrorCode::BadInput, "zero-dimensional points");
  ms.coords_.reserve(points.size() * ms.dim_);
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != ms.dim_) {
      throw Error(ErrorCode::BadInput, "inconsistent point dimension");
    }
    for (double x : p) {
      if (!std::isfinite(x)) throw Error(ErrorCode::BadInput, "non-finite coordinate");
      ms.coords_.push_back(x);
    }
  }
  ms.compute_extremes();
  return ms;
}

MetricSpace MetricSpace::from_matrix(std::vector<std::vector<double>> matrix,
                                     uint64_t check_seed) {
  int n = static_cast<int>(matrix.size());
  if (n < 2) throw Error(ErrorCode::BadInput, "need at least 2 points");
  MetricSpace ms;
  ms.source_ = Source::Matrix;
  ms.n_ = n;
  ms.matrix_.resize(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(matrix[u].size()) != n) {
      throw Error(ErrorCode::BadInput, "matrix is not square");
    }
    for (int v = 0; v < n; ++v) {
      double x = matrix[u][v];
      if (!std::isfinite(x)) throw Error(ErrorCode::BadInput, "non-finite entry");
      if (x < 0.0) throw Error(ErrorCode::NegativeDistance, pair_str(u, v));
      ms.matrix_[static_cast<size_t>(u) * n + v] = x;
    }
  }
  for (int u = 0; u < n; ++u) {
    if (ms.d(u, u) != 0.0) throw Error(ErrorCode::BadInput, "nonzero diagonal at " + std::to_string(u));
    for (int v = u + 1; v < n; ++v) {
      if (ms.d(u, v) != ms.d(v, u)) throw Error(ErrorCode::AsymmetricMatrix, pair_str(u, v));
    }
  }
  ms.compute_extremes();
  // Triangle inequality: every triple for small n, random triples otherwise.
  auto check = [&](int a, int b, int c) {
    if (ms.d(a, c) > (ms.d(a, b) + ms.d(b, c)) * (1.0 + 1e-12)) {
      throw Error(ErrorCode::TriangleViolation,
                  pair_str(a, c) + " via " + std::to_string(b));
    }
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(check_seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    size_t samples = std::min<size_t>(10ULL * n * n, 20000000ULL);
    for (size_t s = 0; s < samples; ++s) check(pick(rng), pick(rng), pick(rng));
  }
  return ms;
}

void MetricSpace::compute_extremes() {
  double lo = kInf, hi = 0.0;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      double x = d(u, v);
      if (x == 0.0) throw Error(ErrorCode::DuplicatePoint, pair_str(u, v));
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  min_dist_ = lo;
  max_dist_ = hi;
}

double MetricSpace::distance(PointId u, PointId v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw Error(ErrorCode::InvalidId, pair_str(u, v));
  }
  return d(u, v);
}

std::vector<double> MetricSpace::point(PointId u) const {
  if (source_ != Source::Points) return {};
  return {coords_.begin() + static_cast<size_t>(u) * dim_,
          coords_.begin() + static_cast<size_t>(u + 1) * dim_};
}

MetricSpace MetricSpace::restrict_to(const std::vector<PointId>& ids) const {
  if (source_ == Source::Points) {
    std::vector<std::vector<double>> pts;
    for (PointId u : ids) pts.push_back(point(u));
    return from_points(std::move(pts));
  }
  std::vector<std::vector<double>> m(ids.size(), std::vector<double>(ids.size()));
  for (size_t a = 0; a < ids.size(); ++a)
    for (size_t b = 0; b < ids.size(); ++b) m[a][b] = d(ids[a], ids[b]);
  return from_matrix(std::move(m));
}

MetricParams compute_params(const MetricSpace& ms, uint64_t seed) {
  MetricParams p;
  p.r0 = ms.min_dist() / 2.0;
  p.stretch = ms.max_dist() / ms.min_dist();
  int n = ms.size();
  std::vector<int> centers(n);
  for (int i = 0; i < n; ++i) centers[i] = i;
  if (n > 32) {
    std::mt19937_64 rng(seed);
    std::shuffle(centers.begin(), centers.end(), rng);
    centers.resize(32);
  }
  std::vector<double> radii;
  for (double r = ms.min_dist() / 2.0; r <= ms.max_dist(); r *= 2.0) radii.push_back(r);
  int best = 1;
  std::vector<int> ball;
  std::vector<char> covered;
  for (int c : centers) {
    for (double r : radii) {
      ball.clear();
      for (int w = 0; w < n; ++w)
        if (ms.d(c, w) <= 2.0 * r) ball.push_back(w);
      covered.assign(ball.size(), 0);
      int count = 0;
      for (size_t a = 0; a < ball.size(); ++a) {
        if (covered[a]) continue;
        ++count;
        for (size_t b = a; b < ball.size(); ++b)
          if (!covered[b] && ms.d(ball[a], ball[b]) <= r) covered[b] = 1;
      }
      best = std::max(best, count);
    }
  }
  p.lambda_hat = std::max(2, best);
  return p;
}

namespace {

std::vector<double> parse_row(const std::string& line) {
  std::string s = line;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::vector<double> row;
  std::string tok;
  while (is >> tok) {
    try {
      size_t used = 0;
      double x = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      row.push_back(x);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadInput, "not a number: " + tok);
    }
  }
  return row;
}

bool skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

MetricSpace read_points(std::istream& in) {
  std::vector<std::vector<double>> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    pts.push_back(parse_row(line));
  }
  return MetricSpace::from_points(std::move(pts));
}

MetricSpace read_matrix(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<std::vector<double>> m;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    auto row = parse_row(line);
    if (n < 0) {
      if (row.size() != 1 || row[0] < 0 || row[0] != std::floor(row[0])) {
        throw Error(ErrorCode::BadInput, "matrix header must be n");
      }
      n = static_cast<int>(row[0]);
      continue;
    }
    m.push_back(std::move(row));
  }
  if (n < 0 || static_cast<int>(m.size()) != n) {
    throw Error(ErrorCode::BadInput, "matrix row count does not match header");
  }
  return MetricSpace::from_matrix(std::move(m));
}

MetricSpace read_metric_file(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  if (format == "points") return read_points(in);
  if (format == "matrix") return read_matrix(in);
  throw Error(ErrorCode::BadInput, "unknown input format " + format);
}

void write_points(std::ostream& out, const MetricSpace& ms) {
  out << std::setprecision(17);
  for (int u = 0; u < ms.size(); ++u) {
    auto p = ms.point(u);
    for (size_t k = 0; k < p.size(); ++k) out << (k ? " " : "") << p[k];
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const MetricSpace& ms) {
  out << std::setprecision(17) << ms.size() << '\n';
  for (int u = 0; u < ms.size(); ++u) {
    for (int v = 0; v < ms.size(); ++v) out << (v ? " " : "") << ms.d(u, v);
    out << '\n';
  }
}

MetricSpace generate_uniform2d(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) p = {U(rng), U(rng)};
  return MetricSpace::from_points(std::move(pts));
}

MetricSpace generate_clustered2d(int n, uint64_t seed, double sigma) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> G(0.0, sigma);
  int clusters = std::max(2, n / 64);
  std::vector<std::vector<double>> centers(clusters);
  for (auto& c : centers) c = {U(rng), U(rng)};
  std::uniform_int_distribution<int> pick(0, clusters - 1);
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) {
    const auto& c = centers[pick(rng)];
    p = {c[0] + G(rng), c[1] + G(rng)};
  }
  return MetricSpace::from_points(std::move(pts));
}

MetricSpace generate_grid(int n) {
  int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < n; ++i) pts.push_back({double(i % side), double(i / side)});
  return MetricSpace::from_points(std::move(pts));
}

MetricSpace generate_matrix(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(1.0, 2.0);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) m[u][v] = m[v][u] = U(rng);
  return MetricSpace::from_matrix(std::move(m), seed);
}

MetricSpace generate_family(const std::string& family, int n, uint64_t seed) {
  if (family == "uniform2d") return generate_uniform2d(n, seed);
  if (family == "clustered2d") return generate_clustered2d(n, seed);
  if (family == "grid") return generate_grid(n);
  if (family == "matrix") return generate_matrix(n, seed);
  throw Error(ErrorCode::BadInput, "unknown family " + family);
}

}  // namespace dmot
