#include "dmot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dmot/extraction.hpp"
#include "dmot/oracles.hpp"
#include "dmot/persistence.hpp"
#include "dmot/spanner.hpp"

namespace dmot {

namespace {

constexpr double kTol = 1e-9;

// Calls f(u, v) on all pairs u < v, or on a seeded sample when there are too many.
template <class F>
void for_pairs(int n, long max_pairs, uint64_t seed, F f) {
  long total = static_cast<long>(n) * (n - 1) / 2;
  if (total <= max_pairs) {
    for (PointId u = 0; u < n; ++u)
      for (PointId v = u + 1; v < n; ++v) f(u, v);
    return;
  }
  std::mt19937_64 rng(seed);
  for (long i = 0; i < max_pairs; ++i) {
    PointId u = static_cast<PointId>(rng() % n), v = static_cast<PointId>(rng() % n);
    if (u != v) f(std::min(u, v), std::max(u, v));
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::vector<SuiteResult> verify_structure(const MetricSpace& ms, const Structure& s,
                                          const PreprocessOptions& opt, const VerifyOptions& vo) {
  const CompressedTree& t = s.tree;
  const PartitionConfig& c = t.config;
  std::vector<SuiteResult> out;
  int n = ms.size();

  {
    SuiteResult r;
    r.name = "shape";
    r.checked = 3;
    if (t.n != n) r.violations++, r.detail += "point count differs; ";
    if (t.node_count() > 2 * n - 1) r.violations++, r.detail += "more than 2n-1 nodes; ";
    if (!c.admissible()) r.violations++, r.detail += "inadmissible config; ";
    r.pass = r.violations == 0;
    out.push_back(r);
    if (!r.pass) return out;  // the remaining suites index by point
  }
  {
    // r_j <= d(u, v) < D r_j with j = meet(u, v) - 1
    SuiteResult r;
    r.name = "sandwich";
    double D = c.sandwich_factor(), worst = 0.0;
    for_pairs(n, vo.max_pairs, vo.seed, [&](PointId u, PointId v) {
      Level j = s.nav.meet(u, v) - 1;
      double d = ms.d(u, v), rj = c.radius(j);
      ++r.checked;
      if (!(rj <= d * (1 + kTol) && d <= D * rj * (1 + kTol))) ++r.violations;
      worst = std::max(worst, d / rj);
    });
    r.detail = "max d/r_j " + fmt(worst) + " vs factor " + fmt(D);
    r.pass = r.violations == 0;
    out.push_back(r);
  }
  {
    SuiteResult r;
    r.name = "meet";
    for_pairs(n, std::min(vo.max_pairs, 200000L), vo.seed + 1, [&](PointId u, PointId v) {
      ++r.checked;
      if (s.nav.meet(u, v) != oracle::naive_meet(t, u, v)) ++r.violations;
    });
    r.pass = r.violations == 0;
    out.push_back(r);
  }
  {
    SuiteResult r;
    r.name = "jump";
    std::mt19937_64 rng(vo.seed + 2);
    Level top = t.level(t.root);
    for (int q = 0; q < 10000; ++q) {
      PointId v = static_cast<PointId>(rng() % n);
      Level j = static_cast<Level>(rng() % (top + 2));
      ++r.checked;
      if (s.nav.level_ancestor_jump(v, j) != oracle::naive_level_ancestor(t, v, j)) ++r.violations;
      auto want = oracle::naive_meeting_jump(t, v, j);
      try {
        auto got = s.nav.meeting_jump(v, j);
        if (!want || got.first != want->first || !(got.second == want->second)) ++r.violations;
      } catch (const Error&) {
        if (want) ++r.violations;
      }
    }
    r.pass = r.violations == 0;
    out.push_back(r);
  }
  {
    SuiteResult r;
    r.name = "extraction";
    SuiteResult st;
    st.name = "spanner";
    std::mt19937_64 rng(vo.seed + 3);
    double C = c.spanner_stretch(), worst = 1.0;
    for (int q = 0; q < vo.subsets; ++q) {
      int k = 1 + static_cast<int>(rng() % std::min(vo.max_subset, n));
      std::vector<PointId> sub;
      for (int i = 0; i < k; ++i) sub.push_back(static_cast<PointId>(rng() % n));
      auto et = extract_subtree(t, s.nav, sub);
      ++r.checked;
      std::string diff = oracle::compare_extraction(t, et, sub);
      if (!diff.empty()) {
        ++r.violations;
        r.detail = diff;
      }
      auto sp = build_pseudospanner(et, c);
      auto dh = spanner_distance_matrix(sp);
      for (int32_t a = 0; a < sp.size(); ++a)
        for (int32_t b = a + 1; b < sp.size(); ++b) {
          double d = ms.d(sp.vertices[a], sp.vertices[b]);
          ++st.checked;
          if (!(d <= dh[a][b] * (1 + kTol) && dh[a][b] <= C * d * (1 + kTol))) ++st.violations;
          worst = std::max(worst, dh[a][b] / d);
        }
    }
    r.pass = r.violations == 0;
    st.pass = st.violations == 0;
    st.detail = "max stretch " + fmt(worst) + " vs " + fmt(C);
    out.push_back(r);
    out.push_back(st);
  }
  {
    SuiteResult r;
    r.name = "round-trip";
    auto bytes = serialize(s);
    r.checked = 1;
    try {
      if (serialize(*deserialize(bytes)) != bytes) r.violations = 1, r.detail = "re-save differs";
    } catch (const Error& e) {
      r.violations = 1;
      r.detail = e.what();
    }
    r.pass = r.violations == 0;
    out.push_back(r);
  }
  {
    SuiteResult r;
    r.name = "rebuild-identical";
    r.checked = 1;
    if (serialize(*preprocess(ms, opt)) != serialize(s)) {
      r.violations = 1;
      r.detail = "structure differs from a fresh build on this input";
    }
    r.pass = r.violations == 0;
    out.push_back(r);
  }
  return out;
}

}  // namespace dmot
