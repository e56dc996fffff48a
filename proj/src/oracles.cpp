#include "dmot/oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dmot::oracle {

NaiveTree naive_build(const MetricSpace& ms, const PartitionConfig& config) {
  int n = ms.size();
  NaiveTree t;
  NaiveLevel lv;
  lv.j = 0;
  for (int i = 0; i < n; ++i) {
    lv.sets.push_back({i});
    lv.leader.push_back(i);
  }
  t.levels.push_back(lv);
  while (t.levels.back().sets.size() > 1) {
    const NaiveLevel& cur = t.levels.back();
    double r_next = config.r0 * std::pow(config.tau, cur.j + 1);
    double ball = std::ldexp(2.0 * r_next, -config.eta - 1);
    std::vector<int> order(cur.sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cur.leader[a] < cur.leader[b]; });
    std::vector<char> used(order.size(), 0);
    NaiveLevel next;
    next.j = cur.j + 1;
    for (size_t a = 0; a < order.size(); ++a) {
      if (used[a]) continue;
      used[a] = 1;
      std::vector<PointId> merged = cur.sets[order[a]];
      PointId lead = cur.leader[order[a]];
      for (size_t b = a + 1; b < order.size(); ++b) {
        if (!used[b] && ms.d(lead, cur.leader[order[b]]) < ball) {
          used[b] = 1;
          const auto& add = cur.sets[order[b]];
          merged.insert(merged.end(), add.begin(), add.end());
        }
      }
      std::sort(merged.begin(), merged.end());
      next.sets.push_back(std::move(merged));
      next.leader.push_back(lead);
    }
    t.levels.push_back(std::move(next));
  }
  for (const auto& level : t.levels) {
    double r = config.r0 * std::pow(config.tau, level.j);
    std::vector<int> owner(n);
    for (size_t s = 0; s < level.sets.size(); ++s) {
      t.nodes.emplace(level.sets[s], level.j);
      for (PointId p : level.sets[s]) owner[p] = static_cast<int>(s);
    }
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (owner[u] == owner[v] || !(ms.d(u, v) < r)) continue;
        auto a = level.sets[owner[u]], b = level.sets[owner[v]];
        if (b < a) std::swap(a, b);
        t.meetings.emplace(std::make_pair(a, b), level.j);
      }
    }
  }
  return t;
}

Level naive_first_knowing(const NaiveTree& t, const MetricSpace& ms,
                          const PartitionConfig& config, PointId u, PointId v) {
  for (const auto& level : t.levels) {
    const std::vector<PointId>* su = nullptr;
    const std::vector<PointId>* sv = nullptr;
    for (const auto& s : level.sets) {
      if (std::binary_search(s.begin(), s.end(), u)) su = &s;
      if (std::binary_search(s.begin(), s.end(), v)) sv = &s;
    }
    if (su == sv) return level.j;
    double r = config.r0 * std::pow(config.tau, level.j);
    for (PointId a : *su)
      for (PointId b : *sv)
        if (ms.d(a, b) < r) return level.j;
  }
  return t.levels.back().j;
}

Tree exact_mst(const MetricSpace& ms, const std::vector<PointId>& pts) {
  int k = static_cast<int>(pts.size());
  std::vector<std::tuple<double, int, int>> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) edges.emplace_back(ms.d(pts[a], pts[b]), a, b);
  std::sort(edges.begin(), edges.end());
  std::vector<int> up(k);
  std::iota(up.begin(), up.end(), 0);
  std::function<int(int)> find = [&](int x) { return up[x] == x ? x : up[x] = find(up[x]); };
  Tree t;
  for (auto [w, a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    up[ra] = rb;
    t.weight += w;
    t.edges.emplace_back(pts[a], pts[b]);
  }
  return t;
}

double exact_mst_prim(const MetricSpace& ms, const std::vector<PointId>& pts) {
  std::vector<std::vector<double>> d(pts.size(), std::vector<double>(pts.size()));
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = 0; b < pts.size(); ++b) d[a][b] = ms.d(pts[a], pts[b]);
  return mst_weight_matrix(d);
}

double mst_weight_matrix(const std::vector<std::vector<double>>& d) {
  size_t k = d.size();
  if (k <= 1) return 0.0;
  std::vector<double> best(k, kInf);
  std::vector<char> in(k, 0);
  best[0] = 0.0;
  double total = 0.0;
  for (size_t it = 0; it < k; ++it) {
    size_t u = k;
    for (size_t v = 0; v < k; ++v)
      if (!in[v] && (u == k || best[v] < best[u])) u = v;
    in[u] = 1;
    total += best[u];
    for (size_t v = 0; v < k; ++v)
      if (!in[v]) best[v] = std::min(best[v], d[u][v]);
  }
  return total;
}

double exact_tsp(const std::vector<std::vector<double>>& d) {
  int k = static_cast<int>(d.size());
  if (k <= 1) return 0.0;
  if (k == 2) return 2.0 * d[0][1];
  int m = k - 1;  // city 0 is the fixed start
  std::vector<std::vector<double>> dp(size_t{1} << m, std::vector<double>(m, kInf));
  for (int i = 0; i < m; ++i) dp[size_t{1} << i][i] = d[0][i + 1];
  for (size_t mask = 1; mask < dp.size(); ++mask) {
    for (int i = 0; i < m; ++i) {
      if (!(mask >> i & 1) || dp[mask][i] == kInf) continue;
      for (int j = 0; j < m; ++j) {
        if (mask >> j & 1) continue;
        size_t nm = mask | (size_t{1} << j);
        dp[nm][j] = std::min(dp[nm][j], dp[mask][i] + d[i + 1][j + 1]);
      }
    }
  }
  double best = kInf;
  for (int i = 0; i < m; ++i) best = std::min(best, dp.back()[i] + d[i + 1][0]);
  return best;
}

double exact_tsp_enumerate(const std::vector<std::vector<double>>& d) {
  int k = static_cast<int>(d.size());
  if (k <= 1) return 0.0;
  std::vector<int> perm(k - 1);
  std::iota(perm.begin(), perm.end(), 1);
  double best = kInf;
  do {
    double len = d[0][perm[0]] + d[perm.back()][0];
    for (size_t i = 0; i + 1 < perm.size(); ++i) len += d[perm[i]][perm[i + 1]];
    best = std::min(best, len);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

std::vector<std::vector<double>> shortest_paths(std::vector<std::vector<double>> d) {
  size_t n = d.size();
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// dp[mask][v]: cheapest tree spanning terminals in mask plus vertex v.
std::vector<std::vector<double>> dreyfus_wagner(const std::vector<std::vector<double>>& d0,
                                                const std::vector<int>& terminals) {
  auto d = shortest_paths(d0);
  size_t n = d.size(), t = terminals.size();
  std::vector<std::vector<double>> dp(size_t{1} << t, std::vector<double>(n, kInf));
  for (size_t i = 0; i < t; ++i)
    for (size_t v = 0; v < n; ++v) dp[size_t{1} << i][v] = d[terminals[i]][v];
  for (size_t mask = 1; mask < dp.size(); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    std::vector<double> join(n, kInf);
    for (size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
      if (sub < (mask ^ sub)) continue;  // each split once
      for (size_t u = 0; u < n; ++u) join[u] = std::min(join[u], dp[sub][u] + dp[mask ^ sub][u]);
    }
    for (size_t v = 0; v < n; ++v) {
      double best = kInf;
      for (size_t u = 0; u < n; ++u) best = std::min(best, join[u] + d[u][v]);
      dp[mask][v] = best;
    }
  }
  return dp;
}

}  // namespace

double exact_steiner(const std::vector<std::vector<double>>& d, const std::vector<int>& terminals) {
  if (terminals.size() <= 1) return 0.0;
  auto dp = dreyfus_wagner(d, terminals);
  return dp.back()[terminals[0]];
}

double exact_steiner_enumerate(const std::vector<std::vector<double>>& d,
                               const std::vector<int>& terminals) {
  auto sp = shortest_paths(d);
  size_t n = d.size();
  std::vector<char> is_term(n, 0);
  for (int x : terminals) is_term[x] = 1;
  std::vector<int> others;
  for (size_t v = 0; v < n; ++v)
    if (!is_term[v]) others.push_back(static_cast<int>(v));
  double best = kInf;
  for (size_t mask = 0; mask < (size_t{1} << others.size()); ++mask) {
    std::vector<int> pts = terminals;
    for (size_t i = 0; i < others.size(); ++i)
      if (mask >> i & 1) pts.push_back(others[i]);
    std::vector<std::vector<double>> sub(pts.size(), std::vector<double>(pts.size()));
    for (size_t a = 0; a < pts.size(); ++a)
      for (size_t b = 0; b < pts.size(); ++b) sub[a][b] = sp[pts[a]][pts[b]];
    best = std::min(best, mst_weight_matrix(sub));
  }
  return best;
}

double exact_steiner_forest(const std::vector<std::vector<double>>& d,
                            const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> terms;
  for (auto [u, v] : pairs) {
    if (u == v) continue;
    terms.push_back(u);
    terms.push_back(v);
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.empty()) return 0.0;
  size_t t = terms.size();
  auto idx = [&](int p) {
    return static_cast<size_t>(std::lower_bound(terms.begin(), terms.end(), p) - terms.begin());
  };
  auto dp = dreyfus_wagner(d, terms);
  size_t full = (size_t{1} << t) - 1;
  std::vector<double> tree(full + 1, 0.0);
  for (size_t mask = 1; mask <= full; ++mask) {
    size_t low = static_cast<size_t>(__builtin_ctzll(mask));
    tree[mask] = (mask & (mask - 1)) == 0 ? 0.0 : dp[mask ^ (size_t{1} << low)][terms[low]];
  }
  auto closed = [&](size_t mask) {
    for (auto [u, v] : pairs) {
      if (u == v) continue;
      bool a = mask >> idx(u) & 1, b = mask >> idx(v) & 1;
      if (a != b) return false;
    }
    return true;
  };
  std::vector<double> best(full + 1, kInf);
  best[0] = 0.0;
  for (size_t mask = 1; mask <= full; ++mask) {
    if (!closed(mask)) continue;
    size_t low = mask & (~mask + 1);
    for (size_t sub = mask; sub > 0; sub = (sub - 1) & mask) {
      if (!(sub & low) || !closed(sub)) continue;
      best[mask] = std::min(best[mask], tree[sub] + best[mask ^ sub]);
    }
  }
  return best[full];
}

double exact_fl(const std::vector<std::vector<double>>& dist, const std::vector<double>& open) {
  size_t f = open.size();
  double best = kInf;
  for (size_t mask = 1; mask < (size_t{1} << f); ++mask) {
    double cost = 0.0;
    for (size_t i = 0; i < f; ++i)
      if (mask >> i & 1) cost += open[i];
    if (cost == kInf) continue;
    for (const auto& row : dist) {
      double c = kInf;
      for (size_t i = 0; i < f; ++i)
        if (mask >> i & 1) c = std::min(c, row[i]);
      cost += c;
    }
    best = std::min(best, cost);
  }
  return best;
}

double exact_fl_gray(const std::vector<std::vector<double>>& dist, const std::vector<double>& open) {
  // Include/exclude recursion over facilities, descending index order.
  size_t f = open.size();
  double best = kInf;
  std::vector<char> chosen(f, 0);
  std::function<void(int, double, int)> rec = [&](int i, double opening, int count) {
    if (i < 0) {
      if (count == 0 || opening == kInf) return;
      double cost = opening;
      for (const auto& row : dist) {
        double c = kInf;
        for (size_t k = 0; k < f; ++k)
          if (chosen[k]) c = std::min(c, row[k]);
        cost += c;
      }
      best = std::min(best, cost);
      return;
    }
    chosen[i] = 1;
    rec(i - 1, opening + open[i], count + 1);
    chosen[i] = 0;
    rec(i - 1, opening, count);
  };
  rec(static_cast<int>(f) - 1, 0.0, 0);
  return best;
}

double exact_k_center(const std::vector<std::vector<double>>& d, int r) {
  int k = static_cast<int>(d.size());
  double best = kInf;
  std::vector<int> pick(r);
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == r) {
      double rad = 0.0;
      for (int p = 0; p < k; ++p) {
        double c = kInf;
        for (int x : pick) c = std::min(c, d[p][x]);
        rad = std::max(rad, c);
      }
      best = std::min(best, rad);
      return;
    }
    for (int x = from; x < k; ++x) {
      pick[pos] = x;
      rec(pos + 1, x + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace dmot::oracle

namespace dmot::oracle {

NodeId naive_ancestor_at(const CompressedTree& t, PointId v, Level l) {
  NodeId x = t.leaf_of[v];
  while (x != t.root && t.level(t.nodes[x].parent) <= l) x = t.nodes[x].parent;
  return x;
}

Level naive_meet(const CompressedTree& t, PointId u, PointId v) {
  for (Level l : t.levels) {
    NodeId a = naive_ancestor_at(t, u, l), b = naive_ancestor_at(t, v, l);
    if (a == b) return l;
    auto k = t.know_query(a, b);
    if (k && *k <= l) return l;
  }
  return t.level(t.root);
}

std::optional<std::pair<NodeId, Meeting>> naive_meeting_jump(const CompressedTree& t, PointId v,
                                                             Level i) {
  std::optional<std::pair<NodeId, Meeting>> best;
  for (NodeId x = t.leaf_of[v]; x != kNoNode; x = t.nodes[x].parent) {
    for (const Meeting& m : t.meetings) {
      if ((m.a != x && m.b != x) || m.level < i) continue;
      if (!best || m.level < best->second.level ||
          (m.level == best->second.level && m.other(x) < best->second.other(best->first))) {
        best = std::make_pair(x, m);
      }
    }
  }
  return best;
}

NodeId naive_level_ancestor(const CompressedTree& t, PointId v, Level j) {
  NodeId x = t.leaf_of[v];
  while (x != t.root && t.level(t.nodes[x].parent) <= j) x = t.nodes[x].parent;
  return x;
}

std::vector<std::pair<Level, NodeId>> naive_known_sets(const CompressedTree& t, PointId x,
                                                       Level i, Level j) {
  std::vector<std::pair<Level, NodeId>> out;
  for (Level l = i; l <= j; ++l) {
    NodeId y = naive_ancestor_at(t, x, l);
    for (NodeId z = 0; z < t.node_count(); ++z) {
      if (!t.alive_at(z, l)) continue;
      if (z == y) {
        out.push_back({l, z});
        continue;
      }
      for (const Meeting& m : t.meetings) {
        if (((m.a == y && m.b == z) || (m.a == z && m.b == y)) && m.level <= l) {
          out.push_back({l, z});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<Level, std::vector<PointId>>> naive_known_sets_metric(
    const NaiveTree& nt, const MetricSpace& ms, const PartitionConfig& config, PointId x, Level i,
    Level j) {
  std::vector<std::pair<Level, std::vector<PointId>>> out;
  for (Level l = i; l <= j; ++l) {
    const NaiveLevel& lv = nt.levels[std::min<size_t>(l, nt.levels.size() - 1)];
    double r = config.r0 * std::pow(config.tau, l);
    const std::vector<PointId>* own = nullptr;
    for (const auto& s : lv.sets)
      if (std::binary_search(s.begin(), s.end(), x)) own = &s;
    for (const auto& s : lv.sets) {
      bool known = &s == own;
      for (PointId a : *own)
        for (PointId b : s)
          if (!known && ms.d(a, b) < r) known = true;
      if (known) out.push_back({l, s});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dmot::oracle

namespace dmot::oracle {

NaiveExtract naive_extract(const CompressedTree& t, const std::vector<PointId>& s) {
  std::vector<char> in(t.n, 0);
  for (PointId p : s) in[p] = 1;
  NaiveExtract out;
  std::vector<std::vector<PointId>> trace(t.node_count());
  for (NodeId x = 0; x < t.node_count(); ++x) {
    for (PointId p : t.points_of(x))
      if (in[p]) trace[x].push_back(p);
    if (trace[x].empty()) continue;
    auto [it, fresh] = out.nodes.emplace(trace[x], t.level(x));
    if (!fresh) it->second = std::min(it->second, t.level(x));
  }
  for (const auto& [q, lq] : out.nodes) {
    const std::vector<PointId>* best = nullptr;
    for (const auto& [r, lr] : out.nodes) {
      if (r.size() <= q.size() || !std::includes(r.begin(), r.end(), q.begin(), q.end())) continue;
      if (!best || r.size() < best->size()) best = &r;
    }
    if (best) out.parent[q] = *best;
  }
  for (const auto& m : t.meetings) {
    auto a = trace[m.a], b = trace[m.b];
    if (a.empty() || b.empty()) continue;
    if (b < a) std::swap(a, b);
    auto [it, fresh] = out.meetings.emplace(std::make_pair(a, b), m.level);
    if (!fresh) it->second = std::min(it->second, m.level);
  }
  return out;
}

}  // namespace dmot::oracle

namespace dmot::oracle {

std::string compare_extraction(const CompressedTree& t, const ExtractedTree& et,
                               const std::vector<PointId>& s) {
  auto want = naive_extract(t, s);
  if (static_cast<size_t>(et.size()) != want.nodes.size()) return "node count";
  for (int32_t x = 0; x < et.size(); ++x) {
    auto q = et.members(x);
    auto it = want.nodes.find(q);
    if (it == want.nodes.end()) return "unexpected node";
    if (et.nodes[x].level != it->second) return "node level";
    if (et.nodes[x].parent < 0) {
      if (want.parent.count(q) || x != et.root) return "root";
    } else {
      auto pt = want.parent.find(q);
      if (pt == want.parent.end() || pt->second != et.members(et.nodes[x].parent)) return "parent";
    }
  }
  std::map<std::pair<std::vector<PointId>, std::vector<PointId>>, Level> got;
  for (const auto& m : et.meetings) {
    auto a = et.members(m.a), b = et.members(m.b);
    if (b < a) std::swap(a, b);
    if (!got.emplace(std::make_pair(a, b), m.level).second) return "duplicate meeting";
  }
  if (got != want.meetings) return "meetings";
  return {};
}

}  // namespace dmot::oracle
