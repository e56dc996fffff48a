#include "dmot/applications.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

namespace dmot {

namespace {

struct Dsu {
  std::vector<int32_t> up;
  explicit Dsu(int32_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int32_t find(int32_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
};

// Kruskal over the spanner edges; returns indices into sp.edges.
std::vector<size_t> mst_edges(const Pseudospanner& sp) {
  std::vector<size_t> order(sp.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return sp.edges[a].w < sp.edges[b].w; });
  Dsu dsu(sp.size());
  std::vector<size_t> out;
  for (size_t e : order) {
    if (dsu.unite(sp.edges[e].u, sp.edges[e].v)) out.push_back(e);
  }
  if (static_cast<int32_t>(out.size()) + 1 != std::max(1, sp.size())) {
    throw Error(ErrorCode::DisconnectedSpanner, "spanner is not connected");
  }
  return out;
}

WeightedTree to_tree(const Pseudospanner& sp, const std::vector<size_t>& ids) {
  WeightedTree t;
  for (size_t e : ids) {
    t.edges.emplace_back(sp.vertices[sp.edges[e].u], sp.vertices[sp.edges[e].v]);
    t.weight += sp.edges[e].w;
  }
  return t;
}

}  // namespace

WeightedTree approx_mst(const Pseudospanner& sp) { return to_tree(sp, mst_edges(sp)); }

WeightedTree steiner_tree(const Pseudospanner& sp) { return approx_mst(sp); }

Tour tsp_tour(const Pseudospanner& sp) {
  Tour tour;
  int32_t k = sp.size();
  if (k == 0) return tour;
  std::vector<std::vector<int32_t>> adj(k);
  for (size_t e : mst_edges(sp)) {
    adj[sp.edges[e].u].push_back(sp.edges[e].v);
    adj[sp.edges[e].v].push_back(sp.edges[e].u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  std::vector<int32_t> order;
  std::vector<char> seen(k, 0);
  std::vector<int32_t> stack{0};
  while (!stack.empty()) {
    int32_t u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    order.push_back(u);
    for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it)
      if (!seen[*it]) stack.push_back(*it);
  }
  for (size_t i = 0; i < order.size() && k > 1; ++i) {
    int32_t a = order[i], b = order[(i + 1) % order.size()];
    tour.length += spanner_shortest_paths(sp, {a}).dist[b];
  }
  for (int32_t v : order) tour.order.push_back(sp.vertices[v]);
  return tour;
}

WeightedTree steiner_forest(const Pseudospanner& sp,
                            const std::vector<std::pair<PointId, PointId>>& pairs) {
  int32_t k = sp.size();
  std::vector<std::pair<int32_t, int32_t>> demand;
  for (auto [s, t] : pairs) {
    int32_t a = sp.vertex(s), b = sp.vertex(t);
    if (a != b) demand.emplace_back(a, b);
  }
  WeightedTree out;
  if (demand.empty()) return out;
  std::vector<std::vector<int32_t>> partners(k);
  for (auto [a, b] : demand) {
    partners[a].push_back(b);
    partners[b].push_back(a);
  }
  Dsu comp(k);
  std::vector<double> load(k, 0.0);
  std::vector<size_t> chosen;
  auto active_roots = [&]() {
    std::vector<char> active(k, 0);
    for (int32_t v = 0; v < k; ++v)
      for (int32_t p : partners[v])
        if (comp.find(p) != comp.find(v)) active[comp.find(v)] = 1;
    return active;
  };
  for (;;) {
    auto active = active_roots();
    if (std::none_of(active.begin(), active.end(), [](char c) { return c != 0; })) break;
    double best = kInf;
    size_t best_edge = sp.edges.size();
    for (size_t e = 0; e < sp.edges.size(); ++e) {
      const auto& ed = sp.edges[e];
      int32_t ru = comp.find(ed.u), rv = comp.find(ed.v);
      if (ru == rv) continue;
      int rate = active[ru] + active[rv];
      if (rate == 0) continue;
      double delta = std::max(0.0, ed.w - load[ed.u] - load[ed.v]) / rate;
      if (delta < best) {
        best = delta;
        best_edge = e;
      }
    }
    if (best_edge == sp.edges.size()) {
      throw Error(ErrorCode::DisconnectedSpanner, "demand pair cannot be connected");
    }
    for (int32_t v = 0; v < k; ++v)
      if (active[comp.find(v)]) load[v] += best;
    comp.unite(sp.edges[best_edge].u, sp.edges[best_edge].v);
    chosen.push_back(best_edge);
  }
  // Keep only the edges some demand pair routes through.
  std::vector<std::vector<std::pair<int32_t, size_t>>> adj(k);
  for (size_t e : chosen) {
    adj[sp.edges[e].u].push_back({sp.edges[e].v, e});
    adj[sp.edges[e].v].push_back({sp.edges[e].u, e});
  }
  std::set<size_t> keep;
  for (auto [a, b] : demand) {
    std::vector<std::pair<int32_t, size_t>> via(k, {-1, 0});
    std::vector<int32_t> queue{a};
    via[a] = {a, 0};
    for (size_t h = 0; h < queue.size(); ++h) {
      for (auto [w, e] : adj[queue[h]]) {
        if (via[w].first < 0) {
          via[w] = {queue[h], e};
          queue.push_back(w);
        }
      }
    }
    for (int32_t v = b; v != a; v = via[v].first) keep.insert(via[v].second);
  }
  return to_tree(sp, std::vector<size_t>(keep.begin(), keep.end()));
}

CenterSet k_center(const Pseudospanner& sp, int r) {
  int32_t k = sp.size();
  if (r < 1 || r > k) throw Error(ErrorCode::InvalidR, std::to_string(r));
  std::vector<int32_t> centers{0};
  std::vector<double> dist = spanner_shortest_paths(sp, {0}).dist;
  while (static_cast<int>(centers.size()) < r) {
    int32_t far = static_cast<int32_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
    centers.push_back(far);
    auto d = spanner_shortest_paths(sp, {far}).dist;
    for (int32_t v = 0; v < k; ++v) dist[v] = std::min(dist[v], d[v]);
  }
  auto sweep = spanner_shortest_paths(sp, centers);
  CenterSet out;
  for (int32_t c : centers) out.centers.push_back(sp.vertices[c]);
  out.assignment.resize(k);
  for (int32_t v = 0; v < k; ++v) {
    int32_t x = v;
    while (sweep.parent[x] >= 0) x = sweep.parent[x];
    out.assignment[v] = sp.vertices[x];
    out.radius = std::max(out.radius, sweep.dist[v]);
  }
  return out;
}

FLSolution greedy_facility_location(const std::vector<std::vector<double>>& dist,
                                    const std::vector<double>& opening) {
  size_t nc = dist.size(), nf = opening.size();
  if (nf == 0 || std::all_of(opening.begin(), opening.end(), [](double f) { return f == kInf; })) {
    throw Error(ErrorCode::NoFacilities, "no facility can be opened");
  }
  // Cities raise their budgets together; an unconnected city pays toward a
  // closed facility whatever its budget exceeds the connection cost. A fully
  // paid facility opens and takes every city paying it; a city whose budget
  // reaches an open facility connects to it. Connected cities stop paying.
  std::vector<char> connected(nc, 0), open(nf, 0);
  std::vector<int32_t> to(nc, -1);
  size_t left = nc;
  double now = 0.0;
  while (left > 0) {
    double best = kInf;
    int32_t fac = -1;
    bool opening_event = false;
    for (size_t i = 0; i < nf; ++i) {
      if (open[i]) {
        for (size_t j = 0; j < nc; ++j) {
          if (!connected[j] && dist[j][i] < best) {
            best = dist[j][i];
            fac = static_cast<int32_t>(i);
            opening_event = false;
          }
        }
        continue;
      }
      if (opening[i] == kInf) continue;
      std::vector<double> c;
      for (size_t j = 0; j < nc; ++j)
        if (!connected[j]) c.push_back(dist[j][i]);
      std::sort(c.begin(), c.end());
      double sum = 0.0;
      for (size_t m = 1; m <= c.size(); ++m) {
        sum += c[m - 1];
        double t = (opening[i] + sum) / static_cast<double>(m);
        if (t >= c[m - 1] && (m == c.size() || t <= c[m])) {
          if (t < best || (t == best && !opening_event)) {
            best = t;
            fac = static_cast<int32_t>(i);
            opening_event = true;
          }
          break;
        }
      }
    }
    now = std::max(now, best);
    if (opening_event) open[fac] = 1;
    for (size_t j = 0; j < nc; ++j) {
      if (!connected[j] && dist[j][fac] <= now) {
        connected[j] = 1;
        to[j] = fac;
        --left;
      }
    }
  }
  // Reassign every city to its nearest open facility.
  FLSolution sol;
  std::vector<char> used(nf, 0);
  for (size_t j = 0; j < nc; ++j) {
    for (size_t i = 0; i < nf; ++i)
      if (open[i] && dist[j][i] < dist[j][to[j]]) to[j] = static_cast<int32_t>(i);
    used[to[j]] = 1;
    sol.connection_cost += dist[j][to[j]];
  }
  for (size_t i = 0; i < nf; ++i) {
    if (used[i]) {
      sol.open.push_back(static_cast<PointId>(i));
      sol.opening_cost += opening[i];
    }
  }
  for (size_t j = 0; j < nc; ++j) sol.assignment.emplace_back(static_cast<PointId>(j), to[j]);
  sol.cost = sol.opening_cost + sol.connection_cost;
  return sol;
}

FLSolution facility_location_restricted(const Pseudospanner& sp, const std::vector<PointId>& cities,
                                        const std::vector<PointId>& facilities,
                                        const std::vector<double>& opening) {
  if (facilities.empty()) throw Error(ErrorCode::NoFacilities, "empty facility set");
  if (facilities.size() != opening.size()) throw Error(ErrorCode::BadInput, "cost count mismatch");
  std::vector<std::vector<double>> dist(cities.size(), std::vector<double>(facilities.size()));
  for (size_t i = 0; i < facilities.size(); ++i) {
    auto d = spanner_shortest_paths(sp, {sp.vertex(facilities[i])}).dist;
    for (size_t j = 0; j < cities.size(); ++j) dist[j][i] = d[sp.vertex(cities[j])];
  }
  FLSolution sol = greedy_facility_location(dist, opening);
  for (auto& f : sol.open) f = facilities[f];
  for (auto& [c, f] : sol.assignment) {
    c = cities[c];
    f = facilities[f];
  }
  return sol;
}

double visibility(const PartitionConfig& c, Level j) { return c.sandwich_factor() * c.radius(j); }

int FLIndex::list_bound(const PartitionConfig& c, int n, double eps0) {
  return ceil_log(c.tau, static_cast<double>(n) / (eps0 * eps0)) + 1;
}

double fl_reduction_factor(const PartitionConfig& c, double eps0) {
  double inner = 1.0 + 4.0 * c.leader_factor();
  return std::max({1.0 + 2.0 * eps0 * c.tau, 1.0 + c.tau * (1.0 + eps0) * inner, 1.0 + eps0});
}

FLIndex fl_preprocess_unrestricted(const CompressedTree& t, const std::vector<double>& f,
                                   double eps0) {
  if (static_cast<int>(f.size()) != t.n) throw Error(ErrorCode::BadInput, "one cost per point");
  if (!(eps0 > 0.0 && eps0 <= 1.0)) throw Error(ErrorCode::BadInput, "eps0 must lie in (0, 1]");
  for (double x : f)
    if (!(x >= 0.0)) throw Error(ErrorCode::BadInput, "opening costs must be nonnegative");
  NodeId count = t.node_count();
  auto cheaper = [&](PointId a, PointId b) {
    if (b < 0) return true;
    return f[a] < f[b] || (f[a] == f[b] && a < b);
  };
  // Cheapest point of every set; ids list children before parents.
  std::vector<PointId> low_set(count, -1);
  for (NodeId x = 0; x < count; ++x) {
    if (x < t.n) low_set[x] = t.nodes[x].point;
    for (NodeId c : t.nodes[x].children)
      if (cheaper(low_set[c], low_set[x])) low_set[x] = low_set[c];
  }
  // Expanded edge to the parent: one entry per distinct level among the node
  // itself and its meetings, holding the cheapest point of every set known so far.
  std::vector<std::vector<FLEntry>> chain(count);
  for (NodeId x = 0; x < count; ++x) {
    PointId cur = low_set[x];
    chain[x].push_back({t.level(x), cur, f[cur]});
    for (int32_t mi : t.nodes[x].meetings) {
      const Meeting& m = t.meetings[mi];
      PointId cand = low_set[m.other(x)];
      if (cheaper(cand, cur)) cur = cand;
      if (chain[x].back().level == m.level) chain[x].back() = {m.level, cur, f[cur]};
      else chain[x].push_back({m.level, cur, f[cur]});
    }
  }
  FLIndex idx;
  idx.eps0 = eps0;
  idx.root_low = low_set[t.root];
  idx.root_low_cost = f[idx.root_low];
  idx.root_level = t.level(t.root);
  idx.F.assign(t.n, {});
  double nn = static_cast<double>(t.n);
  for (PointId p = 0; p < t.n; ++p) {
    bool started = false;
    bool done = false;
    for (NodeId x = t.leaf_of[p]; x != kNoNode && !done; x = t.nodes[x].parent) {
      for (const FLEntry& e : chain[x]) {
        double vis = visibility(t.config, e.level);
        if (!started && e.cost <= nn / eps0 * vis) started = true;
        if (!started) continue;
        idx.F[p].push_back(e);
        if (e.cost <= eps0 * vis) {
          done = true;
          break;
        }
      }
    }
  }
  return idx;
}

std::vector<std::pair<PointId, double>> fl_candidates(const FLIndex& idx, const PartitionConfig& c,
                                                      const std::vector<PointId>& cities) {
  double k = static_cast<double>(cities.size());
  std::vector<std::pair<PointId, double>> out;
  std::set<PointId> seen;
  auto add = [&](PointId p, double cost) {
    if (cost < kInf && seen.insert(p).second) out.emplace_back(p, cost);
  };
  for (PointId city : cities) {
    if (city < 0 || city >= static_cast<PointId>(idx.F.size())) {
      throw Error(ErrorCode::UnknownPoint, std::to_string(city));
    }
    for (const FLEntry& e : idx.F[city])
      if (e.cost <= k / idx.eps0 * visibility(c, e.level)) add(e.low, e.cost);
  }
  add(idx.root_low, idx.root_low_cost);
  std::sort(out.begin(), out.end());
  return out;
}

FLSolution fl_query_unrestricted(const CompressedTree& t, const PathNav& nav, const FLIndex& idx,
                                 const std::vector<PointId>& cities_in) {
  std::vector<PointId> cities = cities_in;
  std::sort(cities.begin(), cities.end());
  cities.erase(std::unique(cities.begin(), cities.end()), cities.end());
  if (cities.empty()) throw Error(ErrorCode::EmptyQuery, "no cities");
  auto cand = fl_candidates(idx, t.config, cities);
  if (cand.empty()) throw Error(ErrorCode::NoFacilities, "every opening cost is infinite");
  std::vector<PointId> all = cities;
  std::vector<PointId> fac;
  std::vector<double> cost;
  for (auto [p, c] : cand) {
    all.push_back(p);
    fac.push_back(p);
    cost.push_back(c);
  }
  auto et = extract_subtree(t, nav, all);
  auto sp = build_pseudospanner(et, t.config);
  return facility_location_restricted(sp, cities, fac, cost);
}

}  // namespace dmot
