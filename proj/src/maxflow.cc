#include "hierflow/maxflow.h"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hierflow/decompose.h"
#include "hierflow/normalize.h"
#include "hierflow/sparse_cut.h"

namespace hierflow {

namespace {

AssertLevel g_assert_level = AssertLevel::kCheap;

// Pushes min(bottleneck, limit) along one widest s-t path of the residual
// graph of (cap, f). Returns the pushed amount, zero when t is unreachable.
CapacityT WidestAugment(const Graph& g, const std::vector<CapacityT>& cap,
                        std::vector<CapacityT>& f, Vertex s, Vertex t,
                        CapacityT limit) {
  assert(limit > 0);
  std::vector<CapacityT> width(g.n, 0);
  std::vector<Edge> via(g.n, -1);
  std::vector<bool> via_back(g.n, false), done(g.n, false);
  std::priority_queue<std::pair<CapacityT, Vertex>> queue;
  width[s] = limit;
  queue.push({limit, s});
  while (!queue.empty()) {
    auto [wd, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == t) break;
    auto relax = [&](Vertex v, CapacityT r, Edge e, bool back) {
      CapacityT w = std::min(wd, r);
      if (w > width[v]) {
        width[v] = w;
        via[v] = e;
        via_back[v] = back;
        queue.push({w, v});
      }
    };
    for (Edge e : g.out_edges[u])
      if (cap[e] - f[e] > 0) relax(g.head[e], cap[e] - f[e], e, false);
    for (Edge e : g.in_edges[u])
      if (f[e] > 0) relax(g.tail[e], f[e], e, true);
  }
  if (width[t] == 0) return 0;
  CapacityT push = width[t];
  for (Vertex v = t; v != s;) {
    Edge e = via[v];
    if (via_back[v]) {
      f[e] -= push;
      v = g.head[e];
    } else {
      f[e] += push;
      v = g.tail[e];
    }
  }
  return push;
}

bool HasPath(const Graph& g, Vertex s, Vertex t) {
  std::vector<bool> seen(g.n, false);
  std::queue<Vertex> queue;
  seen[s] = true;
  queue.push(s);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop();
    if (u == t) return true;
    for (Edge e : g.out_edges[u]) {
      if (!seen[g.head[e]]) {
        seen[g.head[e]] = true;
        queue.push(g.head[e]);
      }
    }
  }
  return false;
}

void CheckEndpoints(const Graph& g, Vertex s, Vertex t) {
  if (s < 0 || s >= g.n || t < 0 || t >= g.n)
    throw std::invalid_argument("terminal vertex out of range");
  if (s == t) throw std::invalid_argument("source equals sink");
}

}  // namespace

void SetAssertLevel(AssertLevel level) { g_assert_level = level; }
AssertLevel GetAssertLevel() { return g_assert_level; }

ApproxResult ApproxMaxflow(const Graph& g, Vertex s, Vertex t,
                           const BuildProfile& profile, Rng& rng) {
  CheckEndpoints(g, s, t);
  // The hierarchy wants strictly positive capacities; dropped edges carry
  // no flow and reappear as zero entries of the result.
  Graph gw(g.n);
  std::vector<Edge> emap;
  for (Edge e : g.Edges()) {
    if (g.capacity[e] > 0) {
      gw.AddEdge(g.tail[e], g.head[e], g.capacity[e]);
      emap.push_back(e);
    }
  }

  BuiltHierarchy bh = BuildExpanderHierarchy(gw, profile, rng);
  ApproxFlowResult fa = ApproxMaxflowShortcut(bh.sg, bh.ws, bh.order, s, t);
  std::vector<CapacityT> fz = Unfold(bh, fa.flow.value);

  CapacityT z3 = 3 * bh.z;
  for (Edge e : gw.Edges())
    if (fz[e] > z3 * gw.capacity[e])
      throw CongestionOverflow("unfolded flow exceeds the tripled capacity");

  // Lift the value to scale z, top it up to the next multiple of 3z inside
  // the tripled capacities, and round. The rounded flow then has the exact
  // value ceil(|f_A| / 3) and respects the plain capacities edge-wise.
  CapacityT value_z = (bh.z / bh.q) * fa.value;
  CapacityT target = (value_z + z3 - 1) / z3 * z3;
  if (target > 0) {
    std::vector<CapacityT> cap3(gw.m);
    for (Edge e : gw.Edges()) cap3[e] = z3 * gw.capacity[e];
    CapacityT need = target - value_z;
    int steps = 0;
    while (need > 0) {
      CapacityT pushed = WidestAugment(gw, cap3, fz, s, t, need);
      assert(pushed > 0 && "top-up path must exist below the tripled optimum");
      if (pushed == 0) break;
      need -= pushed;
      ++steps;
      assert(steps < 100000);
    }
  }
  Demand dr(gw.n);
  dr.source[s] = target;
  dr.sink[t] = target;
  std::vector<CapacityT> fi = RoundFlow(gw, fz, dr, z3);

  ApproxResult res;
  res.value = target / z3;
  res.q = bh.q;
  res.shortcut_value_q = fa.value;
  res.flow = ScaledFlow(1, g.m);
  for (int i = 0; i < gw.m; ++i) res.flow.value[emap[i]] = fi[i];
  res.cut_side.assign(g.n, false);
  for (Vertex v = 0; v < g.n; ++v) res.cut_side[v] = fa.cut.side[v];
  for (Edge e : g.Edges())
    if (res.cut_side[g.tail[e]] && !res.cut_side[g.head[e]])
      res.cut_capacity += g.capacity[e];

  if (g_assert_level == AssertLevel::kFull) {
    Demand di(g.n);
    di.source[s] = res.value;
    di.sink[t] = res.value;
    auto bad = CheckFeasible(g, g.capacity, di, res.flow.value, 1, 1);
    if (bad) throw std::logic_error("approximate flow infeasible: " + *bad);
    if (res.cut_side[t] || !res.cut_side[s])
      throw std::logic_error("approximate cut does not separate s from t");
  }
  return res;
}

ApproxResult ApproxMaxflow(const Graph& g, Vertex s, Vertex t,
                           const BuildProfile& profile, uint64_t seed) {
  Rng rng(seed);
  return ApproxMaxflow(g, s, t, profile, rng);
}

SolveReport ExactMaxflow(const Graph& g, Vertex s, Vertex t,
                         const BuildProfile& profile, uint64_t seed) {
  CheckEndpoints(g, s, t);
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  SolveReport rep;
  rep.seed = seed;
  rep.profile = profile.name;

  ScalingPlan plan = NormalizeCapacities(g);
  rep.scaling_levels = plan.levels;
  std::vector<CapacityT> flow(g.m, 0);
  CapacityT clamp = std::max<CapacityT>(1, g.m);
  for (int k = plan.levels; k >= 0; --k) {
    Graph gk = CapacitiesAtLevel(g, k);
    for (Edge e : g.Edges()) flow[e] *= 2;
    // Below the top level the residual optimum is at most the edge count,
    // so clamping residual capacities there keeps the optimum intact while
    // the rebuilt instances stay small.
    bool top = k == plan.levels;
    while (true) {
      Graph r(g.n);
      std::vector<std::pair<Edge, bool>> from;  // (edge, backward)
      for (Edge e : g.Edges()) {
        CapacityT headroom = gk.capacity[e] - flow[e];
        if (headroom > 0) {
          r.AddEdge(g.tail[e], g.head[e],
                    top ? headroom : std::min(headroom, clamp));
          from.push_back({e, false});
        }
        if (flow[e] > 0) {
          r.AddEdge(g.head[e], g.tail[e],
                    top ? flow[e] : std::min(flow[e], clamp));
          from.push_back({e, true});
        }
      }
      if (!HasPath(r, s, t)) break;
      ApproxResult ar;
      try {
        ar = ApproxMaxflow(r, s, t, profile, rng);
      } catch (const CongestionOverflow&) {
        ar.value = 0;
      }
      ++rep.rounds;
      assert(rep.rounds < 100000);
      CapacityT gained = ar.value;
      if (gained > 0) {
        for (Edge re : r.Edges()) {
          CapacityT x = ar.flow.value[re];
          if (x == 0) continue;
          auto [e, back] = from[re];
          flow[e] += back ? -x : x;
        }
      } else {
        // Reached when the approximation overflowed its congestion target
        // or rounded down to nothing; one bottleneck augmentation keeps
        // the level moving regardless.
        std::vector<CapacityT> fr(r.m, 0);
        gained = WidestAugment(r, r.capacity, fr, s, t,
                               std::numeric_limits<CapacityT>::max() / 4);
        assert(gained > 0);
        for (Edge re : r.Edges()) {
          CapacityT x = fr[re];
          if (x == 0) continue;
          auto [e, back] = from[re];
          flow[e] += back ? -x : x;
        }
        ++rep.fallback_steps;
      }
      rep.routed.push_back(gained);
      if (g_assert_level != AssertLevel::kOff) {
        for (Edge e : g.Edges())
          if (flow[e] < 0 || flow[e] > gk.capacity[e])
            throw std::logic_error("scaled flow leaves its capacity range");
      }
    }
  }

  rep.flow = ScaledFlow(1, g.m);
  rep.flow.value = flow;
  rep.value = FlowOutDegree(g, flow)[s];

  // Certify optimality: t must be unreachable in the residual graph and
  // the reachable side must form a cut of exactly the flow value.
  std::vector<bool> reach(g.n, false);
  std::queue<Vertex> queue;
  reach[s] = true;
  queue.push(s);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop();
    for (Edge e : g.out_edges[u])
      if (g.capacity[e] - flow[e] > 0 && !reach[g.head[e]]) {
        reach[g.head[e]] = true;
        queue.push(g.head[e]);
      }
    for (Edge e : g.in_edges[u])
      if (flow[e] > 0 && !reach[g.tail[e]]) {
        reach[g.tail[e]] = true;
        queue.push(g.tail[e]);
      }
  }
  rep.cut_side = reach;
  for (Edge e : g.Edges())
    if (reach[g.tail[e]] && !reach[g.head[e]])
      rep.cut_capacity += g.capacity[e];
  if (g_assert_level != AssertLevel::kOff) {
    if (reach[t]) throw std::logic_error("augmenting path survived the solve");
    if (rep.cut_capacity != rep.value)
      throw std::logic_error("cut capacity does not match the flow value");
  }
  if (g_assert_level == AssertLevel::kFull) {
    Demand di(g.n);
    di.source[s] = rep.value;
    di.sink[t] = rep.value;
    auto bad = CheckFeasible(g, g.capacity, di, flow, 1, 1);
    if (bad) throw std::logic_error("final flow infeasible: " + *bad);
  }

  rep.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

CapacityT OracleMaxflow(const Graph& g, Vertex s, Vertex t) {
  CheckEndpoints(g, s, t);
  struct Arc {
    Vertex to;
    CapacityT cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj(g.n);
  for (Edge e : g.Edges()) {
    Vertex u = g.tail[e], v = g.head[e];
    if (u == v || g.capacity[e] <= 0) continue;
    adj[u].push_back({v, g.capacity[e], (int)adj[v].size()});
    adj[v].push_back({u, 0, (int)adj[u].size() - 1});
  }
  std::vector<int> level(g.n), iter(g.n);
  auto bfs = [&]() {
    std::fill(level.begin(), level.end(), -1);
    std::queue<Vertex> queue;
    level[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop();
      for (const Arc& a : adj[u])
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[u] + 1;
          queue.push(a.to);
        }
    }
    return level[t] >= 0;
  };
  auto dfs = [&](auto&& self, Vertex u, CapacityT lim) -> CapacityT {
    if (u == t) return lim;
    for (int& i = iter[u]; i < (int)adj[u].size(); ++i) {
      Arc& a = adj[u][i];
      if (a.cap > 0 && level[a.to] == level[u] + 1) {
        CapacityT got = self(self, a.to, std::min(lim, a.cap));
        if (got > 0) {
          a.cap -= got;
          adj[a.to][a.rev].cap += got;
          return got;
        }
      }
    }
    return 0;
  };
  CapacityT total = 0;
  while (bfs()) {
    std::fill(iter.begin(), iter.end(), 0);
    CapacityT got;
    while ((got = dfs(dfs, s, std::numeric_limits<CapacityT>::max() / 4)) > 0)
      total += got;
  }
  return total;
}

}  // namespace hierflow
