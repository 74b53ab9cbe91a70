#include "hierflow/push_relabel.h"

#include <algorithm>
#include <queue>
#include <tuple>
#include <vector>

namespace hierflow {

namespace {

constexpr CapacityT kUnreached = std::numeric_limits<CapacityT>::max() / 2;

struct Arc {
  Edge e;
  bool forward;
};

}  // namespace

PRResult WeightedPushRelabel(const Graph& g, const std::vector<CapacityT>& cap,
                             const Demand& d, const std::vector<CapacityT>& w,
                             CapacityT h) {
  assert(static_cast<int>(cap.size()) == g.m);
  assert(static_cast<int>(w.size()) == g.m);
  const CapacityT limit = 3 * h;

  std::vector<CapacityT> c(cap);
  {
    __int128 finite = 0;
    for (Edge e : g.Edges())
      if (c[e] < kInfCapacity) finite += c[e];
    finite += d.TotalSource();
    CapacityT clamp = finite > static_cast<__int128>(kInfCapacity)
                          ? kInfCapacity
                          : static_cast<CapacityT>(finite);
    for (Edge e : g.Edges()) c[e] = std::min(c[e], clamp);
  }

  PRResult res;
  res.flow.assign(g.m, 0);
  Demand ex = ResidualDemand(g, d, res.flow);
  // Supply and absorption meeting on one vertex cancel without any flow;
  // |f| counts that cancelled amount as routed.
  res.value = d.TotalSource() - ex.TotalSource();
  auto& src = ex.source;
  auto& snk = ex.sink;

  std::vector<CapacityT> dist(g.n);
  std::vector<Arc> parent(g.n);
  std::vector<char> dead(g.n), instack(g.n);
  std::vector<int> cur(g.n);
  std::vector<std::pair<Vertex, Arc>> path;

  auto residual = [&](const Arc& a) {
    return a.forward ? c[a.e] - res.flow[a.e] : res.flow[a.e];
  };
  auto arc_head = [&](const Arc& a) {
    return a.forward ? g.head[a.e] : g.tail[a.e];
  };

  while (true) {
    // Dijkstra from every unsaturated source over the residual graph.
    dist.assign(g.n, kUnreached);
    using Item = std::pair<CapacityT, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (Vertex v : g.Vertices())
      if (src[v] > 0) {
        dist[v] = 0;
        heap.emplace(0, v);
      }
    while (!heap.empty()) {
      auto [dv, v] = heap.top();
      heap.pop();
      if (dv != dist[v] || dv > limit) continue;
      auto relax = [&](Vertex to, CapacityT weight, const Arc& a) {
        ++res.edge_scans;
        CapacityT nd = dv + weight;
        if (nd < dist[to] && nd <= limit) {
          dist[to] = nd;
          parent[to] = a;
          heap.emplace(nd, to);
        }
      };
      for (Edge e : g.out_edges[v])
        if (res.flow[e] < c[e] && g.head[e] != v) relax(g.head[e], w[e], {e, true});
      for (Edge e : g.in_edges[v])
        if (res.flow[e] > 0 && g.tail[e] != v) relax(g.tail[e], w[e], {e, false});
    }

    bool sink_in_range = false;
    for (Vertex v : g.Vertices())
      if (snk[v] > 0 && dist[v] <= limit) sink_in_range = true;
    ++res.phases;
    if (!sink_in_range) {
      for (Vertex v : g.Vertices())
        res.label.push_back(std::min(dist[v] == kUnreached ? 9 * h : dist[v], 9 * h));
      res.residual = ex;
      return res;
    }

    // Blocking flow on the tight arcs of the distance labeling.
    dead.assign(g.n, 0);
    instack.assign(g.n, 0);
    cur.assign(g.n, 0);
    CapacityT phase_value = 0;

    auto tight = [&](Vertex v, const Arc& a, Vertex to) {
      return dist[to] != kUnreached && dist[v] + w[a.e] == dist[to] &&
             residual(a) > 0 && !dead[to] && !instack[to];
    };

    for (Vertex s : g.Vertices()) {
      if (src[s] <= 0 || dist[s] != 0 || dead[s]) continue;
      path.clear();
      instack[s] = 1;
      Vertex v = s;
      while (src[s] > 0) {
        if (snk[v] > 0) {
          CapacityT delta = std::min(src[s], snk[v]);
          for (auto& [pv, pa] : path) delta = std::min(delta, residual(pa));
          assert(delta > 0);
          for (auto& [pv, pa] : path)
            res.flow[pa.e] += pa.forward ? delta : -delta;
          src[s] -= delta;
          snk[v] -= delta;
          phase_value += delta;
          // Retreat to the deepest point whose outgoing arc saturated.
          size_t keep = path.size();
          for (size_t i = 0; i < path.size(); ++i)
            if (residual(path[i].second) == 0) {
              keep = i;
              break;
            }
          while (path.size() > keep) {
            instack[arc_head(path.back().second)] = 0;
            path.pop_back();
          }
          v = path.empty() ? s : arc_head(path.back().second);
          continue;
        }
        int degree = static_cast<int>(g.out_edges[v].size() + g.in_edges[v].size());
        bool advanced = false;
        while (cur[v] < degree) {
          int i = cur[v];
          Arc a = i < static_cast<int>(g.out_edges[v].size())
                      ? Arc{g.out_edges[v][i], true}
                      : Arc{g.in_edges[v][i - static_cast<int>(g.out_edges[v].size())],
                            false};
          Vertex to = arc_head(a);
          ++res.edge_scans;
          if (to != v && tight(v, a, to)) {
            path.emplace_back(v, a);
            instack[to] = 1;
            v = to;
            advanced = true;
            break;
          }
          ++cur[v];
        }
        if (advanced) continue;
        dead[v] = 1;
        instack[v] = 0;
        if (path.empty()) break;
        v = path.back().first;
        path.pop_back();
        ++cur[v];
      }
      for (auto& [pv, pa] : path) instack[arc_head(pa)] = 0;
      instack[s] = 0;
    }

    if (phase_value == 0) {
      // The in-stack guard can hide every tight path in rare layouts with
      // zero-weight arcs; fall back to one shortest augmenting path so the
      // phase always makes progress.
      Vertex best = -1;
      for (Vertex v : g.Vertices())
        if (snk[v] > 0 && dist[v] <= limit &&
            (best == -1 || dist[v] < dist[best] || (dist[v] == dist[best] && v < best)))
          best = v;
      assert(best != -1);
      std::vector<Arc> chain;
      Vertex v = best;
      while (dist[v] != 0) {
        chain.push_back(parent[v]);
        v = parent[v].forward ? g.tail[parent[v].e] : g.head[parent[v].e];
      }
      CapacityT delta = std::min(src[v], snk[best]);
      for (const Arc& a : chain) delta = std::min(delta, residual(a));
      assert(delta > 0);
      for (const Arc& a : chain) res.flow[a.e] += a.forward ? delta : -delta;
      src[v] -= delta;
      snk[best] -= delta;
      phase_value = delta;
    }
    res.value += phase_value;
  }
}

}  // namespace hierflow
