#pragma once

#include <algorithm>
#include <queue>
#include <random>
#include <vector>

#include "hierflow/flow.h"
#include "hierflow/graph.h"

namespace hftest {

using hierflow::CapacityT;
using hierflow::Demand;
using hierflow::Edge;
using hierflow::Graph;
using hierflow::Vertex;

using TRng = std::mt19937_64;

inline Graph RandomGraph(TRng& rng, int n, int m, CapacityT maxcap,
                         bool allow_self = false) {
  Graph g(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<CapacityT> cap(1, maxcap);
  for (int i = 0; i < m; ++i) {
    Vertex u = pick(rng), v = pick(rng);
    if (!allow_self && n > 1) {
      while (v == u) v = pick(rng);
    }
    g.AddEdge(u, v, cap(rng));
  }
  return g;
}

// Plain Edmonds-Karp on an adjacency matrix, kept independent of every
// library solver so the differential tests have a second opinion. Mutates
// cap into the residual matrix.
inline CapacityT MatrixMaxflow(std::vector<std::vector<CapacityT>>& cap,
                               Vertex s, Vertex t) {
  int n = static_cast<int>(cap.size());
  CapacityT total = 0;
  while (true) {
    std::vector<Vertex> prev(n, -1);
    std::queue<Vertex> q;
    prev[s] = s;
    q.push(s);
    while (!q.empty() && prev[t] == -1) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v = 0; v < n; ++v)
        if (prev[v] == -1 && cap[u][v] > 0) {
          prev[v] = u;
          q.push(v);
        }
    }
    if (prev[t] == -1) return total;
    CapacityT bn = std::numeric_limits<CapacityT>::max();
    for (Vertex v = t; v != s; v = prev[v]) bn = std::min(bn, cap[prev[v]][v]);
    for (Vertex v = t; v != s; v = prev[v]) {
      cap[prev[v]][v] -= bn;
      cap[v][prev[v]] += bn;
    }
    total += bn;
  }
}

inline CapacityT RefMaxflow(const Graph& g, Vertex s, Vertex t) {
  std::vector<std::vector<CapacityT>> cap(g.n,
                                          std::vector<CapacityT>(g.n, 0));
  for (Edge e : g.Edges())
    if (g.tail[e] != g.head[e]) cap[g.tail[e]][g.head[e]] += g.capacity[e];
  return MatrixMaxflow(cap, s, t);
}

// Largest amount of d routable inside cap, computed through a super source
// and super sink. Matches the library convention that a vertex may absorb
// its own supply up to min(source, sink) without moving any flow.
inline CapacityT RefDemandMaxflow(const Graph& g,
                                  const std::vector<CapacityT>& cap_in,
                                  const Demand& d) {
  int n = g.n;
  std::vector<std::vector<CapacityT>> cap(n + 2,
                                          std::vector<CapacityT>(n + 2, 0));
  for (Edge e : g.Edges())
    if (g.tail[e] != g.head[e]) cap[g.tail[e]][g.head[e]] += cap_in[e];
  for (Vertex v = 0; v < n; ++v) {
    cap[n][v] = d.source[v];
    cap[v][n + 1] = d.sink[v];
  }
  return MatrixMaxflow(cap, n, n + 1);
}

// Reachability closure by repeated relaxation, the slow way.
inline std::vector<std::vector<bool>> Reachable(const Graph& g) {
  std::vector<std::vector<bool>> r(g.n, std::vector<bool>(g.n, false));
  for (Vertex v : g.Vertices()) r[v][v] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Edge e : g.Edges())
      for (Vertex v : g.Vertices())
        if (r[v][g.tail[e]] && !r[v][g.head[e]]) {
          r[v][g.head[e]] = true;
          changed = true;
        }
  }
  return r;
}

// A nonnegative flow vector with arbitrary per-edge values; no conservation
// implied. Useful for exercising the path peel on messy inputs.
inline std::vector<CapacityT> RandomFlow(TRng& rng, const Graph& g,
                                         CapacityT maxf) {
  std::uniform_int_distribution<CapacityT> amt(0, maxf);
  std::vector<CapacityT> f(g.m);
  for (Edge e : g.Edges()) f[e] = amt(rng);
  return f;
}

}  // namespace hftest
