#include "hierflow/decompose.h"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hierflow/link_cut_tree.h"

namespace hierflow {

namespace {

struct PeelState {
  const Graph& g;
  std::vector<CapacityT> rem;    // flow not yet moved into the tree
  std::vector<CapacityT> kept;   // per edge, flow of paths under the threshold
  std::vector<CapacityT> supply, absorb;
  std::vector<int> ptr;
  LinkCutTree lct;
};

void FlushZeroEdges(PeelState& st, Vertex from) {
  while (st.lct.Linked(from)) {
    auto [mv, y] = st.lct.PathMinArg(from);
    if (mv > 0) break;
    auto vals = st.lct.CutAbove(y);
    st.kept[vals.id] += vals.kept;
  }
}

// Links the next usable out-edge of the root r, cancelling any cycle that
// the link would close. A cancellation may disconnect the tree under the
// caller's walk, so it counts as progress of its own: the caller re-reads
// the root afterwards. Returns false only when r has no outgoing flow left.
bool Advance(PeelState& st, Vertex r, const std::vector<CapacityT>& weight) {
  auto& p = st.ptr[r];
  while (p < static_cast<int>(st.g.out_edges[r].size())) {
    Edge e = st.g.out_edges[r][p];
    Vertex h = st.g.head[e];
    if (st.rem[e] == 0 || h == r) {
      ++p;
      continue;
    }
    if (st.lct.FindRoot(h) == r) {
      auto [mv, y] = st.lct.PathMinArg(h);
      (void)y;
      CapacityT lambda = std::min(st.rem[e], mv);
      st.lct.PathAdd(h, -lambda, 0);
      st.rem[e] -= lambda;
      FlushZeroEdges(st, h);
      if (st.rem[e] == 0) {
        ++p;
        return true;
      }
      assert(st.lct.FindRoot(h) != r);
    }
    st.lct.Link(r, h, st.rem[e], weight[e], e);
    st.rem[e] = 0;
    return true;
  }
  return false;
}

#ifndef NDEBUG
// Reconstructs the current tree path from s and checks it is simple. Done
// once per peel; paths are never materialized otherwise.
void CheckWitnessPath(const PeelState& st, Vertex s) {
  std::vector<char> seen(st.g.n, 0);
  Vertex v = s;
  seen[v] = 1;
  while (st.lct.Linked(v)) {
    v = st.g.head[st.lct.ParentEdgeId(v)];
    assert(!seen[v] && "decomposed path revisits a vertex");
    seen[v] = 1;
  }
}
#endif

// Shared peel. Emits every path term and accumulates, per edge, the flow of
// terms whose weight bound is at most the threshold.
std::vector<PathDecomposition::Term> Peel(const Graph& g,
                                          const std::vector<CapacityT>& flow,
                                          const std::vector<CapacityT>& weight,
                                          CapacityT threshold,
                                          std::vector<CapacityT>& kept_out) {
  PeelState st{g, flow, std::vector<CapacityT>(g.m, 0), {}, {}, {}, {}};
  auto net = FlowOutDegree(g, flow);
  st.supply.assign(g.n, 0);
  st.absorb.assign(g.n, 0);
  for (Vertex v : g.Vertices()) {
    st.supply[v] = std::max<CapacityT>(net[v], 0);
    st.absorb[v] = std::max<CapacityT>(-net[v], 0);
  }
  st.ptr.assign(g.n, 0);
  st.lct.Reset(g.n);

  std::vector<bool> in_support(g.m);
  for (Edge e : g.Edges()) in_support[e] = flow[e] > 0;
  auto comp = g.SCC(in_support);
  std::vector<Vertex> sources;
  for (Vertex v : g.Vertices())
    if (st.supply[v] > 0) sources.push_back(v);
  std::sort(sources.begin(), sources.end(),
            [&](Vertex a, Vertex b) { return comp[a] != comp[b] ? comp[a] < comp[b] : a < b; });

  std::vector<PathDecomposition::Term> terms;
  for (Vertex s : sources) {
    CapacityT a = st.supply[s];
    while (a > 0) {
      Vertex r = st.lct.FindRoot(s);
      if (r != s && st.absorb[r] > 0) {
#ifndef NDEBUG
        if (terms.empty()) CheckWitnessPath(st, s);
#endif
        auto [pmin, y] = st.lct.PathMinArg(s);
        (void)y;
        CapacityT lambda = std::min({a, st.absorb[r], pmin});
        CapacityT wsum = st.lct.PathWeightSum(s);
        st.lct.PathAdd(s, -lambda, wsum <= threshold ? lambda : 0);
        terms.push_back({lambda, s, r, wsum});
        a -= lambda;
        st.absorb[r] -= lambda;
        FlushZeroEdges(st, s);
      } else {
        bool extended = Advance(st, r, weight);
        assert(extended && "flow conservation violated during peel");
        if (!extended) break;
      }
    }
  }
  // Whatever still sits in trees ships nothing, but may have carried short
  // paths earlier; flush the kept totals before discarding it.
  for (Vertex v : g.Vertices()) {
    if (!st.lct.Linked(v)) continue;
    auto vals = st.lct.CutAbove(v);
    st.kept[vals.id] += vals.kept;
    st.rem[vals.id] = vals.flow;
  }
  kept_out = std::move(st.kept);
  return terms;
}

}  // namespace

PathDecomposition DecomposePaths(const Graph& g,
                                 const std::vector<CapacityT>& flow,
                                 const std::vector<CapacityT>& weight) {
  PathDecomposition out;
  std::vector<CapacityT> path_flow;
  out.terms = Peel(g, flow, weight, std::numeric_limits<CapacityT>::max(),
                   path_flow);
  out.circulation.resize(g.m);
  for (Edge e : g.Edges()) out.circulation[e] = flow[e] - path_flow[e];
  return out;
}

FilteredFlow FilterShortPaths(const Graph& g,
                              const std::vector<CapacityT>& flow,
                              const std::vector<CapacityT>& weight,
                              CapacityT threshold, const Demand& d) {
  FilteredFlow out;
  auto terms = Peel(g, flow, weight, threshold, out.flow);
  out.residual = d;
  for (const auto& t : terms) {
    if (t.weight > threshold) continue;
    out.kept.push_back(t);
    out.residual.source[t.src] -= t.amount;
    out.residual.sink[t.dst] -= t.amount;
    assert(out.residual.source[t.src] >= 0 && out.residual.sink[t.dst] >= 0);
  }
  return out;
}

std::vector<CapacityT> RoundFlow(const Graph& g,
                                 const std::vector<CapacityT>& flow,
                                 const Demand& d, CapacityT z) {
  assert(z > 0);
  for (Vertex v : g.Vertices()) {
    if (d.source[v] % z != 0 || d.sink[v] % z != 0)
      throw std::invalid_argument("demand not divisible by scale");
  }

  // Extend to a circulation: a super source S feeds every net producer, a
  // super sink T drains every net consumer, and one return edge T->S closes
  // the loop. Cancelling cycles of fractional edges then moves every edge,
  // auxiliary ones included, to a neighbouring multiple of z.
  Vertex S = g.n, T = g.n + 1;
  struct ExtEdge {
    Vertex tail, head;
    CapacityT x;
  };
  std::vector<ExtEdge> ext;
  ext.reserve(g.m + 2 * g.n + 1);
  for (Edge e : g.Edges()) ext.push_back({g.tail[e], g.head[e], flow[e]});
  auto net = FlowOutDegree(g, flow);
  CapacityT total = 0;
  for (Vertex v : g.Vertices()) {
    if (net[v] > 0) {
      ext.push_back({S, v, net[v]});
      total += net[v];
    } else if (net[v] < 0) {
      ext.push_back({v, T, -net[v]});
    }
  }
  ext.push_back({T, S, total});

  std::vector<std::vector<int>> adj(g.n + 2);
  auto fractional = [&](int i) { return ext[i].x % z != 0; };
  for (int i = 0; i < static_cast<int>(ext.size()); ++i) {
    if (!fractional(i)) continue;
    adj[ext[i].tail].push_back(i);
    adj[ext[i].head].push_back(i);
  }

  // Walk the fractional subgraph; every vertex it touches has two or more
  // incident fractional edges, so the walk always extends until it closes a
  // cycle. Push along the cycle until some edge hits a multiple of z.
  std::vector<char> on_walk(ext.size(), 0);
  std::vector<int> walk_pos(g.n + 2, -1);
  std::vector<std::pair<int, int>> walk;  // (edge, direction)
  auto next_edge = [&](Vertex v) {
    auto& list = adj[v];
    for (size_t i = 0; i < list.size();) {
      int e = list[i];
      if (!fractional(e)) {
        list[i] = list.back();
        list.pop_back();
        continue;
      }
      if (!on_walk[e]) return e;
      ++i;
    }
    return -1;
  };
  for (int start = 0; start < static_cast<int>(ext.size()); ++start) {
    while (fractional(start)) {
      walk.clear();
      Vertex v = ext[start].tail;
      walk_pos[v] = 0;
      while (true) {
        int e = next_edge(v);
        assert(e != -1 && "fractional subgraph has a degree-one vertex");
        int dir = ext[e].tail == v ? +1 : -1;
        Vertex u = dir == 1 ? ext[e].head : ext[e].tail;
        on_walk[e] = 1;
        walk.push_back({e, dir});
        if (walk_pos[u] != -1) {
          // Cancel the cycle formed by the walk suffix starting at u.
          int first = walk_pos[u];
          CapacityT delta = std::numeric_limits<CapacityT>::max();
          for (int i = first; i < static_cast<int>(walk.size()); ++i) {
            auto [ce, cd] = walk[i];
            CapacityT res = ext[ce].x % z;
            delta = std::min(delta, cd == 1 ? z - res : res);
          }
          for (int i = first; i < static_cast<int>(walk.size()); ++i) {
            auto [ce, cd] = walk[i];
            ext[ce].x += cd * delta;
            on_walk[ce] = 0;
          }
          for (int i = first; i < static_cast<int>(walk.size()); ++i) {
            auto [ce, cd] = walk[i];
            walk_pos[cd == 1 ? ext[ce].head : ext[ce].tail] = -1;
          }
          walk_pos[u] = -1;
          walk.resize(first);
          // Resume from where the cycle closed, or restart if nothing is
          // left of the walk.
          if (walk.empty()) break;
          v = u;
          walk_pos[v] = static_cast<int>(walk.size());
        } else {
          v = u;
          walk_pos[v] = static_cast<int>(walk.size());
        }
      }
    }
  }

  std::vector<CapacityT> out(g.m);
  for (Edge e : g.Edges()) out[e] = ext[e].x / z;
  return out;
}

}  // namespace hierflow
