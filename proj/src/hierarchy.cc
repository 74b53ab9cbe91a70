#include "hierflow/hierarchy.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hierflow {

Hierarchy BuildHierarchy(const Graph& g, std::vector<int> level, int levels) {
  assert(static_cast<int>(level.size()) == g.m);
  assert(levels >= 1);
  for (Edge e : g.Edges()) {
    assert(1 <= level[e] && level[e] <= levels);
    (void)e;
  }

  Hierarchy h;
  h.levels = levels;
  h.level = std::move(level);
  h.comp.resize(levels + 1);
  h.members.resize(levels + 1);

  h.comp[0].resize(g.n);
  for (Vertex v : g.Vertices()) h.comp[0][v] = v;
  std::vector<bool> keep(g.m, false);
  for (int i = 1; i <= levels; ++i) {
    for (Edge e : g.Edges()) keep[e] = h.level[e] <= i;
    h.comp[i] = g.SCC(keep);
  }
  for (int i = 0; i <= levels; ++i) {
    int k = 0;
    for (Vertex v : g.Vertices()) k = std::max(k, h.comp[i][v] + 1);
    h.members[i].resize(k);
    for (Vertex v : g.Vertices()) h.members[i][h.comp[i][v]].push_back(v);
  }
  return h;
}

RespectingOrder ComputeRespectingOrder(const Graph& g, const Hierarchy& h) {
  // Laminarity: two vertices sharing a level-i component must share every
  // component above it. Adjacent levels suffice by transitivity.
  for (int i = 0; i < h.levels; ++i) {
    for (int c = 0; c < h.NumComponents(i); ++c) {
      const auto& mem = h.members[i][c];
      for (size_t j = 1; j < mem.size(); ++j) {
        if (h.comp[i + 1][mem[j]] != h.comp[i + 1][mem[0]])
          throw std::invalid_argument("hierarchy is not laminar");
      }
    }
  }

  RespectingOrder order;
  order.by_rank.resize(g.n);
  for (Vertex v : g.Vertices()) order.by_rank[v] = v;
  std::sort(order.by_rank.begin(), order.by_rank.end(),
            [&](Vertex a, Vertex b) {
              for (int i = h.levels; i >= 1; --i) {
                if (h.comp[i][a] != h.comp[i][b])
                  return h.comp[i][a] < h.comp[i][b];
              }
              return a < b;
            });
  order.rank.resize(g.n);
  for (int r = 0; r < g.n; ++r) order.rank[order.by_rank[r]] = r;
  return order;
}

}  // namespace hierflow
