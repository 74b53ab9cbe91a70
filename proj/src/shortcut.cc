#include "hierflow/shortcut.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hierflow {

namespace {

constexpr CapacityT kCapacityLimit = 1LL << 62;

}  // namespace

ShortcutGraph BuildShortcut(const Graph& base, const Hierarchy& h, CapacityT q,
                            bool skip_top) {
  assert(q >= 1);
  ShortcutGraph sg;
  sg.base = base;
  sg.h = h;
  sg.q = q;
  sg.skip_top = skip_top;
  sg.n_base = base.n;
  sg.m_base = base.m;

  // Group the level-i edges lying inside one level-i component. Edges whose
  // endpoints fall in different components at their own level run forward
  // in any respecting order and need no star.
  std::map<std::pair<int, int>, std::vector<Edge>> grouped;
  for (Edge e : base.Edges()) {
    int i = h.level[e];
    if (skip_top && i == h.levels) continue;
    int c = h.comp[i][base.tail[e]];
    if (h.comp[i][base.head[e]] != c) continue;
    grouped[{i, c}].push_back(e);
  }

  int n_total = base.n + static_cast<int>(grouped.size());
  sg.g = Graph(n_total);
  for (Edge e : base.Edges()) {
    assert(base.capacity[e] <= kCapacityLimit / q);
    sg.g.AddEdge(base.tail[e], base.head[e], base.capacity[e] * q);
  }
  sg.star_of_edge.assign(base.m, -1);

  sg.star_at.resize(h.levels + 1);
  for (int i = 0; i <= h.levels; ++i)
    sg.star_at[i].assign(h.NumComponents(i), -1);

  for (auto& [key, edges] : grouped) {
    Star star;
    star.level = key.first;
    star.comp = key.second;
    star.root = sg.n_base + static_cast<int>(sg.stars.size());
    std::map<Vertex, std::vector<Edge>> by_tail;
    for (Edge e : edges) by_tail[base.tail[e]].push_back(e);
    for (auto& [u, list] : by_tail) {
      star.leaves.push_back(u);
      star.leaf_edges.push_back(std::move(list));
    }
    for (size_t k = 0; k < star.leaves.size(); ++k) {
      CapacityT share = 0;
      for (Edge e : star.leaf_edges[k]) {
        assert(share <= kCapacityLimit - base.capacity[e]);
        share += base.capacity[e];
      }
      Edge fl = sg.g.AddEdge(star.leaves[k], star.root, share);
      Edge tl = sg.g.AddEdge(star.root, star.leaves[k], share);
      star.from_leaf.push_back(fl);
      star.to_leaf.push_back(tl);
      sg.star_of_edge.push_back(static_cast<int>(sg.stars.size()));
      sg.star_of_edge.push_back(static_cast<int>(sg.stars.size()));
    }
    sg.star_at[star.level][star.comp] = static_cast<int>(sg.stars.size());
    sg.stars.push_back(std::move(star));
  }
  return sg;
}

ShortcutWeights ComputeWeights(const ShortcutGraph& sg,
                               const RespectingOrder& order) {
  ShortcutWeights out;
  out.w.resize(sg.g.m);
  for (Edge e : sg.g.Edges()) {
    if (sg.IsBaseEdge(e)) {
      Vertex u = sg.g.tail[e], v = sg.g.head[e];
      out.w[e] = u == v ? 1 : std::abs(order.rank[u] - order.rank[v]);
      out.inv_base += 1.0 / static_cast<double>(out.w[e]);
    } else {
      const Star& star = sg.stars[sg.star_of_edge[e]];
      out.w[e] =
          static_cast<CapacityT>(sg.h.members[star.level][star.comp].size());
      out.inv_star += 1.0 / static_cast<double>(out.w[e]);
    }
  }
  return out;
}

ShortcutSplit SplitShortcut(const ShortcutGraph& sg,
                            const std::vector<bool>& side) {
  assert(static_cast<int>(side.size()) == sg.n_base);
  int inside = static_cast<int>(std::count(side.begin(), side.end(), true));
  if (inside == 0 || inside == sg.n_base)
    throw std::invalid_argument("split side must be a proper vertex subset");

  ShortcutSplit out;
  std::vector<bool> flipped(side.size());
  for (size_t v = 0; v < side.size(); ++v) flipped[v] = !side[v];
  for (int p = 0; p < 2; ++p) {
    out.sub[p] = VertexSubgraph(sg.base, p == 0 ? side : flipped);
    const Subgraph& sub = out.sub[p];
    std::vector<int> level(sub.g.m);
    for (Edge e : sub.g.Edges()) level[e] = sg.h.level[sub.edge_map[e]];
    Hierarchy ph = BuildHierarchy(sub.g, std::move(level), sg.h.levels);
    out.piece[p] = BuildShortcut(sub.g, ph, sg.q, sg.skip_top);

    const ShortcutGraph& piece = out.piece[p];
    auto& map = out.to_parent[p];
    map.resize(piece.g.m);
    for (Edge e = 0; e < piece.m_base; ++e) map[e] = sub.edge_map[e];
    for (const Star& ps : piece.stars) {
      for (size_t k = 0; k < ps.leaves.size(); ++k) {
        Vertex u = sub.vertex_map[ps.leaves[k]];
        int parent_star = sg.star_at[ps.level][sg.h.comp[ps.level][u]];
        assert(parent_star != -1);
        const Star& target = sg.stars[parent_star];
        auto it = std::lower_bound(target.leaves.begin(), target.leaves.end(), u);
        assert(it != target.leaves.end() && *it == u);
        size_t pos = it - target.leaves.begin();
        map[ps.from_leaf[k]] = target.from_leaf[pos];
        map[ps.to_leaf[k]] = target.to_leaf[pos];
      }
    }
  }
  return out;
}

void AddPieceFlow(const std::vector<Edge>& to_parent,
                  const std::vector<CapacityT>& piece_flow,
                  std::vector<CapacityT>& parent_flow) {
  assert(piece_flow.size() == to_parent.size());
  for (size_t e = 0; e < piece_flow.size(); ++e)
    parent_flow[to_parent[e]] += piece_flow[e];
}

}  // namespace hierflow
