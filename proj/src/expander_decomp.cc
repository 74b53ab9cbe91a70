#include "hierflow/expander_decomp.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "hierflow/push_relabel.h"
#include "hierflow/sparse_cut.h"

namespace hierflow {

namespace {

int CeilLog2(int n) {
  return std::bit_width(static_cast<unsigned>(std::max(2, n) - 1));
}

// A recursion node: a shortcut piece with the maps back to the outer graph.
struct Piece {
  ShortcutGraph sg;
  ShortcutWeights ws;
  RespectingOrder order;
  std::vector<Vertex> vmap;
  std::vector<Edge> emap;
  std::vector<bool> terminal;
  int depth = 0;
};

}  // namespace

Vertex DecompLeaf::LocalVertex(Vertex outer) const {
  auto it = std::lower_bound(vertex_map.begin(), vertex_map.end(), outer);
  if (it == vertex_map.end() || *it != outer) return -1;
  return static_cast<Vertex>(it - vertex_map.begin());
}

std::vector<bool> VertexWeightToEdges(const ShortcutGraph& sg,
                                      const std::vector<bool>& terminal,
                                      const Measure& dprime) {
  assert(static_cast<int>(terminal.size()) == sg.m_base);
  assert(static_cast<int>(dprime.value.size()) == sg.n_base);
  std::vector<CapacityT> vol = TerminalDegrees(sg, terminal);
  CapacityT scale = dprime.scale;
  __int128 vol_total = 0, d_total = 0;
  for (Vertex v = 0; v < sg.n_base; ++v) {
    assert(dprime.value[v] <= scale * vol[v]);
    vol_total += static_cast<__int128>(scale) * vol[v];
    d_total += dprime.value[v];
  }
  if (5 * d_total < 4 * vol_total)
    throw std::invalid_argument("surviving weight below 0.8 of the volume");

  std::vector<bool> heavy(sg.n_base);  // complement of the discard set U
  for (Vertex v = 0; v < sg.n_base; ++v)
    heavy[v] = 2 * dprime.value[v] > scale * vol[v];
  std::vector<bool> f_prime(sg.m_base, false);
  CapacityT c_f = 0, c_kept = 0;
  for (Edge e = 0; e < sg.m_base; ++e) {
    if (!terminal[e]) continue;
    c_f += sg.base.capacity[e];
    if (heavy[sg.g.tail[e]] && heavy[sg.g.head[e]]) {
      f_prime[e] = true;
      c_kept += sg.base.capacity[e];
    }
  }
  assert(5 * c_kept >= c_f);
#ifndef NDEBUG
  std::vector<CapacityT> vol_kept = TerminalDegrees(sg, f_prime);
  for (Vertex v = 0; v < sg.n_base; ++v)
    assert(scale * vol_kept[v] <= 2 * dprime.value[v]);
#endif
  return f_prime;
}

DecompResult WeakExpanderDecomposition(const ShortcutGraph& sg,
                                       const ShortcutWeights& ws,
                                       const RespectingOrder& order,
                                       const std::vector<bool>& terminal,
                                       CapacityT phi_inv, Rng& rng,
                                       const DecompOptions& opt) {
  assert(phi_inv > 0);
  assert(static_cast<int>(terminal.size()) == sg.m_base);
  DecompResult res;
  res.e_next.assign(sg.m_base, false);
  res.phi_inv = phi_inv;
  bool any_terminal = false;
  for (Edge e = 0; e < sg.m_base; ++e)
    if (terminal[e]) {
      any_terminal = true;
      res.top_capacity += sg.base.capacity[e];
    }
  if (!any_terminal) return res;

  int lg = CeilLog2(sg.n_base);
  const int depth_cap = opt.c_depth * lg * lg * lg;

  std::vector<Piece> todo;
  {
    Piece top;
    top.sg = sg;
    top.ws = ws;
    top.order = order;
    top.vmap.resize(sg.n_base);
    for (Vertex v = 0; v < sg.n_base; ++v) top.vmap[v] = v;
    top.emap.resize(sg.g.m);
    for (Edge e : sg.g.Edges()) top.emap[e] = e;
    top.terminal = terminal;
    todo.push_back(std::move(top));
  }

  while (!todo.empty()) {
    Piece p = std::move(todo.back());
    todo.pop_back();
    res.max_depth = std::max(res.max_depth, p.depth);
    assert(p.depth <= depth_cap && "decomposition recursion too deep");

    CapacityT delta_inv =
        opt.delta_auto ? DefaultDeltaInv(p.sg.n_base) : opt.delta_inv;
    int rounds =
        opt.game_rounds >= 0 ? opt.game_rounds : DefaultGameRounds(p.sg.n_base);
    Rng piece_rng = rng.Split();
    CMGResult game =
        NonStopCutMatching(p.sg, p.ws, p.order, p.terminal, phi_inv, delta_inv,
                           rounds, piece_rng,
                           CMGOptions{opt.keep_terms, 1, opt.trace});

    DecompStep step;
    step.depth = p.depth;
    step.n = p.sg.n_base;
    for (CapacityT deg : TerminalDegrees(p.sg, p.terminal)) step.vol += deg;

    if (game.cut) {
      step.split = true;
      const std::vector<bool>& side = game.cut->side;
      __int128 cap_fwd = 0, cap_bwd = 0;
      for (Edge e : p.sg.g.Edges()) {
        bool su = side[p.sg.g.tail[e]], sv = side[p.sg.g.head[e]];
        if (su == sv) continue;
        (su ? cap_fwd : cap_bwd) += p.sg.g.capacity[e];
      }
      bool keep_fwd = cap_fwd <= cap_bwd;
      step.cut_capacity = static_cast<CapacityT>(keep_fwd ? cap_fwd : cap_bwd);
      for (Edge e = 0; e < p.sg.m_base; ++e) {
        bool su = side[p.sg.g.tail[e]], sv = side[p.sg.g.head[e]];
        if (su != sv && su == keep_fwd) res.e_next[p.emap[e]] = true;
      }
      res.steps.push_back(step);

      std::vector<bool> side_base(side.begin(), side.begin() + p.sg.n_base);
      ShortcutSplit split = SplitShortcut(p.sg, side_base);
      for (int i = 0; i < 2; ++i) {
        Piece child;
        child.sg = std::move(split.piece[i]);
        child.order = ComputeRespectingOrder(child.sg.base, child.sg.h);
        child.ws = ComputeWeights(child.sg, child.order);
        child.vmap.resize(split.sub[i].vertex_map.size());
        for (size_t v = 0; v < child.vmap.size(); ++v)
          child.vmap[v] = p.vmap[split.sub[i].vertex_map[v]];
        child.emap.resize(child.sg.g.m);
        for (Edge e : child.sg.g.Edges())
          child.emap[e] = p.emap[split.to_parent[i][e]];
        child.terminal.resize(child.sg.m_base);
        for (Edge e = 0; e < child.sg.m_base; ++e)
          child.terminal[e] = p.terminal[split.sub[i].edge_map[e]];
        child.depth = p.depth + 1;
        todo.push_back(std::move(child));
      }
      continue;
    }

    bool has_terminal = false;
    for (Edge e = 0; e < p.sg.m_base; ++e) has_terminal |= p.terminal[e];
    DecompLeaf leaf;
    leaf.f_prime.assign(p.sg.m_base, false);
    if (has_terminal) {
      leaf.f_prime = VertexWeightToEdges(p.sg, p.terminal, game.witness.alive);
      for (Edge e = 0; e < p.sg.m_base; ++e)
        if (p.terminal[e] && !leaf.f_prime[e]) res.e_next[p.emap[e]] = true;
    }
    CapacityT threshold =
        game.witness.T > 0
            ? game.witness.threshold
            : 18 * SparseCutHeight(p.sg, p.terminal, 50 * phi_inv);
    assert(static_cast<__int128>(threshold) * (game.witness.T + 1) <
           kInfCapacity);
    leaf.h_leaf = threshold * (game.witness.T + 1);
    leaf.sg = std::move(p.sg);
    leaf.ws = std::move(p.ws);
    leaf.order = std::move(p.order);
    leaf.vertex_map = std::move(p.vmap);
    leaf.edge_map = std::move(p.emap);
    leaf.terminal = std::move(p.terminal);
    leaf.witness = std::move(game.witness);
    res.leaves.push_back(std::move(leaf));
    res.steps.push_back(step);
  }

  for (Edge e = 0; e < sg.m_base; ++e)
    if (res.e_next[e]) res.next_capacity += sg.base.capacity[e];
  return res;
}

LeafRouting RouteLeafDemand(const DecompLeaf& leaf, const Demand& d,
                            CapacityT kappa, CapacityT z, CapacityT phi_inv) {
  const Graph& g = leaf.sg.g;
  assert(static_cast<int>(d.source.size()) == g.n);
  assert(kappa > 0 && z > 0 && phi_inv > 0);
  assert(z % leaf.sg.q == 0);

  std::vector<CapacityT> vol = TerminalDegrees(leaf.sg, leaf.f_prime);
  for (Vertex v = 0; v < g.n; ++v) {
    __int128 limit =
        v < leaf.sg.n_base ? static_cast<__int128>(kappa) * vol[v] : 0;
    if (d.source[v] > limit || d.sink[v] > limit)
      throw std::invalid_argument("demand exceeds the certified volume");
  }

  LeafRouting out;
  out.flow.assign(g.m, 0);
  Demand rem = d;
  CapacityT total = rem.TotalSource();
  out.phi_inv = phi_inv;
  std::vector<CapacityT> caps(g.m);
  while (total > 0) {
    assert(++out.rounds <= 256 && "leaf routing did not converge");
    for (Edge e : g.Edges()) {
      __int128 share =
          static_cast<__int128>(kappa) * out.phi_inv * g.capacity[e];
      __int128 room = (share + leaf.sg.q - 1) / leaf.sg.q - out.flow[e];
      caps[e] = static_cast<CapacityT>(std::min<__int128>(room, total));
    }
    PRResult pr = WeightedPushRelabel(g, caps, rem, leaf.ws.w, leaf.h_leaf);
    for (Edge e : g.Edges()) out.flow[e] += pr.flow[e];
    rem = std::move(pr.residual);
    total = rem.TotalSource();
    if (total > 0 && 5 * pr.value < total) {
      assert(out.phi_inv < (phi_inv << 24) && "leaf routing budget runaway");
      out.phi_inv *= 2;
    }
  }
  return out;
}

}  // namespace hierflow
