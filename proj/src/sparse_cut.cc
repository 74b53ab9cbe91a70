#include "hierflow/sparse_cut.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hierflow/push_relabel.h"

namespace hierflow {

namespace {

constexpr CapacityT kDistInf = std::numeric_limits<CapacityT>::max() / 2;

// Shortest residual distances from the unsaturated sources under the layer
// weights: a forward copy of a non-terminal base edge that points forward in
// the respecting order costs nothing, every other residual arc costs the
// weight of its edge.
std::vector<CapacityT> LayerDistances(const ShortcutGraph& sg,
                                      const ShortcutWeights& ws,
                                      const RespectingOrder& order,
                                      const std::vector<bool>& terminal,
                                      const std::vector<CapacityT>& kcap,
                                      const std::vector<CapacityT>& flow,
                                      const Demand& residual) {
  const Graph& g = sg.g;
  std::vector<CapacityT> dist(g.n, kDistInf);
  using Item = std::pair<CapacityT, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (Vertex v : g.Vertices())
    if (residual.source[v] > 0) {
      dist[v] = 0;
      heap.emplace(0, v);
    }
  while (!heap.empty()) {
    auto [dv, v] = heap.top();
    heap.pop();
    if (dv != dist[v]) continue;
    auto relax = [&](Vertex to, CapacityT weight) {
      if (dv + weight < dist[to]) {
        dist[to] = dv + weight;
        heap.emplace(dist[to], to);
      }
    };
    for (Edge e : g.out_edges[v]) {
      if (g.head[e] == v || flow[e] >= kcap[e]) continue;
      bool free = sg.IsBaseEdge(e) && !terminal[e] &&
                  order.rank[g.tail[e]] < order.rank[g.head[e]];
      relax(g.head[e], free ? 0 : ws.w[e]);
    }
    for (Edge e : g.in_edges[v]) {
      if (g.tail[e] == v || flow[e] <= 0) continue;
      relax(g.tail[e], ws.w[e]);
    }
  }
  return dist;
}

}  // namespace

CapacityT SparseCutHeight(const ShortcutGraph& sg,
                          const std::vector<bool>& terminal, CapacityT kappa) {
  assert(kappa > 0);
  assert(static_cast<int>(terminal.size()) == sg.m_base);
  CapacityT termcap = 0;
  for (Edge e = 0; e < sg.m_base; ++e)
    if (terminal[e]) termcap += sg.base.capacity[e];
  int logm = std::bit_width(static_cast<unsigned long long>(termcap));
  __int128 h = static_cast<__int128>(sg.n_base) *
               (6 * static_cast<__int128>(sg.h.levels) * sg.q +
                100 * static_cast<__int128>(kappa) * logm);
  assert(h > 0 && h < (static_cast<__int128>(1) << 60));
  return static_cast<CapacityT>(h);
}

std::vector<CapacityT> TerminalDegrees(const ShortcutGraph& sg,
                                       const std::vector<bool>& terminal) {
  assert(static_cast<int>(terminal.size()) == sg.m_base);
  std::vector<CapacityT> deg(sg.g.n, 0);
  for (Edge e = 0; e < sg.m_base; ++e) {
    if (!terminal[e]) continue;
    deg[sg.base.tail[e]] += sg.base.capacity[e];
    if (sg.base.head[e] != sg.base.tail[e])
      deg[sg.base.head[e]] += sg.base.capacity[e];
  }
  return deg;
}

SparseCutOutput SparseCut(const ShortcutGraph& sg, const ShortcutWeights& ws,
                          const RespectingOrder& order,
                          const std::vector<bool>& terminal, const Demand& d,
                          CapacityT kappa, CapacityT h_override) {
  const Graph& g = sg.g;
  if (kappa <= 0) throw std::invalid_argument("kappa must be positive");
  if (d.TotalSource() > d.TotalSink())
    throw std::invalid_argument("demand is not a diffusion instance");
  assert(static_cast<int>(d.source.size()) == g.n);
  assert(static_cast<int>(ws.w.size()) == g.m);
#ifndef NDEBUG
  for (Vertex v = sg.n_base; v < g.n; ++v)
    assert(d.source[v] == 0 && d.sink[v] == 0);
#endif

  SparseCutOutput out;
  out.params.kappa = kappa;
  out.params.q = sg.q;
  out.params.levels = sg.h.levels;
  for (Edge e = 0; e < sg.m_base; ++e)
    if (terminal[e]) out.params.terminal_capacity += sg.base.capacity[e];
  const CapacityT h =
      h_override > 0 ? h_override : SparseCutHeight(sg, terminal, kappa);
  out.params.h = h;

  std::vector<CapacityT> kcap(g.m);
  for (Edge e : g.Edges()) {
    assert(g.capacity[e] <= std::numeric_limits<CapacityT>::max() / kappa);
    kcap[e] = kappa * g.capacity[e];
  }

  PRResult pr = WeightedPushRelabel(g, kcap, d, ws.w, h);
  out.flow.scale = sg.q;
  out.flow.value = std::move(pr.flow);
  out.residual = std::move(pr.residual);
  out.value = FlowValue(g, d, out.flow.value);
  if (out.value == d.TotalSource()) return out;

  const std::vector<CapacityT>& f = out.flow.value;
  std::vector<CapacityT> dist =
      LayerDistances(sg, ws, order, terminal, kcap, f, out.residual);

  std::vector<CapacityT> volq = TerminalDegrees(sg, terminal);
  __int128 vol_total = 0;
  for (Vertex v : g.Vertices()) {
    assert(volq[v] <= std::numeric_limits<CapacityT>::max() / sg.q);
    volq[v] *= sg.q;
    vol_total += volq[v];
  }

  std::vector<std::pair<CapacityT, Vertex>> by_dist;
  for (Vertex v : g.Vertices())
    if (dist[v] < h) by_dist.emplace_back(dist[v], v);
  std::sort(by_dist.begin(), by_dist.end());
  assert(!by_dist.empty() && by_dist.front().first == 0);

  // Sweep the layers in distance order, one group per distinct distance.
  // Within a group the cut is constant, so each group is scored once and
  // its width in layers is credited in one step.
  std::vector<char> in_s(g.n, 0);
  __int128 cross_fwd = 0, cross_fwd_term = 0, cross_bwd = 0;
  __int128 cap_cut = 0, vol_s = 0;
  auto add_vertex = [&](Vertex v) {
    for (Edge e : g.out_edges[v]) {
      Vertex u = g.head[e];
      if (u == v) continue;
      if (in_s[u]) {
        cross_bwd -= f[e];
      } else {
        cross_fwd += kcap[e] - f[e];
        cap_cut += g.capacity[e];
        if (sg.IsBaseEdge(e) && terminal[e]) cross_fwd_term += kcap[e] - f[e];
      }
    }
    for (Edge e : g.in_edges[v]) {
      Vertex u = g.tail[e];
      if (u == v) continue;
      if (in_s[u]) {
        cross_fwd -= kcap[e] - f[e];
        cap_cut -= g.capacity[e];
        if (sg.IsBaseEdge(e) && terminal[e]) cross_fwd_term -= kcap[e] - f[e];
      } else {
        cross_bwd += f[e];
      }
    }
    vol_s += volq[v];
    in_s[v] = 1;
  };

  bool have_best = false;
  CapacityT best_d = 0;
  __int128 best_obj = 0, best_cross = 0, best_cap = 0, best_minvol = 0;
  __int128 best_vol_s = 0;
  size_t i = 0;
  while (i < by_dist.size()) {
    CapacityT dcur = by_dist[i].first;
    while (i < by_dist.size() && by_dist[i].first == dcur)
      add_vertex(by_dist[i++].second);
    CapacityT dnext = i < by_dist.size() ? by_dist[i].first : h;
    __int128 cross = cross_fwd + cross_bwd;
    __int128 minvol = std::min(vol_s, vol_total - vol_s);
    __int128 obj = cross - minvol;
    if (!have_best || obj < best_obj) {
      have_best = true;
      best_obj = obj;
      best_d = dcur;
      best_cross = cross;
      best_cap = cap_cut;
      best_minvol = minvol;
      best_vol_s = vol_s;
    }
    if (cross - cross_fwd_term <= 40 * static_cast<__int128>(out.value))
      out.good_layers += dnext - dcur;
  }
  assert(have_best);

  CutResult cut;
  cut.side.assign(g.n, false);
  for (Vertex v : g.Vertices()) cut.side[v] = dist[v] <= best_d;
  cut.capacity = static_cast<CapacityT>(best_cap);
  cut.vol_s = static_cast<CapacityT>(best_vol_s);
  cut.vol_sbar = static_cast<CapacityT>(vol_total - best_vol_s);

#ifndef NDEBUG
  for (Vertex v : g.Vertices()) {
    if (out.residual.source[v] > 0) assert(cut.side[v]);
    if (out.residual.sink[v] > 0) assert(!cut.side[v]);
  }
  if (h_override <= 0) {
    assert(best_cross <= 40 * static_cast<__int128>(out.value) + best_minvol);
    assert(static_cast<__int128>(kappa) * best_cap <=
           41 * static_cast<__int128>(out.value) + best_minvol);
  }
#endif
  out.cut = std::move(cut);
  return out;
}

ApproxFlowResult ApproxMaxflowShortcut(const ShortcutGraph& sg,
                                       const ShortcutWeights& ws,
                                       const RespectingOrder& order, Vertex s,
                                       Vertex t) {
  const Graph& g = sg.g;
  if (s == t) throw std::invalid_argument("source equals sink");
  assert(s >= 0 && s < sg.n_base && t >= 0 && t < sg.n_base);

  CapacityT cap_max = 0;
  for (Edge e = 0; e < sg.m_base; ++e)
    cap_max = std::max(cap_max, sg.base.capacity[e]);
  __int128 want = static_cast<__int128>(sg.n_base) * sg.n_base * sg.n_base;
  want = want * cap_max * sg.q;
  // A demand beyond the total shortcut capacity keeps the cut search from
  // routing everything, so the certifying cut always materializes.
  __int128 sure = static_cast<__int128>(g.TotalCapacity()) + sg.q;
  __int128 ask = std::max(want, sure);
  assert(ask < (static_cast<__int128>(1) << 62));

  Demand d;
  d.source.assign(g.n, 0);
  d.sink.assign(g.n, 0);
  d.source[s] = static_cast<CapacityT>(ask);
  d.sink[t] = static_cast<CapacityT>(ask);

  SparseCutOutput out = SparseCut(
      sg, ws, order, std::vector<bool>(sg.m_base, false), d, 1, 0);
  assert(out.cut.has_value());

  ApproxFlowResult res;
  res.flow = std::move(out.flow);
  res.value = out.value;
  res.cut = std::move(*out.cut);
  assert(res.cut.side[s] && !res.cut.side[t]);
  return res;
}

ShortFlowResult FlowWithShortDecomposition(const ShortcutGraph& sg,
                                           const ShortcutWeights& ws,
                                           const RespectingOrder& order,
                                           const std::vector<bool>& terminal,
                                           const Demand& d, CapacityT kappa) {
  const Graph& g = sg.g;
  if (kappa <= 0) throw std::invalid_argument("kappa must be positive");
  if (d.TotalSource() > d.TotalSink())
    throw std::invalid_argument("demand is not a diffusion instance");
  assert(static_cast<int>(d.source.size()) == g.n);

  ShortFlowResult res;
  res.flow = ScaledFlow(sg.q, g.m);
  res.total_flow.assign(g.m, 0);
  res.threshold = 18 * SparseCutHeight(sg, terminal, kappa);

  Demand rem = d;
  // Demand a vertex owes itself ships over the empty path; covering it up
  // front keeps the rounds measuring real routing progress.
  for (Vertex v : g.Vertices()) {
    CapacityT both = std::min(rem.source[v], rem.sink[v]);
    if (both > 0) {
      rem.source[v] -= both;
      rem.sink[v] -= both;
      res.terms.push_back({both, v, v, 0});
      res.value += both;
    }
  }

  while (true) {
    SparseCutOutput out = SparseCut(sg, ws, order, terminal, rem, kappa, 0);
    res.params = out.params;
    ++res.rounds;
    assert(res.rounds < 256);
    bool stalled = 2 * out.value < rem.TotalSource();
    FilteredFlow filtered =
        FilterShortPaths(g, out.flow.value, ws.w, res.threshold, rem);
    for (const auto& term : filtered.kept) res.value += term.amount;
    res.terms.insert(res.terms.end(), filtered.kept.begin(),
                     filtered.kept.end());
    for (Edge e : g.Edges()) res.flow.value[e] += filtered.flow[e];
    if (stalled) {
      for (Edge e : g.Edges()) res.total_flow[e] += out.flow.value[e];
      assert(out.cut.has_value());
      res.cut = std::move(out.cut);
      res.residual = std::move(out.residual);
      break;
    }
    for (Edge e : g.Edges()) res.total_flow[e] += filtered.flow[e];
    rem = std::move(filtered.residual);
    if (rem.TotalSource() == 0) {
      res.residual = std::move(rem);
      break;
    }
  }
  res.total_value = FlowValue(g, d, res.total_flow);

#ifndef NDEBUG
  if (res.cut.has_value()) {
    const CutResult& cut = *res.cut;
    __int128 supply_s = 0, drain_sbar = 0;
    for (Vertex v : g.Vertices()) {
      if (cut.side[v])
        supply_s += d.source[v];
      else
        drain_sbar += d.sink[v];
    }
    __int128 minvol = std::min<__int128>(cut.vol_s, cut.vol_sbar);
    assert(static_cast<__int128>(kappa) * cut.capacity <=
           41 * std::min(supply_s, drain_sbar) + minvol);
  }
#endif
  return res;
}

}  // namespace hierflow
