#include "hierflow/hierarchy_builder.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace hierflow {

namespace {

int CeilLog2(int n) {
  return std::bit_width(static_cast<unsigned>(std::max(2, n) - 1));
}

// Smallest L with (10/9)^(L-1) >= total, computed without overflow. The
// growth is under-approximated, so the result errs on the generous side.
CapacityT RoundAllowance(CapacityT total) {
  CapacityT l = 1;
  __int128 pow = 1;
  while (pow < total) {
    pow = std::max(pow + 1, pow * 10 / 9);
    ++l;
  }
  return l;
}

}  // namespace

BuildProfile PracticalProfile() { return BuildProfile{}; }

BuildProfile TheoryProfile(int n) {
  BuildProfile p;
  p.name = "theory";
  CapacityT lg = CeilLog2(n);
  p.phi_exp_inv = lg * lg * lg;
  p.delta_auto = true;
  return p;
}

BuiltHierarchy BuildExpanderHierarchy(const Graph& g,
                                      const BuildProfile& profile, Rng& rng) {
  BuiltHierarchy bh;
  bh.g = g;
  bh.profile = profile;
#ifndef NDEBUG
  for (Edge e : g.Edges()) assert(g.capacity[e] > 0);
#endif
  bh.phi_rand_inv = profile.phi_exp_inv * profile.c_route * CeilLog2(g.n);
  bh.L = RoundAllowance(g.TotalCapacity());
  bh.q = bh.L * bh.phi_rand_inv;
  bh.z = 200 * bh.L * bh.q;
  assert(bh.z > 0 && bh.z < (CapacityT(1) << 40));

  std::vector<int> level(g.m, 1);
  DecompOptions dopt;
  dopt.delta_inv = profile.delta_inv;
  dopt.delta_auto = profile.delta_auto;

  int r = 0;
  while (true) {
    ++r;
    assert(r <= bh.L && "hierarchy did not close within its allowance");
    RoundSnapshot snap;
    snap.round = r;
    snap.level = level;
    Hierarchy h = BuildHierarchy(g, level, r);
    snap.sg = BuildShortcut(g, h, bh.q, /*skip_top=*/true);
    snap.order = ComputeRespectingOrder(g, snap.sg.h);
    snap.ws = ComputeWeights(snap.sg, snap.order);

    std::vector<bool> top(g.m);
    bool any = false;
    for (Edge e : g.Edges()) {
      top[e] = level[e] == r;
      if (top[e]) {
        snap.top_capacity += g.capacity[e];
        any = true;
      }
    }
    if (!any) {
      --r;
      break;
    }

    snap.decomp = WeakExpanderDecomposition(snap.sg, snap.ws, snap.order, top,
                                            profile.phi_exp_inv, rng, dopt);
    assert(10 * snap.decomp.next_capacity <= 9 * snap.decomp.top_capacity);

    snap.leaf_of_vertex.assign(g.n, -1);
    for (int i = 0; i < static_cast<int>(snap.decomp.leaves.size()); ++i)
      for (Vertex v : snap.decomp.leaves[i].vertex_map) {
        assert(snap.leaf_of_vertex[v] < 0);
        snap.leaf_of_vertex[v] = i;
      }

    bool done = snap.decomp.next_capacity == 0;
    for (Edge e : g.Edges())
      if (snap.decomp.e_next[e]) level[e] = r + 1;
    bh.round_log.push_back(std::move(snap));
    if (done) break;
  }
  bh.rounds = r;

  bh.level = std::move(level);
  Hierarchy hf = BuildHierarchy(g, bh.level, std::max(1, bh.rounds));
  bh.sg = BuildShortcut(g, hf, bh.q, /*skip_top=*/false);
  bh.order = ComputeRespectingOrder(g, bh.sg.h);
  bh.ws = ComputeWeights(bh.sg, bh.order);
  return bh;
}

UnfoldStep UnfoldOneLevel(const BuiltHierarchy& bh, int r,
                          const std::vector<CapacityT>& flow, CapacityT kappa) {
  assert(1 <= r && r <= bh.rounds);
  assert(kappa >= bh.z);
  const ShortcutGraph& in_sg = r == bh.rounds ? bh.sg : bh.round_log[r].sg;
  const RoundSnapshot& snap = bh.round_log[r - 1];
  const ShortcutGraph& out_sg = snap.sg;
  assert(static_cast<int>(flow.size()) == in_sg.g.m);

  std::vector<CapacityT> bal = FlowOutDegree(in_sg.g, flow);
  for (Vertex v = in_sg.n_base; v < in_sg.g.n; ++v)
    if (bal[v] != 0)
      throw std::invalid_argument("flow leaves demand on a Steiner root");

  UnfoldStep out;
  out.flow.assign(out_sg.g.m, 0);
  for (Edge e = 0; e < in_sg.m_base; ++e) out.flow[e] = flow[e];

  std::vector<Demand> leaf_demand(snap.decomp.leaves.size());
  for (size_t i = 0; i < leaf_demand.size(); ++i)
    leaf_demand[i] = Demand(snap.decomp.leaves[i].sg.g.n);

  for (const Star& st : in_sg.stars) {
    if (st.level < r) {
      // The level-i edge sets agree between the two rounds for i < r, so
      // the star survives unchanged up to ids; remap through its component.
      for (size_t k = 0; k < st.leaves.size(); ++k) {
        Vertex v = st.leaves[k];
        int tgt = out_sg.star_at[st.level][out_sg.h.comp[st.level][v]];
        assert(tgt >= 0);
        const Star& ot = out_sg.stars[tgt];
        auto it = std::lower_bound(ot.leaves.begin(), ot.leaves.end(), v);
        assert(it != ot.leaves.end() && *it == v);
        size_t pos = it - ot.leaves.begin();
        assert(out_sg.g.capacity[ot.from_leaf[pos]] >=
               in_sg.g.capacity[st.from_leaf[k]]);
        out.flow[ot.from_leaf[pos]] += flow[st.from_leaf[k]];
        out.flow[ot.to_leaf[pos]] += flow[st.to_leaf[k]];
      }
      continue;
    }
    assert(st.level == r);
    int li = snap.leaf_of_vertex[st.leaves[0]];
    assert(li >= 0);
    const DecompLeaf& leaf = snap.decomp.leaves[li];
    for (size_t k = 0; k < st.leaves.size(); ++k) {
      Vertex v = st.leaves[k];
      assert(snap.leaf_of_vertex[v] == li);
      CapacityT net = flow[st.from_leaf[k]] - flow[st.to_leaf[k]];
      if (net == 0) continue;
      Vertex lv = leaf.LocalVertex(v);
      assert(lv >= 0);
      if (net > 0)
        leaf_demand[li].source[lv] += net;
      else
        leaf_demand[li].sink[lv] -= net;
    }
  }

  CapacityT kt = (kappa + bh.q - 1) / bh.q;
  for (size_t i = 0; i < leaf_demand.size(); ++i) {
    if (leaf_demand[i].TotalSource() == 0 && leaf_demand[i].TotalSink() == 0)
      continue;
    const DecompLeaf& leaf = snap.decomp.leaves[i];
    LeafRouting routed =
        RouteLeafDemand(leaf, leaf_demand[i], kt, bh.z, bh.phi_rand_inv);
    for (Edge e : leaf.sg.g.Edges())
      if (routed.flow[e] != 0) out.flow[leaf.edge_map[e]] += routed.flow[e];
  }

  CapacityT s = bh.z / bh.q;
  CapacityT kp = bh.z;
  for (Edge e : out_sg.g.Edges()) {
    if (out.flow[e] == 0) continue;
    __int128 cz = static_cast<__int128>(s) * out_sg.g.capacity[e];
    __int128 need = (static_cast<__int128>(out.flow[e]) * bh.z + cz - 1) / cz;
    kp = std::max(kp, static_cast<CapacityT>(need));
  }
  out.kappa = kp;

#ifndef NDEBUG
  std::vector<CapacityT> bal_out = FlowOutDegree(out_sg.g, out.flow);
  for (Vertex v = 0; v < in_sg.n_base; ++v) assert(bal_out[v] == bal[v]);
  for (Vertex v = out_sg.n_base; v < out_sg.g.n; ++v) assert(bal_out[v] == 0);
#endif
  return out;
}

std::vector<CapacityT> Unfold(const BuiltHierarchy& bh,
                              const std::vector<CapacityT>& flow_q) {
  assert(static_cast<int>(flow_q.size()) == bh.sg.g.m);
  CapacityT s = bh.z / bh.q;
  std::vector<CapacityT> f(bh.sg.g.m);
  for (Edge e : bh.sg.g.Edges()) {
    assert(flow_q[e] >= 0 && flow_q[e] <= bh.sg.g.capacity[e]);
    f[e] = flow_q[e] * s;
  }
  CapacityT kappa = bh.z;
  for (int r = bh.rounds; r >= 1; --r) {
    UnfoldStep step = UnfoldOneLevel(bh, r, f, kappa);
    f = std::move(step.flow);
    kappa = step.kappa;
  }
  assert(static_cast<int>(f.size()) == bh.g.m);
  return f;
}

}  // namespace hierflow
