#include "hierflow/cut_matching.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hierflow {

int DefaultGameRounds(int n) {
  if (n <= 1) return 0;
  double lg = std::log2(static_cast<double>(n));
  return 4 * static_cast<int>(std::ceil(lg * lg - 1e-9));
}

CapacityT DefaultDeltaInv(int n) {
  if (n <= 1) return 64;
  double lg = std::log2(static_cast<double>(n));
  return 64 * static_cast<CapacityT>(std::ceil(lg * lg - 1e-9));
}

ReversedShortcut ReverseShortcut(const ShortcutGraph& sg,
                                 const RespectingOrder& order) {
  ReversedShortcut rev;
  rev.sg.base = sg.base.Reverse();
  rev.sg.h = sg.h;
  rev.sg.g = sg.g.Reverse();
  rev.sg.q = sg.q;
  rev.sg.skip_top = sg.skip_top;
  rev.sg.n_base = sg.n_base;
  rev.sg.m_base = sg.m_base;
  rev.sg.stars = sg.stars;
  rev.sg.star_of_edge = sg.star_of_edge;
  rev.sg.star_at = sg.star_at;
  rev.order.by_rank.assign(order.by_rank.rbegin(), order.by_rank.rend());
  rev.order.rank.resize(order.rank.size());
  for (int i = 0; i < static_cast<int>(rev.order.by_rank.size()); ++i)
    rev.order.rank[rev.order.by_rank[i]] = i;
  return rev;
}

Bipartition CutPlayerStep(const std::vector<double>& projection,
                          const Measure& alive) {
  const int n = static_cast<int>(alive.value.size());
  assert(static_cast<int>(projection.size()) == n);
  std::vector<Vertex> supp;
  CapacityT total = 0;
  for (Vertex v = 0; v < n; ++v)
    if (alive.value[v] > 0) {
      supp.push_back(v);
      total += alive.value[v];
    }
  if (supp.empty()) throw std::invalid_argument("alive measure is zero");
  std::sort(supp.begin(), supp.end(), [&](Vertex a, Vertex b) {
    if (projection[a] != projection[b]) return projection[a] < projection[b];
    return a < b;
  });

  Bipartition bp;
  bp.in_p.assign(n, 0);
  bp.dprime.scale = alive.scale;
  bp.dprime.value.assign(n, 0);

  // The straddler is the first vertex whose inclusive prefix reaches half
  // the total mass; everything before it lands in P, everything after in Q.
  CapacityT pre = 0;
  size_t xi = 0;
  while (2 * (pre + alive.value[supp[xi]]) < total)
    pre += alive.value[supp[xi++]];
  Vertex x = supp[xi];
  CapacityT rest = total - pre - alive.value[x];
  for (size_t i = 0; i < xi; ++i) {
    bp.in_p[supp[i]] = 1;
    bp.dprime.value[supp[i]] = alive.value[supp[i]];
  }
  for (size_t i = xi + 1; i < supp.size(); ++i)
    bp.dprime.value[supp[i]] = alive.value[supp[i]];
  bp.straddler = x;
  if (pre <= rest) {
    bp.in_p[x] = 1;
    bp.dprime.value[x] = rest - pre;
  } else {
    bp.dprime.value[x] = pre - rest;
  }
  assert(bp.dprime.value[x] <= alive.value[x]);
  bp.reduction = alive.value[x] - bp.dprime.value[x];
  return bp;
}

MatchingResult MatchingPlayer(const ShortcutGraph& sg,
                              const ShortcutWeights& ws,
                              const RespectingOrder& order,
                              const ReversedShortcut& rev,
                              const std::vector<bool>& terminal,
                              const std::vector<char>& in_p,
                              const Measure& dprime, CapacityT phi_inv,
                              CapacityT delta_inv) {
  const int n = sg.n_base;
  assert(static_cast<int>(in_p.size()) == n);
  assert(static_cast<int>(dprime.value.size()) == n);
  assert(dprime.scale == sg.q);
  const CapacityT kappa = 50 * phi_inv;

  Demand d;
  d.source.assign(sg.g.n, 0);
  d.sink.assign(sg.g.n, 0);
  CapacityT mass_p = 0, mass_q = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (in_p[v]) {
      d.source[v] = dprime.value[v];
      mass_p += dprime.value[v];
    } else {
      d.sink[v] = dprime.value[v];
      mass_q += dprime.value[v];
    }
  }
  assert(mass_p == mass_q);

  std::vector<CapacityT> deg = TerminalDegrees(sg, terminal);
  __int128 vol_total = 0;
  for (Vertex v = 0; v < n; ++v)
    vol_total += static_cast<__int128>(sg.q) * deg[v];

  auto balanced = [&](const CutResult& cut) {
    if (delta_inv == 0) return true;
    __int128 minvol = std::min(cut.vol_s, cut.vol_sbar);
    return 2 * static_cast<__int128>(delta_inv) * minvol >= vol_total;
  };
  auto take_cut = [&](MatchingResult& res, CutResult cut) {
    assert(static_cast<__int128>(phi_inv) * cut.capacity <
               std::min(cut.vol_s, cut.vol_sbar) ||
           cut.capacity == 0);
    res.cut = std::move(cut);
  };

  MatchingResult res;
  ShortFlowResult fwd =
      FlowWithShortDecomposition(sg, ws, order, terminal, d, kappa);
  res.threshold = fwd.threshold;
  if (fwd.cut.has_value() && balanced(*fwd.cut)) {
    take_cut(res, std::move(*fwd.cut));
    return res;
  }
  ShortFlowResult bwd =
      FlowWithShortDecomposition(rev.sg, ws, rev.order, terminal, d, kappa);
  if (bwd.cut.has_value() && balanced(*bwd.cut)) {
    take_cut(res, std::move(*bwd.cut));
    return res;
  }
  if (fwd.cut.has_value())
    res.spare_cut = std::move(*fwd.cut);
  else if (bwd.cut.has_value())
    res.spare_cut = std::move(*bwd.cut);

  BiMatching& m = res.matching;
  m.d_fwd.assign(n, 0);
  m.d_bwd.assign(n, 0);
  if (delta_inv > 0)
    m.slack = static_cast<CapacityT>(vol_total / delta_inv);
  for (const auto& t : fwd.terms) {
    assert(in_p[t.src] && !in_p[t.dst]);
    m.forward.push_back({t.src, t.dst, t.amount});
    m.d_fwd[t.src] += t.amount;
    m.d_fwd[t.dst] += t.amount;
  }
  for (const auto& t : bwd.terms) {
    // A reversed-graph path from t.src to t.dst runs t.dst to t.src here.
    assert(in_p[t.src] && !in_p[t.dst]);
    m.backward.push_back({t.dst, t.src, t.amount});
    m.d_bwd[t.src] += t.amount;
    m.d_bwd[t.dst] += t.amount;
  }

#ifndef NDEBUG
  for (Vertex v = 0; v < n; ++v) {
    assert(m.d_fwd[v] <= dprime.value[v]);
    assert(m.d_bwd[v] <= dprime.value[v]);
  }
  CapacityT covered_fwd = 2 * fwd.value;
  CapacityT covered_bwd = 2 * bwd.value;
  CapacityT dpv = mass_p + mass_q;
  assert(covered_fwd <= dpv && covered_bwd <= dpv);
  if (delta_inv > 0) {
    // A stalled round that escapes the balance test leaves at most 7/6 of
    // the slack allowance unmatched.
    assert(6 * static_cast<__int128>(delta_inv) * (dpv - covered_fwd) <=
           7 * vol_total);
    assert(6 * static_cast<__int128>(delta_inv) * (dpv - covered_bwd) <=
           7 * vol_total);
  } else {
    assert(covered_fwd == dpv && covered_bwd == dpv);
  }
#endif
  res.fwd_terms = std::move(fwd.terms);
  res.bwd_terms = std::move(bwd.terms);
  return res;
}

CMGResult NonStopCutMatching(const ShortcutGraph& sg,
                             const ShortcutWeights& ws,
                             const RespectingOrder& order,
                             const std::vector<bool>& terminal,
                             CapacityT phi_inv, CapacityT delta_inv, int T,
                             Rng& rng, const CMGOptions& opt) {
  const int n = sg.n_base;
  CMGResult res;
  std::vector<CapacityT> deg = TerminalDegrees(sg, terminal);
  Measure start;
  start.scale = sg.q;
  start.value.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    assert(deg[v] <= std::numeric_limits<CapacityT>::max() / sg.q);
    start.value[v] = sg.q * deg[v];
  }
  res.witness.start = start;
  if (start.Total() == 0 || T <= 0) {
    res.witness.alive = start;
    return res;
  }

  ReversedShortcut rev = ReverseShortcut(sg, order);
  Measure alive = start;
  std::vector<double> proj(n, 0.0);
  for (int t = 0; t < T; ++t) {
    if (opt.c_refresh <= 1 || t % opt.c_refresh == 0)
      for (Vertex v = 0; v < n; ++v)
        proj[v] = alive.value[v] > 0 ? rng.Gauss() : 0.0;
    Bipartition bp = CutPlayerStep(proj, alive);
    MatchingResult mr = MatchingPlayer(sg, ws, order, rev, terminal, bp.in_p,
                                       bp.dprime, phi_inv, delta_inv);
    if (mr.cut.has_value()) {
      res.cut = std::move(mr.cut);
      res.witness.alive = std::move(alive);
      return res;
    }
    res.witness.threshold = mr.threshold;

    // Every vertex keeps the minimum of what it sent and received plus the
    // mass the round never asked of it, and dies below half its start.
    const BiMatching& bm = mr.matching;
    Measure next = alive;
    CapacityT removed = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (alive.value[v] == 0) continue;
      CapacityT sent = bp.in_p[v] ? bm.d_fwd[v] : bm.d_bwd[v];
      CapacityT recv = bp.in_p[v] ? bm.d_bwd[v] : bm.d_fwd[v];
      CapacityT keep =
          std::min(sent, recv) + (alive.value[v] - bp.dprime.value[v]);
      assert(keep <= alive.value[v]);
      if (2 * keep < start.value[v]) keep = 0;
      removed += alive.value[v] - keep;
      next.value[v] = keep;
    }

    // Removal only happens when a direction went partly unrouted, which
    // always produced a sparse cut. When the round's losses would push
    // the alive mass below the retention floor, end through that cut
    // instead of certifying a thin witness.
    if (8 * next.Total() < 7 * start.Total()) {
      assert(mr.spare_cut.has_value());
      res.cut = std::move(mr.spare_cut);
      res.witness.alive = std::move(alive);
      return res;
    }

    {
      std::vector<double> shift_in(n, 0.0), shift_out(n, 0.0);
      auto mix = [&](const std::vector<BiMatching::MEdge>& edges) {
        for (const auto& e : edges) {
          double move = proj[e.from] * (static_cast<double>(e.cap) /
                                        static_cast<double>(alive.value[e.from]));
          shift_out[e.from] += move;
          shift_in[e.to] += move;
        }
      };
      mix(bm.forward);
      mix(bm.backward);
      for (Vertex v = 0; v < n; ++v) proj[v] += shift_in[v] - shift_out[v];
    }

    if (opt.trace) {
      *opt.trace << "{\"round\":" << t
                 << ",\"alive\":" << static_cast<long long>(next.Total())
                 << ",\"removed\":" << static_cast<long long>(removed)
                 << ",\"matching_edges\":"
                 << bm.forward.size() + bm.backward.size() << "}\n";
    }

    CMGRound round;
    round.matching = std::move(mr.matching);
    if (opt.keep_terms) {
      round.fwd_terms = std::move(mr.fwd_terms);
      round.bwd_terms = std::move(mr.bwd_terms);
    }
    res.witness.rounds.push_back(std::move(round));
    res.witness.T = t + 1;
    alive = std::move(next);
  }
  res.witness.alive = std::move(alive);
  assert(8 * res.witness.alive.Total() >= 7 * start.Total());
  return res;
}

}  // namespace hierflow
