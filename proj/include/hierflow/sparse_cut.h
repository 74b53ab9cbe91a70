#pragma once

#include <optional>

#include "hierflow/decompose.h"
#include "hierflow/shortcut.h"

namespace hierflow {

// Parameters a cut search ran with. q is the capacity scale of the shortcut,
// levels the hierarchy depth, terminal_capacity the plain-scale capacity sum
// of the terminal edge set.
struct SparseCutParams {
  CapacityT h = 0;
  CapacityT kappa = 1;
  CapacityT q = 1;
  int levels = 0;
  CapacityT terminal_capacity = 0;
};

struct SparseCutOutput {
  ScaledFlow flow;       // congestion kappa, scale q
  CapacityT value = 0;   // |f| against the given demand, scale q
  Demand residual;       // unrouted part of the demand
  std::optional<CutResult> cut;  // absent iff the demand routed fully
  // Number of distance layers in [0, h) whose residual crossing capacity,
  // not counting forward copies of terminal edges, is at most 40 |f|.
  // Zero when no cut was computed.
  CapacityT good_layers = 0;
  SparseCutParams params;
};

// Distance budget n (6 L q + 100 kappa bitlen(c(F))) for the cut search on
// sg with terminal edge set F.
CapacityT SparseCutHeight(const ShortcutGraph& sg,
                          const std::vector<bool>& terminal, CapacityT kappa);

// Terminal-weighted degree of every vertex: the plain-scale capacity sum of
// the incident terminal edges, self-loops counted once. Star roots have
// degree zero.
std::vector<CapacityT> TerminalDegrees(const ShortcutGraph& sg,
                                       const std::vector<bool>& terminal);

/**
 * Routes as much of d as possible at congestion kappa and small average
 * weight, and when some demand is left over extracts a certified cut.
 *
 * The flow comes from the push-relabel engine run with capacities kappa
 * times the shortcut capacities and distance budget h. The cut is chosen
 * among the distance layers S_i = {v : dist(v) <= i}, i in [0, h), of a
 * shortest-path pass with modified weights: forward copies of non-terminal
 * base edges that point forward in the respecting order cost 0, everything
 * else keeps its weight. The layer minimizing residual crossing capacity
 * minus min{vol_F(S_i), vol_F(complement)} wins, ties to the smallest i.
 *
 * On the chosen cut, with values at scale q:
 *   - no residual source sits outside S and no residual sink inside it;
 *   - residual crossing capacity <= 40 |f| + min{vol_F(S), vol_F(S-bar)};
 *   - kappa c(E(S, S-bar)) <= 41 |f| + min{vol_F(S), vol_F(S-bar)}.
 *
 * h_override replaces the computed budget when positive. The residual
 * source and sink conditions still hold, but the two crossing bounds and
 * the h/4 good-layer guarantee of the full budget become best effort.
 *
 * Throws std::invalid_argument when kappa <= 0 or d is not a diffusion
 * instance.
 */
SparseCutOutput SparseCut(const ShortcutGraph& sg, const ShortcutWeights& ws,
                          const RespectingOrder& order,
                          const std::vector<bool>& terminal, const Demand& d,
                          CapacityT kappa, CapacityT h_override = 0);

struct ApproxFlowResult {
  ScaledFlow flow;      // scale q, congestion 1
  CapacityT value = 0;  // scale q
  CutResult cut;        // s inside, t outside
};

// 41-approximate maximum s-t flow and certifying cut on the shortcut graph:
// a single cut search with unit congestion, no terminal edges, and an s-t
// demand exceeding the total capacity. value >= maxflow / 41 and
// cut.capacity <= 41 value.
ApproxFlowResult ApproxMaxflowShortcut(const ShortcutGraph& sg,
                                       const ShortcutWeights& ws,
                                       const RespectingOrder& order, Vertex s,
                                       Vertex t);

struct ShortFlowResult {
  // Edge-wise sum of the kept path terms, every term of weight at most
  // threshold = 18 h.
  ScaledFlow flow;
  CapacityT value = 0;  // total kept amount, scale q
  std::vector<PathDecomposition::Term> terms;
  CapacityT threshold = 0;
  // Everything routed across the rounds, including the long paths of a
  // stalled final round; the cut conditions hold against this flow.
  std::vector<CapacityT> total_flow;
  CapacityT total_value = 0;
  std::optional<CutResult> cut;  // present iff a round stalled
  Demand residual;               // of total_flow against d
  int rounds = 0;
  SparseCutParams params;
};

/**
 * Repeated cut search with short-path filtering. Each round routes the
 * remaining demand; while at least half of it routes, only the path terms
 * of weight <= 18 h are kept and the round's leftover demand carries over.
 * A round that routes less than half stops the loop and returns its cut,
 * which then also satisfies, at scale q,
 *
 *   kappa c(E(S, S-bar)) <= 41 min{Delta(S), Nabla(S-bar)}
 *                           + min{vol_F(S), vol_F(S-bar)}
 *
 * against the original demand d, not just the round's remainder.
 *
 * The kept terms reproduce flow edge-wise and cover value demand units;
 * total_flow additionally contains the stalled round's long paths, so its
 * residual is exact. Congestion of total_flow is at most rounds * kappa.
 */
ShortFlowResult FlowWithShortDecomposition(const ShortcutGraph& sg,
                                           const ShortcutWeights& ws,
                                           const RespectingOrder& order,
                                           const std::vector<bool>& terminal,
                                           const Demand& d, CapacityT kappa);

}  // namespace hierflow
