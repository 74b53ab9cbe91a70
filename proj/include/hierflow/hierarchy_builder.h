#pragma once

#include <string>
#include <vector>

#include "hierflow/expander_decomp.h"

namespace hierflow {

/**
 * Tunable constants of the construction. Derived quantities are fixed
 * per graph: the routing sparsity phi_rand_inv = phi_exp_inv * c_route
 * * ceil(log2 n), the round allowance L from the total capacity, the
 * star scale q = L * phi_rand_inv and the flow scale z = 200 L q.
 */
struct BuildProfile {
  std::string name = "practical";
  CapacityT phi_exp_inv = 16;  // cut sparsity of the decomposition games
  CapacityT delta_inv = 8;     // balance slack of the matching player
  bool delta_auto = false;     // derive the slack from each piece's size
  int c_route = 8;             // headroom factor of the routing budget
};

BuildProfile PracticalProfile();
// Polylogarithmic sparsity ceil(log2 n)^3 and per-piece balance slack.
BuildProfile TheoryProfile(int n);

// One construction round: the level function entering the round, the
// shortcut graph the round decomposed (no stars for its own top level)
// and the decomposition output.
struct RoundSnapshot {
  int round = 0;                    // 1-based
  std::vector<int> level;           // per base edge, entering this round
  ShortcutGraph sg;
  ShortcutWeights ws;
  RespectingOrder order;
  DecompResult decomp;
  std::vector<int> leaf_of_vertex;  // base vertex -> index into decomp.leaves
  CapacityT top_capacity = 0;       // plain capacity of the round's top edges
};

/**
 * The finished hierarchy: the per-round snapshots, the final level
 * function and the full shortcut graph over it, stars at every level.
 * Scales and the allowance L are fixed before round one and shared by
 * all snapshots.
 */
struct BuiltHierarchy {
  Graph g;
  BuildProfile profile;
  CapacityT phi_rand_inv = 0;
  CapacityT L = 0;
  CapacityT q = 0;
  CapacityT z = 0;
  int rounds = 0;  // rounds actually run; round_log has this many entries
  std::vector<RoundSnapshot> round_log;
  std::vector<int> level;  // final level function, values in [1, rounds]
  ShortcutGraph sg;
  ShortcutWeights ws;
  RespectingOrder order;
};

/**
 * Bottom-up construction: round r decomposes the level-r edges over the
 * round's shortcut graph and pushes e_next to level r+1; rounds stop as
 * soon as nothing is demoted, which the capacity contraction
 * 10 c(e_next) <= 9 c(top), checked exactly every round, forces within
 * the allowance L. Capacities must be positive.
 */
BuiltHierarchy BuildExpanderHierarchy(const Graph& g,
                                      const BuildProfile& profile, Rng& rng);

struct UnfoldStep {
  std::vector<CapacityT> flow;  // scale z, on the round-r shortcut graph
  CapacityT kappa = 0;          // congestion numerator at scale z
};

/**
 * Rewrites the level-r star traffic of a scale-z flow on the round
 * r+1 shortcut graph into base and lower-star traffic on the round-r
 * graph, preserving the vertex demand exactly. The input must satisfy
 * flow(e) * z <= kappa * c_z(e) edge-wise with kappa >= z; the
 * returned kappa is the exact such bound for the output, normally a
 * factor (1 + 1.01/L) above the input but larger when a leaf routing
 * had to exceed its budget. Throws std::invalid_argument when the
 * input flow leaves nonzero balance on a Steiner root.
 */
UnfoldStep UnfoldOneLevel(const BuiltHierarchy& bh, int r,
                          const std::vector<CapacityT>& flow, CapacityT kappa);

// Unfolds a feasible scale-q flow on the final shortcut graph into a
// flow on g at scale z, by applying UnfoldOneLevel from the top round
// down. Congestion 3 is the design target; callers that round at scale
// 3z must check it edge-wise since the leaf budgets are empirical.
std::vector<CapacityT> Unfold(const BuiltHierarchy& bh,
                              const std::vector<CapacityT>& flow_q);

}  // namespace hierflow
