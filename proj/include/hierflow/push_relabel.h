#pragma once

#include <limits>

#include "hierflow/flow.h"
#include "hierflow/graph.h"

namespace hierflow {

// Capacity sentinel for "unbounded"; the engine clamps it to the sum of the
// finite capacities plus the total supply before running.
constexpr CapacityT kInfCapacity = std::numeric_limits<CapacityT>::max() / 4;

struct PRResult {
  std::vector<CapacityT> flow;   // per edge, same scale as caps and demand
  Demand residual;               // Delta_f, Nabla_f
  CapacityT value = 0;           // |f|
  // Residual w-distance from the unsaturated sources, clamped to [0, 9h].
  // Unreachable vertices sit at 9h.
  std::vector<CapacityT> label;
  int phases = 0;
  long long edge_scans = 0;
};

/**
 * Computes a flow for the diffusion instance (g, cap, d) that is approximately
 * maximal among flows of small average w-length. On return:
 *
 *  (i)  every residual path from a vertex with Delta_f > 0 to a vertex with
 *       Nabla_f > 0 has w-length strictly greater than 3h;
 *  (ii) sum_e f(e) w(e) <= 3h |f|, in particular the average path length in
 *       any decomposition is at most 9h;
 *  (iii) |f| >= |f*| / 6 for every flow f* of average w-length at most h.
 *
 * The engine runs phases of w-shortest augmenting paths: a Dijkstra pass over
 * the residual graph (expansion stops beyond distance 3h) followed by a
 * blocking flow on the tight arcs. Each phase strictly increases the source
 * to sink distance, so the number of phases is bounded by the number of
 * realized shortest-path lengths, never by h itself. Work accounting: the
 * reported edge_scans is at most 4 (phases + 1) (m + n) arc examinations.
 *
 * Weights must be nonnegative; weight 0 is allowed and treated as distance 0.
 * Ties are broken toward the lowest edge index, so runs are deterministic.
 */
PRResult WeightedPushRelabel(const Graph& g, const std::vector<CapacityT>& cap,
                             const Demand& d, const std::vector<CapacityT>& w,
                             CapacityT h);

}  // namespace hierflow
