#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hierflow/flow.h"
#include "hierflow/graph.h"
#include "hierflow/hierarchy_builder.h"

namespace hierflow {

// Runtime gate for the optional self-check suites of the drivers. kCheap
// keeps the O(m) audits, kFull adds full feasibility recomputation after
// every solve.
enum class AssertLevel { kOff, kCheap, kFull };
void SetAssertLevel(AssertLevel level);
AssertLevel GetAssertLevel();

// Thrown by ApproxMaxflow when the unfolded flow lands outside three
// times the scaled capacities somewhere. The practical profile targets
// that bound but cannot guarantee it; ExactMaxflow catches this and
// falls back to a direct augmentation for the round.
class CongestionOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Result of one approximate solve: an integral feasible s-t flow of
 * value ceil(|f_A| / 3), where f_A is the 41-approximate maximum flow
 * of the shortcut graph, together with the certified vertex cut. The
 * cut capacity is at most 41 |f_A|.
 */
struct ApproxResult {
  CapacityT value = 0;
  ScaledFlow flow;                 // scale 1, on the input graph
  std::vector<bool> cut_side;      // true = source side
  CapacityT cut_capacity = 0;      // plain capacity of the cut in g
  CapacityT shortcut_value_q = 0;  // |f_A| at scale q
  CapacityT q = 0;
};

ApproxResult ApproxMaxflow(const Graph& g, Vertex s, Vertex t,
                           const BuildProfile& profile, uint64_t seed);
// Variant sharing the caller's random stream; the exact driver uses it
// to keep one reproducible sequence across rounds.
ApproxResult ApproxMaxflow(const Graph& g, Vertex s, Vertex t,
                           const BuildProfile& profile, Rng& rng);

struct SolveReport {
  CapacityT value = 0;
  ScaledFlow flow;             // scale 1, integral maximum flow
  std::vector<bool> cut_side;  // true = source side of a minimum cut
  CapacityT cut_capacity = 0;
  int rounds = 0;              // approximate rounds over all scaling levels
  int fallback_steps = 0;      // bottleneck augmentations taken
  int scaling_levels = 0;
  std::vector<CapacityT> routed;  // value gained per round, plain scale
  uint64_t seed = 0;
  std::string profile;
  double total_seconds = 0;
};

/**
 * Exact maximum flow by capacity scaling around the approximate solver.
 * Every scaling level doubles the coarser level's flow and closes the
 * remaining gap, at most the edge count, with approximate solves on the
 * residual graph; a round that gains nothing while an augmenting path
 * remains takes one bottleneck augmentation instead, so termination and
 * exactness never depend on the profile constants. The reported cut is
 * the source-reachable residual set; its capacity equals the value.
 */
SolveReport ExactMaxflow(const Graph& g, Vertex s, Vertex t,
                         const BuildProfile& profile, uint64_t seed);

// Independent reference solver (blocking-flow augmentation). The tests
// use it as the differential oracle.
CapacityT OracleMaxflow(const Graph& g, Vertex s, Vertex t);

}  // namespace hierflow
