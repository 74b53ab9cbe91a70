#pragma once

#include "hierflow/flow.h"
#include "hierflow/graph.h"

namespace hierflow {

/**
 * Implicit path decomposition of a nonnegative flow. Paths are reported as
 * (amount, src, dst, weight) triples without their vertex sequences; the
 * circulation holds whatever part of the flow ships nothing, edge-wise, so
 * that circulation plus the edge-wise sum of all path terms reproduces the
 * input flow exactly.
 */
struct PathDecomposition {
  struct Term {
    CapacityT amount = 0;
    Vertex src = -1;
    Vertex dst = -1;
    CapacityT weight = 0;  // upper bound on the w-length of the path
  };

  std::vector<Term> terms;
  std::vector<CapacityT> circulation;
};

// Peels a flow into at most m + n path terms plus a circulation using a
// link-cut tree, so no path is ever written out explicitly. Deterministic:
// sources are processed in topological order of the flow support and edges
// in id order. Weight entries must be nonnegative.
PathDecomposition DecomposePaths(const Graph& g,
                                 const std::vector<CapacityT>& flow,
                                 const std::vector<CapacityT>& weight);

struct FilteredFlow {
  std::vector<PathDecomposition::Term> kept;  // terms with weight <= threshold
  std::vector<CapacityT> flow;                // their edge-wise sum
  Demand residual;                            // d minus what kept flow routes
};

// Re-runs the peel of DecomposePaths and keeps only the path terms whose
// weight bound is at most the threshold. The kept flow is itself a feasible
// flow (a sub-sum of full paths), and when the input flow routes d with
// average path weight <= threshold / 2 the kept value is at least half of
// the input value.
FilteredFlow FilterShortPaths(const Graph& g,
                              const std::vector<CapacityT>& flow,
                              const std::vector<CapacityT>& weight,
                              CapacityT threshold, const Demand& d);

// Rounds a flow given at scale z to an integral flow f' with
// floor(f(e)/z) <= f'(e) <= ceil(f(e)/z) on every edge. Net vertex balances
// move to a neighbouring multiple of z as well, so when demands are
// multiples of z the rounded flow routes exactly (d.source/z, d.sink/z)
// usage and |f'| = |f|/z whenever z divides |f|. Throws std::invalid_argument
// if a demand entry is not a multiple of z.
std::vector<CapacityT> RoundFlow(const Graph& g,
                                 const std::vector<CapacityT>& flow,
                                 const Demand& d, CapacityT z);

}  // namespace hierflow
