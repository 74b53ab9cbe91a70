#pragma once

#include "hierflow/graph.h"

namespace hierflow {

// Bit-scaling plan: level k holds capacities floor(c / 2^k). Level `levels`
// is the coarsest instance (capacities <= bound) and level 0 the original.
// The driver solves the coarsest level, then repeatedly doubles the flow and
// solves the residual of the next finer level, whose optimum is at most m.
struct ScalingPlan {
  int levels = 0;
  CapacityT bound = 0;
};

// Halves capacities until they fit under max(n^2, 1). Identity (zero levels)
// when they already do.
ScalingPlan NormalizeCapacities(const Graph& g);

// The graph at one scaling level: same vertices and edge ids, capacities
// floor(c / 2^level). Capacities may reach zero at coarse levels.
Graph CapacitiesAtLevel(const Graph& g, int level);

}  // namespace hierflow
