#include "hierflow/normalize.h"

#include <algorithm>

namespace hierflow {

ScalingPlan NormalizeCapacities(const Graph& g) {
  ScalingPlan plan;
  plan.bound = std::max<CapacityT>(static_cast<CapacityT>(g.n) * g.n, 1);
  CapacityT max_cap = 0;
  for (Edge e : g.Edges()) max_cap = std::max(max_cap, g.capacity[e]);
  while ((max_cap >> plan.levels) > plan.bound) ++plan.levels;
  return plan;
}

Graph CapacitiesAtLevel(const Graph& g, int level) {
  Graph out(g.n);
  for (Edge e : g.Edges()) out.AddEdge(g.tail[e], g.head[e], g.capacity[e] >> level);
  return out;
}

}  // namespace hierflow
