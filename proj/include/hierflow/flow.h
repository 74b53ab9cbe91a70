#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hierflow/graph.h"

namespace hierflow {

// Vertex demand (supply Delta, absorption Nabla). Values are integers at the
// scale agreed by the caller; a flow f routes demand d when
// -Nabla(v) <= f_out(v) <= Delta(v) holds for every vertex.
struct Demand {
  std::vector<CapacityT> source, sink;

  Demand() = default;
  explicit Demand(int n) : source(n, 0), sink(n, 0) {}
  CapacityT TotalSource() const;
  CapacityT TotalSink() const;
};

// Edge flow with an explicit denominator: the routed amount on edge e is
// value[e] / scale.
struct ScaledFlow {
  CapacityT scale = 1;
  std::vector<CapacityT> value;

  ScaledFlow() = default;
  ScaledFlow(CapacityT scale_, int m) : scale(scale_), value(m, 0) {}
};

// One side of a cut plus the quantities the cut-based guarantees refer to.
struct CutResult {
  std::vector<bool> side;       // true = inside S
  CapacityT capacity = 0;       // c(E(S, S-bar))
  CapacityT vol_s = 0;          // vol_F(S)
  CapacityT vol_sbar = 0;       // vol_F(S-bar)
};

// Net outflow f_out(v) = sum of f over out-edges minus in-edges, per vertex.
std::vector<CapacityT> FlowOutDegree(const Graph& g,
                                     const std::vector<CapacityT>& flow);

// Residual demand of f against d:
//   Delta_f(v) = max(0, Delta(v) - Nabla(v) - f_out(v))
//   Nabla_f(v) = max(0, Nabla(v) - Delta(v) + f_out(v))
Demand ResidualDemand(const Graph& g, const Demand& d,
                      const std::vector<CapacityT>& flow);

// |f| = sum_v (Delta(v) - Delta_f(v)).
CapacityT FlowValue(const Graph& g, const Demand& d,
                    const std::vector<CapacityT>& flow);

// Verifies 0 <= f(e) and f(e) * cong_den <= cong_num * cap(e) on every edge,
// and that f routes at most d. Returns the first violated constraint, or
// nullopt when the flow is feasible. Flow, caps and demand share one scale.
std::optional<std::string> CheckFeasible(const Graph& g,
                                         const std::vector<CapacityT>& cap,
                                         const Demand& d,
                                         const std::vector<CapacityT>& flow,
                                         CapacityT cong_num,
                                         CapacityT cong_den);

// JSON round trip for integral flows:
// {"value": v, "scale": s, "edges": [{"tail": u, "head": w, "flow": f}, ...]}
// Edges appear in graph id order, one entry per edge.
std::string FlowToJson(const Graph& g, const ScaledFlow& f, CapacityT value);
ScaledFlow FlowFromJson(const Graph& g, const std::string& text,
                        CapacityT* value_out);

}  // namespace hierflow
