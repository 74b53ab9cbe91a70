#include "hierflow/flow.h"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace hierflow {

CapacityT Demand::TotalSource() const {
  return std::accumulate(source.begin(), source.end(), CapacityT{0});
}

CapacityT Demand::TotalSink() const {
  return std::accumulate(sink.begin(), sink.end(), CapacityT{0});
}

std::vector<CapacityT> FlowOutDegree(const Graph& g,
                                     const std::vector<CapacityT>& flow) {
  std::vector<CapacityT> out(g.n, 0);
  for (Edge e : g.Edges()) {
    out[g.tail[e]] += flow[e];
    out[g.head[e]] -= flow[e];
  }
  return out;
}

Demand ResidualDemand(const Graph& g, const Demand& d,
                      const std::vector<CapacityT>& flow) {
  std::vector<CapacityT> out = FlowOutDegree(g, flow);
  Demand r(g.n);
  for (Vertex v : g.Vertices()) {
    r.source[v] = std::max<CapacityT>(0, d.source[v] - d.sink[v] - out[v]);
    r.sink[v] = std::max<CapacityT>(0, d.sink[v] - d.source[v] + out[v]);
  }
  return r;
}

CapacityT FlowValue(const Graph& g, const Demand& d,
                    const std::vector<CapacityT>& flow) {
  Demand r = ResidualDemand(g, d, flow);
  CapacityT value = 0;
  for (Vertex v : g.Vertices()) value += d.source[v] - r.source[v];
  return value;
}

std::optional<std::string> CheckFeasible(const Graph& g,
                                         const std::vector<CapacityT>& cap,
                                         const Demand& d,
                                         const std::vector<CapacityT>& flow,
                                         CapacityT cong_num,
                                         CapacityT cong_den) {
  for (Edge e : g.Edges()) {
    if (flow[e] < 0)
      return "negative flow on edge " + std::to_string(e);
    if (flow[e] * cong_den > cong_num * cap[e])
      return "congestion exceeded on edge " + std::to_string(e);
  }
  std::vector<CapacityT> out = FlowOutDegree(g, flow);
  for (Vertex v : g.Vertices()) {
    if (out[v] > d.source[v])
      return "outflow exceeds supply at vertex " + std::to_string(v);
    if (-out[v] > d.sink[v])
      return "inflow exceeds absorption at vertex " + std::to_string(v);
  }
  return std::nullopt;
}

std::string FlowToJson(const Graph& g, const ScaledFlow& f, CapacityT value) {
  nlohmann::json j;
  j["value"] = value;
  j["scale"] = f.scale;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (Edge e : g.Edges())
    edges.push_back({{"tail", g.tail[e]},
                     {"head", g.head[e]},
                     {"flow", f.value[e]}});
  return j.dump();
}

ScaledFlow FlowFromJson(const Graph& g, const std::string& text,
                        CapacityT* value_out) {
  nlohmann::json j = nlohmann::json::parse(text);
  ScaledFlow f(j.at("scale").get<CapacityT>(), g.m);
  const auto& edges = j.at("edges");
  if (static_cast<int>(edges.size()) != g.m)
    throw std::runtime_error("flow edge count does not match graph");
  for (Edge e : g.Edges()) {
    const auto& je = edges[e];
    if (je.at("tail").get<Vertex>() != g.tail[e] ||
        je.at("head").get<Vertex>() != g.head[e])
      throw std::runtime_error("flow edge " + std::to_string(e) +
                               " does not match graph");
    f.value[e] = je.at("flow").get<CapacityT>();
  }
  if (value_out != nullptr) *value_out = j.at("value").get<CapacityT>();
  return f;
}

}  // namespace hierflow
