#include "hierflow/graph.h"

#include <numeric>
#include <utility>

namespace hierflow {

namespace {

std::vector<int> SccImpl(const Graph& g, const std::vector<bool>* keep) {
  // Kosaraju. First pass collects a post-order, second pass walks the
  // reverse graph from the latest finisher, so component ids come out in
  // topological order of the condensation.
  std::vector<Vertex> order;
  order.reserve(g.n);
  std::vector<char> visited(g.n, 0);
  std::vector<std::pair<Vertex, size_t>> stack;
  for (Vertex s : g.Vertices()) {
    if (visited[s]) continue;
    visited[s] = 1;
    stack.emplace_back(s, 0);
    while (!stack.empty()) {
      auto& [v, it] = stack.back();
      if (it == g.out_edges[v].size()) {
        order.push_back(v);
        stack.pop_back();
        continue;
      }
      Edge e = g.out_edges[v][it++];
      if (keep != nullptr && !(*keep)[e]) continue;
      Vertex w = g.head[e];
      if (!visited[w]) {
        visited[w] = 1;
        stack.emplace_back(w, 0);
      }
    }
  }

  std::vector<int> comp(g.n, -1);
  std::vector<Vertex> dfs;
  int num_scc = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != -1) continue;
    comp[*it] = num_scc;
    dfs.push_back(*it);
    while (!dfs.empty()) {
      Vertex v = dfs.back();
      dfs.pop_back();
      for (Edge e : g.in_edges[v]) {
        if (keep != nullptr && !(*keep)[e]) continue;
        Vertex w = g.tail[e];
        if (comp[w] == -1) {
          comp[w] = num_scc;
          dfs.push_back(w);
        }
      }
    }
    ++num_scc;
  }
  return comp;
}

}  // namespace

CapacityT Graph::TotalCapacity() const {
  return std::accumulate(capacity.begin(), capacity.end(), CapacityT{0});
}

Graph Graph::Reverse() const {
  Graph r(n);
  for (Edge e : Edges()) r.AddEdge(head[e], tail[e], capacity[e]);
  return r;
}

std::vector<int> Graph::SCC() const { return SccImpl(*this, nullptr); }

std::vector<int> Graph::SCC(const std::vector<bool>& keep) const {
  assert(static_cast<int>(keep.size()) == m);
  return SccImpl(*this, &keep);
}

Subgraph VertexSubgraph(const Graph& g, const std::vector<bool>& side) {
  assert(static_cast<int>(side.size()) == g.n);
  Subgraph s;
  s.inv_vertex_map.assign(g.n, -1);
  for (Vertex v : g.Vertices()) {
    if (side[v]) {
      s.inv_vertex_map[v] = static_cast<Vertex>(s.vertex_map.size());
      s.vertex_map.push_back(v);
    }
  }
  s.g = Graph(static_cast<int>(s.vertex_map.size()));
  for (Edge e : g.Edges()) {
    if (side[g.tail[e]] && side[g.head[e]]) {
      s.g.AddEdge(s.inv_vertex_map[g.tail[e]], s.inv_vertex_map[g.head[e]],
                  g.capacity[e]);
      s.edge_map.push_back(e);
    }
  }
  return s;
}

}  // namespace hierflow
