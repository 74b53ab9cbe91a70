#pragma once

#include <cassert>
#include <ranges>
#include <vector>

namespace hierflow {

using Vertex = int;
using Edge = int;
using CapacityT = long long;

// Directed multigraph with integer capacities. Edge ids are dense and stable
// in insertion order; parallel edges and self-loops are allowed.
struct Graph {
  int n = 0;
  int m = 0;
  std::vector<Vertex> tail, head;
  std::vector<CapacityT> capacity;
  std::vector<std::vector<Edge>> out_edges, in_edges;

  Graph() = default;
  explicit Graph(int n_) : n(n_), out_edges(n_), in_edges(n_) {}

  Edge AddEdge(Vertex u, Vertex v, CapacityT c) {
    assert(0 <= u && u < n && 0 <= v && v < n);
    assert(c >= 0);
    Edge e = m++;
    tail.push_back(u);
    head.push_back(v);
    capacity.push_back(c);
    out_edges[u].push_back(e);
    in_edges[v].push_back(e);
    return e;
  }

  auto Vertices() const { return std::views::iota(0, n); }
  auto Edges() const { return std::views::iota(0, m); }
  CapacityT TotalCapacity() const;

  Graph Reverse() const;

  // Strongly connected components. Component ids follow a topological order
  // of the condensation: an edge between different components goes from the
  // smaller id to the larger one.
  std::vector<int> SCC() const;

  // SCC of the subgraph spanned by the edges with keep[e] set.
  std::vector<int> SCC(const std::vector<bool>& keep) const;
};

// Induced subgraph together with the id maps back to the parent graph.
struct Subgraph {
  Graph g;
  std::vector<Vertex> vertex_map;  // subgraph vertex -> parent vertex
  std::vector<Edge> edge_map;      // subgraph edge -> parent edge
  std::vector<Vertex> inv_vertex_map;  // parent vertex -> subgraph vertex or -1
};

Subgraph VertexSubgraph(const Graph& g, const std::vector<bool>& side);

}  // namespace hierflow
