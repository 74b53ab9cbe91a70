#pragma once

#include "hierflow/graph.h"

namespace hierflow {

/**
 * Rooted link-cut forest over splay trees. Each non-root vertex carries the
 * values of the edge to its parent: a flow amount (supports path minimum and
 * lazy path addition), a kept-flow accumulator (lazy path addition only) and
 * a static weight (supports path sums). All path operations act on the
 * vertex-to-root path; re-rooting is not supported and not needed since the
 * flow decomposition only ever walks toward roots.
 */
class LinkCutTree {
 public:
  struct EdgeVals {
    CapacityT flow = 0;
    CapacityT kept = 0;
    Edge id = -1;
  };

  void Reset(int n);
  bool Linked(Vertex x) const { return linked_[x]; }
  Edge ParentEdgeId(Vertex x) const { return id_[x]; }

  // x must be the root of its tree.
  void Link(Vertex x, Vertex parent, CapacityT flow, CapacityT weight, Edge id);

  // Cuts the edge from x to its parent and returns its current values.
  EdgeVals CutAbove(Vertex x);

  Vertex FindRoot(Vertex x);

  // Minimum flow on the path from x to its root, with the edge realizing it
  // that lies closest to the root. Undefined when x is a root.
  std::pair<CapacityT, Vertex> PathMinArg(Vertex x);

  // Adds dflow / dkept to every edge on the path from x to its root.
  void PathAdd(Vertex x, CapacityT dflow, CapacityT dkept);

  CapacityT PathWeightSum(Vertex x);

  EdgeVals ReadEdge(Vertex x);

 private:
  static constexpr CapacityT kNoFlow = 1LL << 61;

  void Apply(int x, CapacityT df, CapacityT dk);
  void Push(int x);
  void Pull(int x);
  bool IsSplayRoot(int x) const;
  void Rotate(int x);
  void Splay(int x);
  void Access(int x);

  std::vector<int> left_, right_, parent_;
  std::vector<CapacityT> flow_, kept_, weight_;
  std::vector<CapacityT> min_flow_, sum_weight_;
  std::vector<CapacityT> add_flow_, add_kept_;
  std::vector<Edge> id_;
  std::vector<char> linked_;
};

}  // namespace hierflow
