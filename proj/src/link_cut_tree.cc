#include "hierflow/link_cut_tree.h"

#include <cassert>

namespace hierflow {

void LinkCutTree::Reset(int n) {
  left_.assign(n, -1);
  right_.assign(n, -1);
  parent_.assign(n, -1);
  flow_.assign(n, kNoFlow);
  kept_.assign(n, 0);
  weight_.assign(n, 0);
  min_flow_.assign(n, kNoFlow);
  sum_weight_.assign(n, 0);
  add_flow_.assign(n, 0);
  add_kept_.assign(n, 0);
  id_.assign(n, -1);
  linked_.assign(n, 0);
}

void LinkCutTree::Apply(int x, CapacityT df, CapacityT dk) {
  flow_[x] += df;
  min_flow_[x] += df;
  kept_[x] += dk;
  add_flow_[x] += df;
  add_kept_[x] += dk;
}

void LinkCutTree::Push(int x) {
  if (add_flow_[x] == 0 && add_kept_[x] == 0) return;
  if (left_[x] != -1) Apply(left_[x], add_flow_[x], add_kept_[x]);
  if (right_[x] != -1) Apply(right_[x], add_flow_[x], add_kept_[x]);
  add_flow_[x] = 0;
  add_kept_[x] = 0;
}

void LinkCutTree::Pull(int x) {
  min_flow_[x] = flow_[x];
  sum_weight_[x] = weight_[x];
  for (int c : {left_[x], right_[x]}) {
    if (c == -1) continue;
    min_flow_[x] = std::min(min_flow_[x], min_flow_[c]);
    sum_weight_[x] += sum_weight_[c];
  }
}

bool LinkCutTree::IsSplayRoot(int x) const {
  int p = parent_[x];
  return p == -1 || (left_[p] != x && right_[p] != x);
}

void LinkCutTree::Rotate(int x) {
  int p = parent_[x];
  int g = parent_[p];
  bool x_is_left = left_[p] == x;
  int b = x_is_left ? right_[x] : left_[x];
  if (!IsSplayRoot(p)) {
    if (left_[g] == p)
      left_[g] = x;
    else
      right_[g] = x;
  }
  parent_[x] = g;
  if (x_is_left) {
    right_[x] = p;
    left_[p] = b;
  } else {
    left_[x] = p;
    right_[p] = b;
  }
  parent_[p] = x;
  if (b != -1) parent_[b] = p;
  Pull(p);
  Pull(x);
}

void LinkCutTree::Splay(int x) {
  // Push pending adds from the splay root down to x before rotating.
  static thread_local std::vector<int> stack;
  stack.clear();
  for (int y = x;; y = parent_[y]) {
    stack.push_back(y);
    if (IsSplayRoot(y)) break;
  }
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) Push(*it);
  while (!IsSplayRoot(x)) {
    int p = parent_[x];
    if (!IsSplayRoot(p)) {
      if ((left_[parent_[p]] == p) == (left_[p] == x))
        Rotate(p);
      else
        Rotate(x);
    }
    Rotate(x);
  }
}

void LinkCutTree::Access(int x) {
  int last = -1;
  for (int y = x; y != -1; y = parent_[y]) {
    Splay(y);
    right_[y] = last;
    Pull(y);
    last = y;
  }
  Splay(x);
}

void LinkCutTree::Link(Vertex x, Vertex parent, CapacityT flow,
                       CapacityT weight, Edge id) {
  assert(!linked_[x]);
  Access(x);
  assert(left_[x] == -1 && "x must be the root of its tree");
  Access(parent);
  parent_[x] = parent;
  flow_[x] = flow;
  kept_[x] = 0;
  weight_[x] = weight;
  id_[x] = id;
  linked_[x] = 1;
  Pull(x);
}

LinkCutTree::EdgeVals LinkCutTree::CutAbove(Vertex x) {
  assert(linked_[x]);
  Access(x);
  EdgeVals out{flow_[x], kept_[x], id_[x]};
  int l = left_[x];
  left_[x] = -1;
  parent_[l] = -1;
  flow_[x] = kNoFlow;
  kept_[x] = 0;
  weight_[x] = 0;
  id_[x] = -1;
  linked_[x] = 0;
  Pull(x);
  return out;
}

Vertex LinkCutTree::FindRoot(Vertex x) {
  Access(x);
  int v = x;
  while (left_[v] != -1) {
    Push(v);
    v = left_[v];
  }
  Splay(v);
  return v;
}

std::pair<CapacityT, Vertex> LinkCutTree::PathMinArg(Vertex x) {
  Access(x);
  CapacityT target = min_flow_[x];
  int v = x;
  // Leftmost attaining edge sits closest to the root.
  for (;;) {
    Push(v);
    if (left_[v] != -1 && min_flow_[left_[v]] == target) {
      v = left_[v];
    } else if (flow_[v] == target) {
      break;
    } else {
      v = right_[v];
    }
  }
  Splay(v);
  return {target, v};
}

void LinkCutTree::PathAdd(Vertex x, CapacityT dflow, CapacityT dkept) {
  Access(x);
  Apply(x, dflow, dkept);
}

CapacityT LinkCutTree::PathWeightSum(Vertex x) {
  Access(x);
  return sum_weight_[x];
}

LinkCutTree::EdgeVals LinkCutTree::ReadEdge(Vertex x) {
  Access(x);
  return EdgeVals{flow_[x], kept_[x], id_[x]};
}

}  // namespace hierflow
