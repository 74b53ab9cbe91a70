#pragma once

#include <vector>

#include "hierflow/cut_matching.h"
#include "hierflow/shortcut.h"

namespace hierflow {

/**
 * One certified piece of a weak decomposition.
 *
 * The piece is the shortcut graph induced on a subset of the base
 * vertices of the graph the decomposition ran on; vertex_map and
 * edge_map translate its ids back. terminal marks the piece's share of
 * the decomposed edge set, f_prime the certified subset. witness keeps
 * the matchings backing the certificate and h_leaf the weight bound the
 * witness-guaranteed routing paths satisfy inside the piece.
 */
struct DecompLeaf {
  ShortcutGraph sg;
  ShortcutWeights ws;
  RespectingOrder order;
  std::vector<Vertex> vertex_map;  // piece base id -> outer base id, ascending
  std::vector<Edge> edge_map;      // piece shortcut edge -> outer shortcut edge
  std::vector<bool> terminal;      // piece base edges
  std::vector<bool> f_prime;       // certified subset of terminal
  CMGWitness witness;
  CapacityT h_leaf = 0;

  // Piece id of an outer base vertex, or -1 when it lies elsewhere.
  Vertex LocalVertex(Vertex outer) const;
};

// Progress record of one recursion node, for tests and tracing.
struct DecompStep {
  int depth = 0;
  int n = 0;
  bool split = false;          // a balanced cut divided the piece
  CapacityT vol = 0;           // terminal volume of the piece, plain scale
  CapacityT cut_capacity = 0;  // capacity removed by the split, scale q
};

/**
 * Output of one decomposition round. e_next flags the base edges that
 * leave the decomposed set: the cheaper crossing direction of every
 * split, plus the terminal edges each leaf failed to certify. Every
 * certified edge lies inside exactly one leaf, and a strongly connected
 * component of the base graph minus e_next never straddles two leaves.
 * Terminal edges between leaves against the removed direction stay out
 * of both e_next and the leaves; they cross components, so no routed
 * demand ever relies on them.
 */
struct DecompResult {
  std::vector<bool> e_next;
  std::vector<DecompLeaf> leaves;
  std::vector<DecompStep> steps;
  int max_depth = 0;
  CapacityT phi_inv = 0;           // sparsity bound the games ran with
  CapacityT top_capacity = 0;      // plain capacity of the decomposed set
  CapacityT next_capacity = 0;     // plain capacity of e_next
};

struct DecompOptions {
  CapacityT delta_inv = 8;  // balance slack; 0 makes any cut balanced
  bool delta_auto = false;  // derive the slack from each piece's size
  int game_rounds = -1;     // fixed round count; -1 picks per piece
  int c_depth = 8;          // recursion depth allowance multiplier
  bool keep_terms = false;
  std::ostream* trace = nullptr;
};

/**
 * Converts a surviving vertex weight into an edge subset: keeps the
 * terminal edges all of whose endpoints retain more than half their
 * terminal volume. Requires dprime <= vol_F entry-wise and total mass
 * at least 0.8 of the terminal volume (std::invalid_argument below
 * that). The kept set F' satisfies vol_{F'} <= 2 dprime entry-wise and
 * c(F') >= 0.2 c(F).
 */
std::vector<bool> VertexWeightToEdges(const ShortcutGraph& sg,
                                      const std::vector<bool>& terminal,
                                      const Measure& dprime);

/**
 * Splits the terminal edges into certified leaves plus e_next. Each
 * piece plays the cut-matching game: a balanced sparse cut removes the
 * cheaper crossing direction and recurses on both sides, a completed
 * game keeps the terminal edges supported by the surviving measure and
 * records the piece as a leaf. phi_inv bounds the sparsity of the cuts
 * the games may act on.
 */
DecompResult WeakExpanderDecomposition(const ShortcutGraph& sg,
                                       const ShortcutWeights& ws,
                                       const RespectingOrder& order,
                                       const std::vector<bool>& terminal,
                                       CapacityT phi_inv, Rng& rng,
                                       const DecompOptions& opt = {});

struct LeafRouting {
  std::vector<CapacityT> flow;   // scale z, on leaf.sg.g edges
  int rounds = 0;
  CapacityT phi_inv = 0;  // realized budget sparsity, >= the requested one
};

/**
 * Routes a demand inside a certified leaf. d lives on the leaf's own
 * vertices at scale z and must respect kappa times the certified
 * volume entry-wise (std::invalid_argument otherwise; Steiner roots
 * have volume zero). The flow comes from repeated push-relabel runs at
 * weight budget h_leaf, capped edge-wise so the total stays within
 * kappa * phi_inv times the plain capacity, rounded up. Whenever a run
 * routes less than a sixth of what was left, the budget was too tight
 * for the remainder and doubles; the returned phi_inv is the final
 * value, so the flow is bounded by the requested budget exactly when
 * phi_inv came back unchanged.
 */
LeafRouting RouteLeafDemand(const DecompLeaf& leaf, const Demand& d,
                            CapacityT kappa, CapacityT z, CapacityT phi_inv);

}  // namespace hierflow
