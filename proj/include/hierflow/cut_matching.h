#pragma once

#include <iosfwd>
#include <optional>

#include "hierflow/rng.h"
#include "hierflow/sparse_cut.h"

namespace hierflow {

// Nonnegative vertex weights at a fixed integer scale, indexed by base
// vertex. Star roots carry no measure.
struct Measure {
  CapacityT scale = 1;
  std::vector<CapacityT> value;

  CapacityT Total() const {
    CapacityT s = 0;
    for (CapacityT x : value) s += x;
    return s;
  }
};

/**
 * A pair of capacitated matchings between the sides of a bipartition:
 * forward edges run P to Q, backward edges Q to P, both built from path
 * terms, so parallel edges may repeat an endpoint pair. d_fwd holds, per
 * vertex, the amount the forward matching routes out of P respectively
 * into Q, and d_bwd the same for the backward matching; both are bounded
 * by the round demand entry-wise and fall short of its total by at most
 * slightly more than the slack allowance.
 */
struct BiMatching {
  struct MEdge {
    Vertex from = -1, to = -1;
    CapacityT cap = 0;  // scale q
  };

  std::vector<MEdge> forward, backward;
  std::vector<CapacityT> d_fwd, d_bwd;  // per base vertex, scale q
  CapacityT slack = 0;                  // allowance delta * vol_F(V)
};

struct MatchingResult {
  std::optional<CutResult> cut;  // balanced sparse cut; side over all of sg.g
  BiMatching matching;           // filled when no cut is returned
  // Sparse but unbalanced cut from a partially routed round, kept so the
  // game can end through it when removals deplete the alive measure.
  std::optional<CutResult> spare_cut;
  std::vector<PathDecomposition::Term> fwd_terms, bwd_terms;
  CapacityT threshold = 0;  // weight bound the terms satisfy
};

// Shortcut graph with every edge reversed, sharing ids, capacities and
// weights with the original, plus the mirrored respecting order.
struct ReversedShortcut {
  ShortcutGraph sg;
  RespectingOrder order;
};

ReversedShortcut ReverseShortcut(const ShortcutGraph& sg,
                                 const RespectingOrder& order);

/**
 * One oracle call of the game. Routes the round demand (sources on P,
 * sinks on Q, amounts dprime) forward in sg and backward in rev at
 * congestion ceil(50 / phi) each, phi = 1 / phi_inv. A stalled routing
 * whose cut has min-side terminal volume at least (delta/2) vol_F(V),
 * delta = 1 / delta_inv, aborts the call and returns that cut, which is
 * then phi-sparse: phi_inv * crossing capacity < min-side volume. Other
 * cuts are ignored and the kept path terms become the matchings.
 *
 * dprime must be supported on the bipartition with equal mass on both
 * sides; delta_inv = 0 means a zero slack allowance and makes any cut
 * count as balanced.
 */
MatchingResult MatchingPlayer(const ShortcutGraph& sg,
                              const ShortcutWeights& ws,
                              const RespectingOrder& order,
                              const ReversedShortcut& rev,
                              const std::vector<bool>& terminal,
                              const std::vector<char>& in_p,
                              const Measure& dprime, CapacityT phi_inv,
                              CapacityT delta_inv);

// A measure-balanced bipartition of the alive support. The vertex the
// weighted median splits joins one side whole with its round demand
// shrunk by `reduction`, so dprime sums equally on both sides.
struct Bipartition {
  std::vector<char> in_p;
  Measure dprime;
  CapacityT reduction = 0;
  Vertex straddler = -1;
};

// Splits the alive support at the measure-weighted median of the
// projections, ties by vertex id. Throws std::invalid_argument when the
// alive measure is identically zero.
Bipartition CutPlayerStep(const std::vector<double>& projection,
                          const Measure& alive);

struct CMGRound {
  BiMatching matching;
  // Per-round path terms, retained only when keep_terms is set.
  std::vector<PathDecomposition::Term> fwd_terms, bwd_terms;
};

struct CMGWitness {
  Measure start;            // vol_F at scale q
  Measure alive;            // final alive measure
  std::vector<CMGRound> rounds;
  int T = 0;                // rounds actually played
  CapacityT threshold = 0;  // weight bound of every retained term
};

struct CMGResult {
  std::optional<CutResult> cut;  // balanced sparse cut that aborted the game
  CMGWitness witness;            // meaningful when no cut was found
};

struct CMGOptions {
  bool keep_terms = false;
  int c_refresh = 1;          // rounds between fresh random directions
  std::ostream* trace = nullptr;  // JSON line per round when set
};

// Round count 4 ceil(log2(n)^2) and removal rate 1 / (64 ceil(log2(n)^2)).
int DefaultGameRounds(int n);
CapacityT DefaultDeltaInv(int n);

/**
 * The randomized non-stop game over the measure d = vol_F. Every round picks
 * a random projection, bipartitions the alive measure at its weighted
 * median and asks MatchingPlayer for matchings; a balanced sparse cut
 * aborts the game. Otherwise every vertex keeps the minimum of what it
 * sent and received, plus whatever the round never asked of it, and
 * drops to zero once below half its starting measure. The witness is the
 * union of the matchings, under which the surviving measure mixes within
 * T hops.
 */
CMGResult NonStopCutMatching(const ShortcutGraph& sg,
                             const ShortcutWeights& ws,
                             const RespectingOrder& order,
                             const std::vector<bool>& terminal,
                             CapacityT phi_inv, CapacityT delta_inv, int T,
                             Rng& rng, const CMGOptions& opt = {});

}  // namespace hierflow
