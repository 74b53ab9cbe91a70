#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hierflow/flow.h"
#include "hierflow/hierarchy.h"
#include "hierflow/shortcut.h"
#include "testutil.h"

using namespace hierflow;
using hftest::TRng;

namespace {

struct Instance {
  Graph g;
  std::vector<int> level;
  int levels = 0;
};

Instance RandomLevelled(TRng& rng, int maxn, int maxm, int maxlvl) {
  Instance ins;
  int n = std::uniform_int_distribution<int>(1, maxn)(rng);
  int m = std::uniform_int_distribution<int>(0, maxm)(rng);
  ins.levels = std::uniform_int_distribution<int>(1, maxlvl)(rng);
  ins.g = Graph(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> lvl(1, ins.levels);
  std::uniform_int_distribution<CapacityT> cap(1, 20);
  for (int i = 0; i < m; ++i) {
    ins.g.AddEdge(pick(rng), pick(rng), cap(rng));
    ins.level.push_back(lvl(rng));
  }
  return ins;
}

// Partition check against plain mutual reachability on the filtered graph.
void CheckLevelPartition(const Graph& g, const std::vector<int>& level,
                         const Hierarchy& h, int i) {
  Graph filtered(g.n);
  for (Edge e : g.Edges())
    if (level[e] <= i) filtered.AddEdge(g.tail[e], g.head[e], 1);
  auto reach = hftest::Reachable(filtered);
  for (Vertex u : g.Vertices())
    for (Vertex v : g.Vertices())
      CHECK((h.comp[i][u] == h.comp[i][v]) == (reach[u][v] && reach[v][u]));
}

}  // namespace

TEST_CASE("components nest level by level") {
  TRng rng(71);
  for (int it = 0; it < 60; ++it) {
    Instance ins = RandomLevelled(rng, 9, 22, 3);
    Hierarchy h = BuildHierarchy(ins.g, ins.level, ins.levels);
    CHECK(h.levels == ins.levels);
    REQUIRE(static_cast<int>(h.comp.size()) == ins.levels + 1);
    REQUIRE(static_cast<int>(h.members.size()) == ins.levels + 1);

    for (Vertex v : ins.g.Vertices()) CHECK(h.comp[0][v] == v);

    for (int i = 0; i <= ins.levels; ++i) {
      int k = h.NumComponents(i);
      std::vector<int> count(k, 0);
      for (Vertex v : ins.g.Vertices()) {
        REQUIRE(0 <= h.comp[i][v]);
        REQUIRE(h.comp[i][v] < k);
        ++count[h.comp[i][v]];
      }
      for (int c = 0; c < k; ++c) {
        CHECK(count[c] == static_cast<int>(h.members[i][c].size()));
        CHECK(count[c] > 0);
        for (Vertex v : h.members[i][c]) CHECK(h.comp[i][v] == c);
      }
      if (i >= 1) CheckLevelPartition(ins.g, ins.level, h, i);
      if (i < ins.levels) {
        for (Vertex u : ins.g.Vertices())
          for (Vertex v : ins.g.Vertices())
            if (h.comp[i][u] == h.comp[i][v])
              CHECK(h.comp[i + 1][u] == h.comp[i + 1][v]);
      }
      for (Edge e : ins.g.Edges())
        if (ins.level[e] <= i &&
            h.comp[i][ins.g.tail[e]] != h.comp[i][ins.g.head[e]])
          CHECK(h.comp[i][ins.g.tail[e]] < h.comp[i][ins.g.head[e]]);
    }
  }
}

TEST_CASE("respecting order keeps components contiguous and forward") {
  TRng rng(73);
  for (int it = 0; it < 60; ++it) {
    Instance ins = RandomLevelled(rng, 9, 22, 3);
    Hierarchy h = BuildHierarchy(ins.g, ins.level, ins.levels);
    RespectingOrder order = ComputeRespectingOrder(ins.g, h);

    REQUIRE(static_cast<int>(order.rank.size()) == ins.g.n);
    for (int r = 0; r < ins.g.n; ++r)
      CHECK(order.rank[order.by_rank[r]] == r);

    for (int i = 1; i <= ins.levels; ++i) {
      for (int c = 0; c < h.NumComponents(i); ++c) {
        int lo = ins.g.n, hi = -1;
        for (Vertex v : h.members[i][c]) {
          lo = std::min(lo, order.rank[v]);
          hi = std::max(hi, order.rank[v]);
        }
        CHECK(hi - lo + 1 == static_cast<int>(h.members[i][c].size()));
      }
    }
    for (Edge e : ins.g.Edges())
      for (int i = ins.level[e]; i <= ins.levels; ++i)
        if (h.comp[i][ins.g.tail[e]] != h.comp[i][ins.g.head[e]])
          CHECK(order.rank[ins.g.tail[e]] < order.rank[ins.g.head[e]]);
  }
}

TEST_CASE("a non laminar hierarchy is rejected") {
  Graph g(3);
  Hierarchy h;
  h.levels = 2;
  h.comp = {{0, 1, 2}, {0, 0, 1}, {0, 1, 1}};
  h.members = {{{0}, {1}, {2}}, {{0, 1}, {2}}, {{0}, {1, 2}}};
  CHECK_THROWS_AS(ComputeRespectingOrder(g, h), std::invalid_argument);
}

TEST_CASE("shortcut stars mirror the levelled edges") {
  TRng rng(79);
  for (int it = 0; it < 40; ++it) {
    Instance ins = RandomLevelled(rng, 8, 20, 3);
    Hierarchy h = BuildHierarchy(ins.g, ins.level, ins.levels);
    bool skip_top = it % 2 == 1;
    CapacityT q = 7;
    ShortcutGraph sg = BuildShortcut(ins.g, h, q, skip_top);

    CHECK(sg.n_base == ins.g.n);
    CHECK(sg.m_base == ins.g.m);
    CHECK(sg.q == q);
    CHECK(sg.g.n == sg.n_base + static_cast<int>(sg.stars.size()));
    CHECK(sg.g.m == sg.m_base + 2 * [&] {
      int leaves = 0;
      for (const Star& s : sg.stars) leaves += s.leaves.size();
      return leaves;
    }());

    for (Edge e : ins.g.Edges()) {
      CHECK(sg.g.tail[e] == ins.g.tail[e]);
      CHECK(sg.g.head[e] == ins.g.head[e]);
      CHECK(sg.g.capacity[e] == ins.g.capacity[e] * q);
      CHECK(sg.star_of_edge[e] == -1);
      CHECK(sg.IsBaseEdge(e));
    }

    // The internal edges each (level, component) pair should own.
    std::map<std::pair<int, int>, std::vector<Edge>> want;
    for (Edge e : ins.g.Edges()) {
      int i = ins.level[e];
      if (skip_top && i == h.levels) continue;
      int c = h.comp[i][ins.g.tail[e]];
      if (h.comp[i][ins.g.head[e]] == c) want[{i, c}].push_back(e);
    }
    REQUIRE(sg.stars.size() == want.size());

    for (int si = 0; si < static_cast<int>(sg.stars.size()); ++si) {
      const Star& star = sg.stars[si];
      auto itw = want.find({star.level, star.comp});
      REQUIRE(itw != want.end());
      CHECK(star.root == sg.n_base + si);
      CHECK(sg.star_at[star.level][star.comp] == si);
      CHECK(sg.StarOfRoot(star.root) == si);
      CHECK(sg.IsRoot(star.root));

      std::set<Edge> got;
      REQUIRE(star.leaves.size() == star.leaf_edges.size());
      for (size_t k = 0; k < star.leaves.size(); ++k) {
        if (k > 0) CHECK(star.leaves[k - 1] < star.leaves[k]);
        CapacityT share = 0;
        for (Edge e : star.leaf_edges[k]) {
          CHECK(ins.g.tail[e] == star.leaves[k]);
          share += ins.g.capacity[e];
          got.insert(e);
        }
        Edge fl = star.from_leaf[k], tl = star.to_leaf[k];
        CHECK(sg.g.tail[fl] == star.leaves[k]);
        CHECK(sg.g.head[fl] == star.root);
        CHECK(sg.g.tail[tl] == star.root);
        CHECK(sg.g.head[tl] == star.leaves[k]);
        CHECK(sg.g.capacity[fl] == share);
        CHECK(sg.g.capacity[tl] == share);
        CHECK(sg.star_of_edge[fl] == si);
        CHECK(sg.star_of_edge[tl] == si);
      }
      CHECK(got == std::set<Edge>(itw->second.begin(), itw->second.end()));
    }
    if (skip_top)
      for (const Star& star : sg.stars) CHECK(star.level < h.levels);
  }
}

TEST_CASE("weights follow rank gaps and component sizes") {
  TRng rng(83);
  for (int it = 0; it < 30; ++it) {
    Instance ins = RandomLevelled(rng, 8, 18, 3);
    Hierarchy h = BuildHierarchy(ins.g, ins.level, ins.levels);
    RespectingOrder order = ComputeRespectingOrder(ins.g, h);
    ShortcutGraph sg = BuildShortcut(ins.g, h, 3, false);
    ShortcutWeights ws = ComputeWeights(sg, order);
    REQUIRE(static_cast<int>(ws.w.size()) == sg.g.m);
    double inv_base = 0, inv_star = 0;
    for (Edge e : sg.g.Edges()) {
      if (sg.IsBaseEdge(e)) {
        Vertex u = sg.g.tail[e], v = sg.g.head[e];
        CapacityT gap = u == v ? 1 : std::abs(order.rank[u] - order.rank[v]);
        CHECK(ws.w[e] == gap);
        inv_base += 1.0 / static_cast<double>(gap);
      } else {
        const Star& star = sg.stars[sg.star_of_edge[e]];
        CapacityT size = h.members[star.level][star.comp].size();
        CHECK(ws.w[e] == size);
        inv_star += 1.0 / static_cast<double>(size);
      }
    }
    CHECK(ws.inv_base == doctest::Approx(inv_base));
    CHECK(ws.inv_star == doctest::Approx(inv_star));
  }
}

TEST_CASE("split pieces map back onto the parent shortcut") {
  TRng rng(89);
  int done = 0;
  while (done < 30) {
    Instance ins = RandomLevelled(rng, 8, 20, 3);
    if (ins.g.n < 2) continue;
    ++done;
    Hierarchy h = BuildHierarchy(ins.g, ins.level, ins.levels);
    ShortcutGraph sg = BuildShortcut(ins.g, h, 5, false);

    std::vector<bool> side(ins.g.n, false);
    int inside = std::uniform_int_distribution<int>(1, ins.g.n - 1)(rng);
    for (int i = 0; i < inside; ++i) side[i] = true;
    ShortcutSplit split = SplitShortcut(sg, side);

    for (int p = 0; p < 2; ++p) {
      const ShortcutGraph& piece = split.piece[p];
      const Subgraph& sub = split.sub[p];
      const std::vector<Edge>& map = split.to_parent[p];
      REQUIRE(static_cast<int>(map.size()) == piece.g.m);

      for (Edge e : piece.g.Edges())
        CHECK(sg.g.capacity[map[e]] >= piece.g.capacity[e]);
      for (Edge e = 0; e < piece.m_base; ++e) {
        CHECK(map[e] == sub.edge_map[e]);
        CHECK(sg.g.tail[map[e]] == sub.vertex_map[piece.g.tail[e]]);
      }
      for (Edge e = piece.m_base; e < piece.g.m; ++e) {
        CHECK_FALSE(sg.IsBaseEdge(map[e]));
        const Star& target = sg.stars[sg.star_of_edge[map[e]]];
        const Star& from = piece.stars[piece.star_of_edge[e]];
        CHECK(target.level == from.level);
      }

      // An arbitrary edge flow on the piece routes the same net amount
      // through every surviving base vertex once mapped up.
      std::vector<CapacityT> pf(piece.g.m);
      for (Edge e : piece.g.Edges())
        pf[e] = std::uniform_int_distribution<CapacityT>(
            0, piece.g.capacity[e])(rng);
      std::vector<CapacityT> parent(sg.g.m, 0);
      AddPieceFlow(map, pf, parent);
      std::vector<CapacityT> piece_out = FlowOutDegree(piece.g, pf);
      std::vector<CapacityT> parent_out = FlowOutDegree(sg.g, parent);
      for (Vertex v = 0; v < piece.n_base; ++v)
        CHECK(piece_out[v] == parent_out[sub.vertex_map[v]]);
    }

    CHECK_THROWS_AS(SplitShortcut(sg, std::vector<bool>(ins.g.n, false)),
                    std::invalid_argument);
    CHECK_THROWS_AS(SplitShortcut(sg, std::vector<bool>(ins.g.n, true)),
                    std::invalid_argument);
  }
}
