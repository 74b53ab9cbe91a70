#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <limits>
#include <random>
#include <vector>

#include "hierflow/flow.h"
#include "hierflow/push_relabel.h"
#include "testutil.h"

using namespace hierflow;
using hftest::TRng;

namespace {

constexpr long long kFar = std::numeric_limits<long long>::max() / 4;

// Exact residual w-distances from every unsaturated source, by plain
// relaxation over forward arcs with spare capacity and backward arcs that
// carry flow. Slow second opinion for the separation and label checks.
std::vector<long long> ResidualDist(const Graph& g,
                                    const std::vector<CapacityT>& cap,
                                    const std::vector<CapacityT>& w,
                                    const PRResult& pr) {
  std::vector<long long> dist(g.n, kFar);
  for (Vertex v : g.Vertices())
    if (pr.residual.source[v] > 0) dist[v] = 0;
  for (int pass = 0; pass < g.n; ++pass) {
    bool changed = false;
    for (Edge e : g.Edges()) {
      Vertex a = g.tail[e], b = g.head[e];
      if (a == b) continue;
      if (cap[e] > pr.flow[e] && dist[a] + w[e] < dist[b]) {
        dist[b] = dist[a] + w[e];
        changed = true;
      }
      if (pr.flow[e] > 0 && dist[b] + w[e] < dist[a]) {
        dist[a] = dist[b] + w[e];
        changed = true;
      }
    }
    if (!changed) break;
  }
  return dist;
}

// Checks every promise the result carries: feasibility against caps and
// demand, residual bookkeeping, the 3h separation, the length bound, the
// label window and the work accounting.
void CheckContracts(const Graph& g, const std::vector<CapacityT>& cap,
                    const Demand& d, const std::vector<CapacityT>& w,
                    CapacityT h, const PRResult& pr) {
  auto bad = CheckFeasible(g, cap, d, pr.flow, 1, 1);
  CHECK_MESSAGE(!bad.has_value(), bad.value_or(""));

  Demand ex = ResidualDemand(g, d, pr.flow);
  REQUIRE(ex.source == pr.residual.source);
  REQUIRE(ex.sink == pr.residual.sink);
  CHECK(pr.value == FlowValue(g, d, pr.flow));
  CHECK(pr.value == d.TotalSource() - ex.TotalSource());

  std::vector<long long> dist = ResidualDist(g, cap, w, pr);
  for (Vertex v : g.Vertices())
    if (ex.sink[v] > 0) CHECK(dist[v] > 3 * h);

  __int128 len = 0;
  for (Edge e : g.Edges()) len += static_cast<__int128>(pr.flow[e]) * w[e];
  CHECK((len <= static_cast<__int128>(3) * h * pr.value));

  REQUIRE(static_cast<int>(pr.label.size()) == g.n);
  for (Vertex v : g.Vertices()) {
    long long want = dist[v] <= 3 * h ? dist[v] : 9 * h;
    CHECK(pr.label[v] == want);
  }

  CHECK(pr.phases >= 1);
  CHECK(pr.edge_scans <= 4LL * (pr.phases + 1) * (g.m + g.n));
}

Demand SprinkleDemand(TRng& rng, int n, CapacityT maxd) {
  std::uniform_int_distribution<int> roll(0, 2);
  std::uniform_int_distribution<CapacityT> amt(0, maxd);
  Demand d(n);
  for (Vertex v = 0; v < n; ++v) {
    if (roll(rng) == 0) d.source[v] = amt(rng);
    if (roll(rng) == 0) d.sink[v] = amt(rng);
  }
  return d;
}

}  // namespace

TEST_CASE("a short path routes completely") {
  Graph g(3);
  g.AddEdge(0, 1, 10);
  g.AddEdge(1, 2, 10);
  Demand d(3);
  d.source[0] = 7;
  d.sink[2] = 7;
  std::vector<CapacityT> w = {1, 1};
  PRResult pr = WeightedPushRelabel(g, g.capacity, d, w, 4);
  CHECK(pr.value == 7);
  CHECK(pr.flow == std::vector<CapacityT>{7, 7});
  CheckContracts(g, g.capacity, d, w, 4, pr);
}

TEST_CASE("zero demand yields the zero flow") {
  TRng rng(11);
  Graph g = hftest::RandomGraph(rng, 6, 12, 9);
  std::vector<CapacityT> w(g.m, 2);
  Demand d(6);
  PRResult pr = WeightedPushRelabel(g, g.capacity, d, w, 5);
  CHECK(pr.value == 0);
  CHECK(pr.flow == std::vector<CapacityT>(g.m, 0));
  for (Vertex v : g.Vertices()) CHECK(pr.label[v] == 45);
  CheckContracts(g, g.capacity, d, w, 5, pr);
}

TEST_CASE("random diffusion instances satisfy the advertised contracts") {
  TRng rng(20240817);
  std::uniform_int_distribution<int> pick_n(2, 14);
  std::uniform_int_distribution<int> pick_m(1, 40);
  std::array<CapacityT, 4> hs = {0, 1, 3, 12};
  for (int it = 0; it < 300; ++it) {
    int n = pick_n(rng);
    Graph g = hftest::RandomGraph(rng, n, pick_m(rng), 50);
    std::vector<CapacityT> w(g.m);
    std::uniform_int_distribution<CapacityT> pw(0, 5);
    for (Edge e : g.Edges()) w[e] = pw(rng);
    Demand d = SprinkleDemand(rng, n, 40);
    CapacityT h = hs[it % hs.size()];
    PRResult pr = WeightedPushRelabel(g, g.capacity, d, w, h);
    CheckContracts(g, g.capacity, d, w, h, pr);
  }
}

TEST_CASE("zero weights force a maximum flow") {
  TRng rng(7);
  std::uniform_int_distribution<int> pick_n(2, 12);
  std::uniform_int_distribution<int> pick_m(1, 30);
  for (int it = 0; it < 200; ++it) {
    int n = pick_n(rng);
    Graph g = hftest::RandomGraph(rng, n, pick_m(rng), 30);
    std::vector<CapacityT> w(g.m, 0);
    Demand d = SprinkleDemand(rng, n, 25);
    CapacityT h = it % 2 == 0 ? 0 : 3;
    PRResult pr = WeightedPushRelabel(g, g.capacity, d, w, h);
    CheckContracts(g, g.capacity, d, w, h, pr);
    CHECK(pr.value == hftest::RefDemandMaxflow(g, g.capacity, d));
  }
}

TEST_CASE("layered instances come within a sixth of the optimum") {
  TRng rng(99);
  std::uniform_int_distribution<int> pick_n(2, 12);
  std::uniform_int_distribution<int> pick_m(1, 30);
  std::uniform_int_distribution<CapacityT> pick_cap(1, 20);
  for (int it = 0; it < 200; ++it) {
    int n = pick_n(rng);
    int m = pick_m(rng);
    Graph g(n);
    std::vector<CapacityT> w;
    std::uniform_int_distribution<int> pick_u(0, n - 2);
    for (int i = 0; i < m; ++i) {
      int u = pick_u(rng);
      int v = std::uniform_int_distribution<int>(u + 1, n - 1)(rng);
      g.AddEdge(u, v, pick_cap(rng));
      w.push_back(v - u);
    }
    Demand d = SprinkleDemand(rng, n, 15);
    CapacityT h = n;
    PRResult pr = WeightedPushRelabel(g, g.capacity, d, w, h);
    CheckContracts(g, g.capacity, d, w, h, pr);
    CapacityT fstar = hftest::RefDemandMaxflow(g, g.capacity, d);
    CHECK(pr.value <= fstar);
    CHECK(6 * pr.value >= fstar);
  }
}

TEST_CASE("repeated runs are identical") {
  TRng rng(3);
  for (int it = 0; it < 20; ++it) {
    Graph g = hftest::RandomGraph(rng, 9, 25, 40);
    std::vector<CapacityT> w(g.m);
    std::uniform_int_distribution<CapacityT> pw(0, 4);
    for (Edge e : g.Edges()) w[e] = pw(rng);
    Demand d = SprinkleDemand(rng, 9, 30);
    PRResult a = WeightedPushRelabel(g, g.capacity, d, w, 6);
    PRResult b = WeightedPushRelabel(g, g.capacity, d, w, 6);
    CHECK(a.flow == b.flow);
    CHECK(a.label == b.label);
    CHECK(a.value == b.value);
    CHECK(a.phases == b.phases);
    CHECK(a.edge_scans == b.edge_scans);
  }
}

TEST_CASE("the unbounded capacity sentinel is clamped safely") {
  Graph g(4);
  g.AddEdge(0, 1, kInfCapacity);
  g.AddEdge(1, 2, kInfCapacity);
  g.AddEdge(2, 3, kInfCapacity);
  std::vector<CapacityT> w = {1, 1, 1};
  Demand d(4);
  d.source[0] = 1000;
  d.sink[3] = 1000;
  PRResult pr = WeightedPushRelabel(g, g.capacity, d, w, 10);
  CHECK(pr.value == 1000);
  CheckContracts(g, g.capacity, d, w, 10, pr);

  SUBCASE("a finite middle edge stays the bottleneck") {
    Graph b(4);
    b.AddEdge(0, 1, kInfCapacity);
    b.AddEdge(1, 2, 5);
    b.AddEdge(2, 3, kInfCapacity);
    PRResult pb = WeightedPushRelabel(b, b.capacity, d, w, 10);
    CHECK(pb.value == 5);
    CheckContracts(b, b.capacity, d, w, 10, pb);
  }
}
