#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hierflow/dimacs.h"
#include "hierflow/flow.h"
#include "hierflow/graph.h"
#include "hierflow/normalize.h"
#include "testutil.h"

using namespace hierflow;
using hftest::TRng;

namespace {

using hftest::Reachable;

void ExpectParseError(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  try {
    ParseDimacs(in);
    FAIL_CHECK("no error for: " << text);
  } catch (const ParseError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                  e.what());
  }
}

}  // namespace

TEST_CASE("edges keep dense insertion ids") {
  Graph g(3);
  CHECK(g.AddEdge(0, 1, 5) == 0);
  CHECK(g.AddEdge(1, 2, 7) == 1);
  CHECK(g.AddEdge(0, 1, 2) == 2);
  CHECK(g.AddEdge(2, 2, 1) == 3);
  CHECK(g.m == 4);
  CHECK(g.tail == std::vector<Vertex>{0, 1, 0, 2});
  CHECK(g.head == std::vector<Vertex>{1, 2, 1, 2});
  CHECK(g.out_edges[0] == std::vector<Edge>{0, 2});
  CHECK(g.in_edges[1] == std::vector<Edge>{0, 2});
  CHECK(g.out_edges[2] == std::vector<Edge>{3});
  CHECK(g.in_edges[2] == std::vector<Edge>{1, 3});
  CHECK(g.TotalCapacity() == 15);
}

TEST_CASE("reversal swaps endpoints edge by edge") {
  TRng rng(5);
  Graph g = hftest::RandomGraph(rng, 8, 20, 30, true);
  Graph r = g.Reverse();
  REQUIRE(r.m == g.m);
  for (Edge e : g.Edges()) {
    CHECK(r.tail[e] == g.head[e]);
    CHECK(r.head[e] == g.tail[e]);
    CHECK(r.capacity[e] == g.capacity[e]);
  }
  Graph rr = r.Reverse();
  CHECK(rr.tail == g.tail);
  CHECK(rr.head == g.head);
}

TEST_CASE("component ids follow a topological order") {
  TRng rng(17);
  for (int it = 0; it < 100; ++it) {
    int n = std::uniform_int_distribution<int>(1, 10)(rng);
    int m = std::uniform_int_distribution<int>(0, 25)(rng);
    Graph g(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < m; ++i) g.AddEdge(pick(rng), pick(rng), 1);
    std::vector<int> comp = g.SCC();
    auto reach = Reachable(g);
    int top = 0;
    for (Vertex v : g.Vertices()) top = std::max(top, comp[v]);
    std::vector<bool> seen(top + 1, false);
    for (Vertex v : g.Vertices()) {
      REQUIRE(comp[v] >= 0);
      seen[comp[v]] = true;
      for (Vertex u : g.Vertices())
        CHECK((comp[u] == comp[v]) == (reach[u][v] && reach[v][u]));
    }
    for (bool s : seen) CHECK(s);
    for (Edge e : g.Edges())
      if (comp[g.tail[e]] != comp[g.head[e]])
        CHECK(comp[g.tail[e]] < comp[g.head[e]]);
  }
}

TEST_CASE("masked components ignore dropped edges") {
  TRng rng(23);
  for (int it = 0; it < 50; ++it) {
    Graph g = hftest::RandomGraph(rng, 7, 18, 4, true);
    std::vector<bool> keep(g.m);
    for (Edge e : g.Edges()) keep[e] = rng() % 2 == 0;
    Graph filtered(g.n);
    for (Edge e : g.Edges())
      if (keep[e]) filtered.AddEdge(g.tail[e], g.head[e], g.capacity[e]);
    CHECK(g.SCC(keep) == filtered.SCC());
  }
}

TEST_CASE("vertex subgraphs remember their origin") {
  TRng rng(31);
  Graph g = hftest::RandomGraph(rng, 9, 24, 12, true);
  std::vector<bool> side(g.n);
  for (Vertex v : g.Vertices()) side[v] = rng() % 2 == 0;
  Subgraph s = VertexSubgraph(g, side);
  for (Vertex v : g.Vertices()) {
    if (side[v]) {
      REQUIRE(s.inv_vertex_map[v] >= 0);
      CHECK(s.vertex_map[s.inv_vertex_map[v]] == v);
    } else {
      CHECK(s.inv_vertex_map[v] == -1);
    }
  }
  int want = 0;
  for (Edge e : g.Edges())
    if (side[g.tail[e]] && side[g.head[e]]) ++want;
  REQUIRE(s.g.m == want);
  for (Edge e : s.g.Edges()) {
    Edge pe = s.edge_map[e];
    CHECK(s.vertex_map[s.g.tail[e]] == g.tail[pe]);
    CHECK(s.vertex_map[s.g.head[e]] == g.head[pe]);
    CHECK(s.g.capacity[e] == g.capacity[pe]);
    if (e > 0) CHECK(s.edge_map[e - 1] < pe);
  }
}

TEST_CASE("dimacs input tolerates comments and drops dead arcs") {
  std::istringstream in(
      "c sample\n"
      "\n"
      "p max 4 3\n"
      "n 1 s\n"
      "n 4 t\n"
      "a 1 2 10\n"
      "c mid comment\n"
      "a 2 3 0\n"
      "a 3 4 6\n");
  DimacsInstance inst = ParseDimacs(in);
  CHECK(inst.g.n == 4);
  CHECK(inst.g.m == 2);
  CHECK(inst.source == 0);
  CHECK(inst.sink == 3);
  CHECK(inst.g.tail == std::vector<Vertex>{0, 2});
  CHECK(inst.g.head == std::vector<Vertex>{1, 3});
  CHECK(inst.g.capacity == std::vector<CapacityT>{10, 6});
}

TEST_CASE("dimacs round trips through write and parse") {
  TRng rng(41);
  for (int it = 0; it < 30; ++it) {
    DimacsInstance inst;
    int n = std::uniform_int_distribution<int>(2, 12)(rng);
    inst.g = hftest::RandomGraph(rng, n, 20, 1000000);
    inst.source = 0;
    inst.sink = n - 1;
    std::ostringstream out;
    WriteDimacs(inst, out);
    std::istringstream back(out.str());
    DimacsInstance again = ParseDimacs(back);
    CHECK(again.g.n == inst.g.n);
    CHECK(again.source == inst.source);
    CHECK(again.sink == inst.sink);
    CHECK(again.g.tail == inst.g.tail);
    CHECK(again.g.head == inst.g.head);
    CHECK(again.g.capacity == inst.g.capacity);
  }
}

TEST_CASE("dimacs rejects malformed input") {
  ExpectParseError("p wat 3 1\na 1 2 5\nn 1 s\nn 3 t\n", "must be 'max'");
  ExpectParseError("p max 3 0\np max 3 0\nn 1 s\nn 3 t\n", "duplicate");
  ExpectParseError("p max 0 0\n", "positive");
  ExpectParseError("a 1 2 5\n", "before problem");
  ExpectParseError("n 1 s\n", "before problem");
  ExpectParseError("p max 3 1\nn 9 s\nn 3 t\na 1 2 5\n", "out of range");
  ExpectParseError("p max 3 1\nn 1 s\nn 1 s\na 1 2 5\n", "duplicate source");
  ExpectParseError("p max 3 1\nn 1 x\nn 3 t\na 1 2 5\n", "role");
  ExpectParseError("p max 3 1\nn 1 s\nn 3 t\na 1 9 5\n", "out of range");
  ExpectParseError("p max 3 1\nn 1 s\nn 3 t\na 1 2 -4\n", "negative");
  ExpectParseError(
      "p max 3 1\nn 1 s\nn 3 t\na 1 2 4611686018427387904\n", "overflow");
  ExpectParseError("p max 3 1\nn 1 s\nn 3 t\na 1 2 5 9\n", "extra tokens");
  ExpectParseError("p max 3 1\nn 1 s\nn 3 t\nq 1 2 5\n", "unknown");
  ExpectParseError("p max 3 2\nn 1 s\nn 3 t\na 1 2 5\n", "mismatch");
  ExpectParseError("p max 3 1\nn 3 t\na 1 2 5\n", "missing source");
  ExpectParseError("p max 3 1\nn 1 s\na 1 2 5\n", "missing sink");
  ExpectParseError("c nothing here\n", "missing problem");
}

TEST_CASE("capacity scaling stops under the quadratic bound") {
  SUBCASE("small capacities need no levels") {
    Graph g(3);
    g.AddEdge(0, 1, 9);
    g.AddEdge(1, 2, 3);
    ScalingPlan plan = NormalizeCapacities(g);
    CHECK(plan.levels == 0);
    CHECK(plan.bound == 9);
  }
  SUBCASE("random capacities land at or under the bound") {
    TRng rng(53);
    for (int it = 0; it < 60; ++it) {
      int n = std::uniform_int_distribution<int>(1, 20)(rng);
      CapacityT maxc = std::uniform_int_distribution<CapacityT>(
          1, 1LL << 61)(rng);
      Graph g = hftest::RandomGraph(rng, std::max(n, 2), 15, maxc);
      ScalingPlan plan = NormalizeCapacities(g);
      CapacityT top = 0;
      for (Edge e : g.Edges()) top = std::max(top, g.capacity[e]);
      CHECK((top >> plan.levels) <= plan.bound);
      if (plan.levels > 0) CHECK((top >> (plan.levels - 1)) > plan.bound);
      Graph coarse = CapacitiesAtLevel(g, plan.levels);
      for (Edge e : g.Edges()) {
        CHECK(coarse.capacity[e] == g.capacity[e] >> plan.levels);
        CHECK(coarse.capacity[e] <= plan.bound);
      }
    }
  }
  SUBCASE("level zero is the original graph") {
    TRng rng(59);
    Graph g = hftest::RandomGraph(rng, 6, 10, 1000);
    Graph same = CapacitiesAtLevel(g, 0);
    CHECK(same.capacity == g.capacity);
  }
}

TEST_CASE("flow json round trips against its graph") {
  TRng rng(61);
  Graph g = hftest::RandomGraph(rng, 7, 15, 90);
  ScaledFlow f(12, g.m);
  for (Edge e : g.Edges()) f.value[e] = rng() % 200;
  std::string text = FlowToJson(g, f, 77);
  CapacityT value = -1;
  ScaledFlow back = FlowFromJson(g, text, &value);
  CHECK(back.scale == f.scale);
  CHECK(back.value == f.value);
  CHECK(value == 77);

  SUBCASE("a mismatched graph is rejected") {
    Graph other = hftest::RandomGraph(rng, 7, 15, 90);
    bool same = other.tail == g.tail && other.head == g.head;
    if (!same) CHECK_THROWS_AS(FlowFromJson(other, text, nullptr),
                               std::runtime_error);
    Graph bigger(g.n);
    for (Edge e : g.Edges()) bigger.AddEdge(g.tail[e], g.head[e], 1);
    bigger.AddEdge(0, 1, 1);
    CHECK_THROWS_AS(FlowFromJson(bigger, text, nullptr), std::runtime_error);
  }
}
