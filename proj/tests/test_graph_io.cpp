#include <string>

#include "gapline/graph_io.hpp"
#include "gapline/random.hpp"
#include "support.hpp"

using namespace gapline;
using testing::kind_of;

namespace {

std::vector<Edge> edge_list(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

std::string parse_message(const std::string& text) {
  try {
    read_graph(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.what();
  }
  FAIL("document parsed: " << text);
  return {};
}

}  // namespace

TEST_CASE("read_graph accepts a plain document") {
  auto doc = read_graph(R"({"n": 3, "edges": [[0, 1], [2, 1]], "potential": [0.5, -1, 2]})");
  CHECK(doc.graph.size() == 3);
  CHECK(doc.graph.edge_count() == 2);
  CHECK(doc.graph.has_edge(1, 2));
  CHECK(doc.potential == Potential({0.5, -1.0, 2.0}));
  CHECK(doc.labels.empty());
}

TEST_CASE("missing potential defaults to zeros") {
  auto doc = read_graph(R"({"n": 2, "edges": [[0, 1]]})");
  CHECK(doc.potential == Potential::zero(2));
}

TEST_CASE("read_graph names the offending field") {
  CHECK_THAT(parse_message(R"({"n": 3, "edges": [[0, 0]]})"), Catch::Matchers::ContainsSubstring("edges[0]") &&
                                                                   Catch::Matchers::ContainsSubstring("self-loop"));
  CHECK_THAT(parse_message(R"({"n": 3, "edges": [[0, 1], [1, 0]]})"),
             Catch::Matchers::ContainsSubstring("edges[1]") && Catch::Matchers::ContainsSubstring("duplicate"));
  CHECK_THAT(parse_message(R"({"n": 3, "edges": [[0, 5]]})"), Catch::Matchers::ContainsSubstring("out of range"));
  CHECK_THAT(parse_message(R"({"n": 3, "edges": [], "potential": [1, 2]})"),
             Catch::Matchers::ContainsSubstring("potential"));
  CHECK_THAT(parse_message(R"({"edges": []})"), Catch::Matchers::ContainsSubstring("n: missing"));
  CHECK_THAT(parse_message(R"({"n": -1, "edges": []})"), Catch::Matchers::ContainsSubstring("n: negative"));
  CHECK_THAT(parse_message(R"({"n": 2, "edges": [[0, 1]], "labels": {"A": 7}})"),
             Catch::Matchers::ContainsSubstring("labels.A"));
  CHECK_THAT(parse_message(R"({"n": 2, "edges": [[0, "x"]]})"), Catch::Matchers::ContainsSubstring("edges[0]"));
  parse_message("{not json");
  parse_message("[1, 2]");
}

TEST_CASE("caterpillar round trip keeps labels") {
  auto cat = build_caterpillar(4);
  const std::string text = write_graph(cat.graph, cat.potential, label_map(cat));
  auto doc = read_graph(text);
  CHECK(edge_list(doc.graph) == edge_list(cat.graph));
  CHECK(doc.potential == cat.potential);
  CHECK(doc.labels.at("B4") == cat.center());
  CHECK(doc.labels.size() == 23);
  CHECK(write_graph(doc) == text);
}

TEST_CASE("round trip is bit-exact on random instances") {
  Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    auto g = random_connected_graph(n, 0.15, rng);
    auto w = random_potential(n, -1e3, 1e3, rng);
    auto doc = read_graph(write_graph(g, w));
    CHECK(edge_list(doc.graph) == edge_list(g));
    REQUIRE(doc.potential.size() == n);
    for (Vertex x = 0; x < n; ++x) CHECK(doc.potential[x] == w[x]);
  }
}

TEST_CASE("write_graph rejects a mismatched potential") {
  CHECK(kind_of([] { write_graph(build_path(3), Potential::zero(2)); }) == ErrorKind::Dimension);
}
