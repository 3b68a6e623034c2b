#include <algorithm>
#include <cmath>

#include "gapline/graph.hpp"
#include "gapline/random.hpp"
#include "gapline/spectral.hpp"
#include "support.hpp"

using namespace gapline;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Side = VertexLabel::Side;

using testing::kind_of;

TEST_CASE("build_path") {
  SECTION("single vertex") {
    auto g = build_path(1);
    CHECK(g.size() == 1);
    CHECK(g.edge_count() == 0);
  }
  SECTION("single edge") {
    auto g = build_path(2);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0] == Edge{0, 1});
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);
  }
  SECTION("five vertices") {
    auto g = build_path(5);
    CHECK(g.size() == 5);
    CHECK(g.edge_count() == 4);
    std::vector<std::size_t> deg;
    for (Vertex x = 0; x < 5; ++x) deg.push_back(g.degree(x));
    CHECK(deg == std::vector<std::size_t>{1, 2, 2, 2, 1});
    CHECK(g.is_connected());
    CHECK(g.max_degree() == 2);
  }
  SECTION("zero length") { CHECK(kind_of([] { build_path(0); }) == ErrorKind::InvalidSize); }
}

TEST_CASE("Graph rejects malformed edge sets") {
  CHECK(kind_of([] { Graph(3, {{0, 0}}); }) == ErrorKind::Structure);
  CHECK(kind_of([] { Graph(3, {{0, 1}, {1, 0}}); }) == ErrorKind::Structure);
  CHECK(kind_of([] { Graph(3, {{0, 3}}); }) == ErrorKind::Structure);
  CHECK_FALSE(Graph(4, {{0, 1}, {2, 3}}).is_connected());
}

TEST_CASE("Potential") {
  Potential w({3.0, -1.0, 2.0});
  CHECK(w.spread() == 4.0);
  CHECK(Potential::zero(4).spread() == 0.0);
  CHECK(kind_of([] { Potential({0.0, NAN}); }) == ErrorKind::Domain);
}

TEST_CASE("build_caterpillar shape") {
  for (std::size_t l = 2; l <= 20; ++l) {
    auto cat = build_caterpillar(l);
    INFO("l = " << l);
    CHECK(cat.graph.size() == 6 * l - 1);
    CHECK(cat.graph.edge_count() == 6 * l - 2);
    CHECK(cat.graph.is_connected());
    CHECK(cat.graph.max_degree() == 4);
    CHECK(cat.labels.size() == cat.graph.size());
  }

  auto cat = build_caterpillar(4);
  const auto& g = cat.graph;
  CHECK(g.size() == 23);
  for (Vertex x = 0; x < g.size(); ++x) {
    const auto& lab = cat.labels[x];
    if (lab.kind == VertexLabel::Kind::C)
      CHECK(g.degree(x) == 1);
    else if (lab.index == 0)
      CHECK(g.degree(x) == 1);
    else
      CHECK(g.degree(x) == 4);
  }
  CHECK(kind_of([] { build_caterpillar(1); }) == ErrorKind::InvalidSize);
}

TEST_CASE("caterpillar potential table, l = 4") {
  auto cat = build_caterpillar(4);
  const auto& w = cat.potential;
  CHECK(w[cat.spine(0, Side::Left)] == 0.0);
  CHECK_THAT(w[cat.center()], WithinAbs(-0.75, 1e-15));
  const Vertex c4 = cat.find({VertexLabel::Kind::C, Side::Center, 4, VertexLabel::Leg::Top});
  CHECK(w[c4] == 7.0);
  // C_4 dominates: roughly ten times the next largest value
  std::vector<double> v(w.values().begin(), w.values().end());
  std::sort(v.begin(), v.end());
  CHECK(v.back() == 7.0);
  const double second = *std::find_if(v.rbegin(), v.rend(), [](double x) { return x < 7.0; });
  CHECK(v.back() / second > 8.0);
  CHECK(v.back() / second < 12.0);
  const Vertex c1 = cat.find({VertexLabel::Kind::C, Side::Left, 1, VertexLabel::Leg::Bottom});
  CHECK_THAT(w[c1], WithinRel(1.0 / (11.0 / 12.0 - 1.0 / 32.0) - 1.0, 1e-15));
  const Vertex c2 = cat.find({VertexLabel::Kind::C, Side::Right, 2, VertexLabel::Leg::Top});
  CHECK_THAT(w[c2], WithinRel(1.0 / (2.0 / 3.0 - 2.0 / 32.0) - 1.0, 1e-15));
}

TEST_CASE("caterpillar ground state") {
  auto cat = build_caterpillar(4);
  auto psi = caterpillar_ground_state(4);
  REQUIRE(psi.size() == 23);
  CHECK_THAT(psi[cat.center()], WithinRel(16.0 / 81.0, 1e-15));
  const Vertex c4 = cat.find({VertexLabel::Kind::C, Side::Center, 4, VertexLabel::Leg::Bottom});
  CHECK_THAT(psi[c4], WithinRel(2.0 / 81.0, 1e-15));
  for (std::size_t l = 2; l <= 20; ++l) {
    auto p = caterpillar_ground_state(l);
    CHECK(p.front() == 2.0 / 3.0);
    CHECK(p[2 * l] == 2.0 / 3.0);
    CHECK(std::all_of(p.begin(), p.end(), [](double x) { return x > 0.0; }));
  }
  CHECK(kind_of([] { caterpillar_ground_state(1); }) == ErrorKind::InvalidSize);
}

TEST_CASE("closed-form caterpillar state is a zero mode at every vertex class") {
  for (std::size_t l = 2; l <= 20; ++l) {
    auto cat = build_caterpillar(l);
    auto psi = caterpillar_ground_state(l);
    auto h = assemble(cat.graph, cat.potential);
    Eigen::VectorXd r = h.matrix * detail::as_eigen(psi);
    for (Vertex x = 0; x < psi.size(); ++x) {
      INFO("l = " << l << ", vertex " << cat.labels[x].name());
      CHECK(std::abs(r(x)) <= 1e-14);
    }
  }
}

TEST_CASE("caterpillar mirror symmetry") {
  for (std::size_t l : {2u, 3u, 7u}) {
    auto cat = build_caterpillar(l);
    auto psi = caterpillar_ground_state(l);
    auto perm = cat.mirror();
    for (Vertex x = 0; x < perm.size(); ++x) {
      CHECK(cat.potential[perm[x]] == cat.potential[x]);
      CHECK(psi[perm[x]] == psi[x]);
    }
    for (const auto& e : cat.graph.edges()) CHECK(cat.graph.has_edge(perm[e.u], perm[e.v]));
  }
}

TEST_CASE("find_local_minima") {
  auto g = build_path(3);
  CHECK(find_local_minima(g, Potential({0, -1, 0})) == std::vector<Vertex>{1});
  CHECK(find_local_minima(g, Potential({0, 0, 0})) == std::vector<Vertex>{0, 1, 2});
  CHECK(kind_of([&] { find_local_minima(g, Potential({0, 0})); }) == ErrorKind::Dimension);

  for (std::size_t l = 2; l <= 20; ++l) {
    auto cat = build_caterpillar(l);
    CHECK(find_local_minima(cat.graph, cat.potential) == std::vector<Vertex>{cat.center()});
  }
}

TEST_CASE("is_single_basin") {
  auto g = build_path(3);
  CHECK(is_single_basin(g, Potential({3, 1, 2})));
  CHECK_FALSE(is_single_basin(g, Potential({1, 2, 1})));
  for (std::size_t l = 2; l <= 20; ++l) {
    auto cat = build_caterpillar(l);
    CHECK(is_single_basin(cat.graph, cat.potential));
  }
  CHECK(kind_of([] { is_single_basin(Graph(3, {{0, 1}}), Potential::zero(3)); }) == ErrorKind::Structure);
}

TEST_CASE("is_single_basin is invariant under constant shifts") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
    auto g = random_connected_graph(n, 0.3, rng);
    auto w = random_potential(n, -2.0, 2.0, rng);
    const double c = std::uniform_real_distribution<double>(-50.0, 50.0)(rng);
    CHECK(is_single_basin(g, w) == is_single_basin(g, w.shifted(c)));
  }
}

TEST_CASE("is_single_peaked") {
  auto g = build_path(3);
  const std::vector<double> a{1, 2, 1}, b{2, 1, 2}, c{1, 1, 1};
  CHECK(is_single_peaked(g, a));
  CHECK_FALSE(is_single_peaked(g, b));
  CHECK(is_single_peaked(g, c));
  const std::vector<double> bad{1, 0, 1};
  CHECK(kind_of([&] { is_single_peaked(g, bad); }) == ErrorKind::Domain);

  SECTION("constant vectors are single-peaked on every graph") {
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
      auto graph = random_connected_graph(n, 0.2, rng);
      std::vector<double> flat(n, 0.37);
      CHECK(is_single_peaked(graph, flat));
    }
  }

  SECTION("caterpillar state has two peaks") {
    auto cat = build_caterpillar(4);
    auto comps = local_maxima_components(cat.graph, caterpillar_ground_state(4));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<Vertex>{0, 1});
    CHECK(comps[1] == std::vector<Vertex>{7, 8});
  }
}
