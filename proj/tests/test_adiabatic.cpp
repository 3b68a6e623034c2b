#include <cmath>
#include <numbers>

#include "gapline/adiabatic.hpp"
#include "gapline/random.hpp"
#include "gapline/serialize.hpp"
#include "support.hpp"

using namespace gapline;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testing::kind_of;

namespace {

Graph star(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph(leaves + 1, e);
}

}  // namespace

TEST_CASE("interpolated Hamiltonian endpoints") {
  auto g = build_path(4);
  Potential w({0.3, -1.0, 2.0, 0.5});
  CHECK(interpolated_hamiltonian(g, w, 0.0).matrix == laplacian(g).matrix);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(4, 4);
  for (Vertex x = 0; x < 4; ++x) diag(x, x) = w[x];
  CHECK(interpolated_hamiltonian(g, w, 1.0).matrix == diag);
  CHECK(*interpolated_hamiltonian(g, w, 0.25).parameter == 0.25);
  CHECK(kind_of([&] { interpolated_hamiltonian(g, w, 1.5); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { interpolated_hamiltonian(g, w, -0.1); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { rescaled_hamiltonian(g, w, 1.0); }) == ErrorKind::Domain);
}

TEST_CASE("midpoint of a tilted edge") {
  auto s = solve_ground_and_gap(interpolated_hamiltonian(build_path(2), Potential({0.0, 2.0}), 0.5));
  CHECK_THAT(s.gap, WithinRel(std::sqrt(2.0), 1e-14));
  CHECK_THAT(s.ground_energy, WithinRel(1.0 - std::sqrt(0.5), 1e-14));
}

TEST_CASE("gap of H(s) is (1 - s) times the rescaled gap") {
  Rng rng(71);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    auto g = random_connected_graph(n, 0.25, rng);
    auto w = random_potential(n, 0.0, 1.0, rng);
    const double s = std::uniform_real_distribution<double>(0.0, 0.999)(rng);
    auto a = solve_ground_and_gap(interpolated_hamiltonian(g, w, s));
    auto b = solve_ground_and_gap(rescaled_hamiltonian(g, w, s));
    CHECK_THAT(a.gap, WithinAbs((1.0 - s) * b.gap, 1e-10));
  }
}

TEST_CASE("schedule derivative norm") {
  // single edge: diag(0, 2) - L = [[-1, 1], [1, 1]], eigenvalues +- sqrt(2)
  CHECK_THAT(schedule_derivative_norm(build_path(2), Potential({0.0, 2.0})), WithinRel(std::sqrt(2.0), 1e-14));
  CHECK_THAT(schedule_derivative_norm(build_path(2), Potential::zero(2)), WithinRel(2.0, 1e-14));
}

TEST_CASE("final gap and rescaling") {
  CHECK(final_gap(Potential({3.0, 1.0, 1.5, 9.0})) == 0.5);
  CHECK(final_gap(Potential({1.0, 1.0, 2.0})) == 0.0);
  auto r = rescale_to_unit_final_gap(Potential({3.0, 1.0, 1.5}));
  CHECK(final_gap(r) == 1.0);
  CHECK(kind_of([] { rescale_to_unit_final_gap(Potential({1.0, 1.0})); }) == ErrorKind::Precondition);
  CHECK(kind_of([] { final_gap(Potential({1.0})); }) == ErrorKind::InvalidSize);
}

TEST_CASE("endgame bound") {
  SECTION("path, d = 2") {
    auto e = endgame_bound(build_path(5), Potential({0, 1, 2, 3, 4}));
    CHECK(e.s_star == 0.9375);
    CHECK(e.bound == 7.0 / 16.0);
    CHECK(e.floor == 7.0 / 16.0);
    CHECK(e.scale == 1.0);
  }
  SECTION("star, d = 4") {
    auto e = endgame_bound(star(4), Potential({0, 2, 3, 4, 5}));
    CHECK(e.s_star == 31.0 / 32.0);
    CHECK(e.bound == 15.0 / 32.0);
    CHECK(e.floor == 7.0 / 16.0);
    CHECK(e.scale == 0.5);
  }
  SECTION("degenerate minimum") {
    CHECK(kind_of([] { endgame_bound(build_path(3), Potential({0, 0, 1})); }) == ErrorKind::Precondition);
  }
  SECTION("holds on the endgame interval") {
    Rng rng(73);
    for (int k = 0; k < 60; ++k) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 12)(rng);
      auto g = random_tree(n, rng);
      if (g.max_degree() < 2) continue;
      auto w = rescale_to_unit_final_gap(random_potential(n, 0.0, 1.0, rng));
      auto e = endgame_bound(g, w);
      for (double s : {e.s_star, 0.5 * (e.s_star + 1.0), 1.0 - 1e-6}) {
        auto sol = solve_ground_and_gap(interpolated_hamiltonian(g, w, s));
        CHECK(sol.gap >= e.bound - 1e-10);
      }
    }
  }
}

TEST_CASE("schedule gap floor") {
  auto g = build_path(3);
  Potential w({1.0, 0.0, 2.0});
  CHECK_THAT(schedule_gap_floor(g, w), WithinRel((1.0 / 16.0) / 612.0, 1e-15));
  CHECK(schedule_gap_floor(g, w) <= bulk_gap_floor(g, w, 0.9375));
}

TEST_CASE("bulk gap floor") {
  auto g = build_path(4);
  Potential w({0.0, 1.0, 2.0, 3.0});
  CHECK_THAT(bulk_gap_floor(g, w, 0.0), WithinRel(1.0 / (2.0 * 2.0 * 16.0), 1e-15));
  CHECK_THAT(bulk_gap_floor(g, w, 0.5), WithinRel(0.5 / (2.0 * 5.0 * 16.0), 1e-15));
  CHECK(kind_of([&] { bulk_gap_floor(g, w, 1.0); }) == ErrorKind::Domain);
}

TEST_CASE("default sweep grid") {
  auto grid = default_sweep_grid();
  REQUIRE(grid.size() == 101 + 16 + 1);
  CHECK(grid.front() == 0.0);
  CHECK(grid[100] == 0.99);
  CHECK(grid.back() == 1.0);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(default_sweep_grid(1).size() == 18);
}

TEST_CASE("gap sweep") {
  SECTION("s = 0 is the Laplacian gap") {
    auto g = build_path(6);
    auto samples = gap_sweep(g, Potential({0, 1, 2, 3, 4, 5}), {0.0});
    REQUIRE(samples.size() == 1);
    CHECK_THAT(samples[0].gamma, WithinRel(4.0 * std::pow(std::sin(std::numbers::pi / 12.0), 2), 1e-10));
    CHECK(samples[0].single_peaked);
    CHECK(samples[0].regime == Regime::Bulk);
  }
  SECTION("flat potential only shrinks the Laplacian gap") {
    auto g = build_path(5);
    const double lap = solve_ground_and_gap(laplacian(g)).gap;
    auto w = Potential(std::vector<double>(5, 0.7));
    for (const auto& s : gap_sweep(g, w, {0.0, 0.3, 0.6, 0.9})) CHECK_THAT(s.gamma, WithinAbs((1.0 - s.s) * lap, 1e-10));
  }
  SECTION("samples respect their bounds") {
    Rng rng(79);
    for (int k = 0; k < 10; ++k) {
      const std::size_t l = std::uniform_int_distribution<std::size_t>(3, 10)(rng);
      auto g = build_path(l);
      auto w = rescale_to_unit_final_gap(random_single_basin_path_potential(l, rng));
      auto samples = gap_sweep(g, w, default_sweep_grid(21));
      CHECK(samples.back().gamma == 1.0);
      CHECK(samples.back().regime == Regime::Endgame);
      for (const auto& s : samples) {
        INFO("s = " << s.s);
        if (auto b = s.bound()) CHECK(s.gamma >= *b - 1e-10);
        if (s.regime == Regime::Bulk) CHECK_FALSE(s.endgame_bound.has_value());
      }
    }
  }
  SECTION("errors") {
    auto g = build_path(3);
    auto w = Potential({0, 1, 2});
    CHECK(kind_of([&] { gap_sweep(g, w, {}); }) == ErrorKind::Domain);
    CHECK(kind_of([&] { gap_sweep(g, w, {0.5, 0.2}); }) == ErrorKind::Domain);
    CHECK(kind_of([&] { gap_sweep(g, w, {1.2}); }) == ErrorKind::Domain);
    CHECK(kind_of([&] { gap_sweep(Graph(3, {{0, 1}}), w, {0.5}); }) == ErrorKind::Structure);
  }
}

TEST_CASE("sweep CSV") {
  auto g = build_path(3);
  auto samples = gap_sweep(g, Potential({0.0, 1.0, 2.0}), {0.0, 1.0});
  const std::string csv = sweep_csv(samples);
  CHECK_THAT(csv, Catch::Matchers::StartsWith("s,gamma,bound,regime,single_peaked\n0,"));
  CHECK_THAT(csv, Catch::Matchers::EndsWith("\n1,1,1,endgame,true\n"));
  ScheduleSample bare;
  bare.s = 0.5;
  bare.gamma = 0.25;
  CHECK(sweep_csv({bare}) == "s,gamma,bound,regime,single_peaked\n0.5,0.25,nan,bulk,false\n");
}

TEST_CASE("switching function") {
  CHECK_THAT(switching_normalization(), WithinRel(142.25037577709586813, 1e-12));
  CHECK_THAT(1.0 / switching_normalization(), WithinRel(0.0070298584066096562392, 1e-12));
  CHECK(switching_derivative(0.0) == 0.0);
  CHECK(switching_derivative(1.0) == 0.0);
  CHECK(switching_derivative(-3.0) == 0.0);
  CHECK_THAT(switching_derivative(0.5), WithinRel(142.25037577709586813 * std::exp(-4.0), 1e-12));

  CHECK(switching_schedule(0.0) == 0.0);
  CHECK(switching_schedule(1.0) == 1.0);
  CHECK(switching_schedule(-1.0) == 0.0);
  CHECK(switching_schedule(2.0) == 1.0);
  CHECK_THAT(switching_schedule(0.5), WithinAbs(0.5, 1e-13));
  CHECK_THAT(switching_schedule(0.1), WithinRel(1.809786530385470263e-5, 1e-10));
  CHECK_THAT(switching_schedule(0.25), WithinRel(0.03175495772763777638, 1e-12));
  CHECK_THAT(switching_schedule(0.75), WithinRel(0.96824504227236222361, 1e-13));

  double prev = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double x = k / 100.0;
    const double s = switching_schedule(x);
    CHECK(s >= prev);
    CHECK_THAT(s + switching_schedule(1.0 - x), WithinAbs(1.0, 1e-13));
    prev = s;
  }
}

TEST_CASE("runtime estimates") {
  auto r = runtime_estimate(0.1, 1.0);
  CHECK_THAT(r.tau_cubic, WithinRel(1000.0, 1e-13));
  CHECK_THAT(r.tau_smooth, WithinRel(std::pow(std::log(10.0), 12) * 100.0, 1e-13));
  CHECK_FALSE(r.log_degenerate);

  auto one = runtime_estimate(1.0, 2.0);
  CHECK(one.tau_smooth == 0.0);
  CHECK(one.log_degenerate);
  CHECK(one.tau_cubic == 4.0);

  // the smooth estimate only wins for astronomically small gaps
  CHECK(runtime_estimate(1e-3, 1.0).tau_smooth > runtime_estimate(1e-3, 1.0).tau_cubic);
  CHECK(runtime_estimate(1e-80, 1.0).tau_smooth < runtime_estimate(1e-80, 1.0).tau_cubic);

  double prev = 0.0;
  for (double g = 0.9; g > 1e-6; g *= 0.5) {
    auto e = runtime_estimate(g, 3.0);
    CHECK(e.tau_cubic > prev);
    prev = e.tau_cubic;
  }
  CHECK(kind_of([] { runtime_estimate(0.0, 1.0); }) == ErrorKind::Domain);
  CHECK(kind_of([] { runtime_estimate(0.5, 0.0); }) == ErrorKind::Domain);
}
