#pragma once

// Seeded random instance generators for property checks.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "gapline/graph.hpp"

namespace gapline {

using Rng = std::mt19937_64;

/// Each vertex i > 0 attaches to a uniformly chosen earlier vertex.
inline Graph random_tree(std::size_t n, Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(std::uniform_int_distribution<Vertex>(0, i - 1)(rng), i);
  return Graph(n, edges);
}

/// Random tree plus every other pair independently with probability p.
inline Graph random_connected_graph(std::size_t n, double p, Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<bool> used(n * n, false);
  for (Vertex i = 1; i < n; ++i) {
    Vertex j = std::uniform_int_distribution<Vertex>(0, i - 1)(rng);
    edges.emplace_back(j, i);
    used[j * n + i] = true;
  }
  std::bernoulli_distribution coin(p);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (!used[a * n + b] && coin(rng)) edges.emplace_back(a, b);
  return Graph(n, edges);
}

inline Potential random_potential(std::size_t n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> w(n);
  for (double& x : w) x = u(rng);
  return Potential(std::move(w));
}

/// Strictly increasing away from a random minimum position, so every strict
/// sublevel set is an interval. Step sizes are uniform on (0, amplitude].
inline Potential random_single_basin_path_potential(std::size_t l, Rng& rng) {
  std::vector<double> w(l, 0.0);
  const Vertex c = std::uniform_int_distribution<Vertex>(0, l - 1)(rng);
  const double amplitude = std::uniform_real_distribution<double>(0.01, 3.0)(rng);
  std::uniform_real_distribution<double> step(0.0, amplitude);
  auto draw = [&] {
    double s = 0.0;
    while (s == 0.0) s = step(rng);
    return s;
  };
  w[c] = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
  for (Vertex i = c; i-- > 0;) w[i] = w[i + 1] + draw();
  for (Vertex i = c + 1; i < l; ++i) w[i] = w[i - 1] + draw();
  return Potential(std::move(w));
}

}  // namespace gapline
