#pragma once

// Graphs, vertex potentials, the path and caterpillar generators, and the
// structural classifiers (local minima, single-basin, single-peaked).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gapline/error.hpp"

namespace gapline {

using Vertex = std::size_t;

struct Edge {
  Vertex u;
  Vertex v;  // u < v always

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1. Immutable after construction;
/// the edge list is stored normalized (smaller endpoint first) and sorted.
class Graph {
 public:
  Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) : n_(n), adjacency_(n) {
    detail::require(n > 0, ErrorKind::InvalidSize, "graph must have at least one vertex");
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
      if (a >= n || b >= n)
        detail::fail(ErrorKind::Structure, "edge endpoint out of range: (" + std::to_string(a) + ", " +
                                               std::to_string(b) + ") with n = " + std::to_string(n));
      if (a == b) detail::fail(ErrorKind::Structure, "self-loop at vertex " + std::to_string(a));
      edges_.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      detail::fail(ErrorKind::Structure,
                   "duplicate edge (" + std::to_string(dup->u) + ", " + std::to_string(dup->v) + ")");
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex x) const { return adjacency_.at(x); }
  std::size_t degree(Vertex x) const { return adjacency_.at(x).size(); }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& nb : adjacency_) d = std::max(d, nb.size());
    return d;
  }

  bool has_edge(Vertex x, Vertex y) const {
    const auto& nb = adjacency_.at(x);
    return std::binary_search(nb.begin(), nb.end(), y);
  }

  /// Connected components of the subgraph induced by `members` (a 0/1 mask
  /// over vertices). Each component is sorted; components are ordered by
  /// their smallest vertex.
  std::vector<std::vector<Vertex>> induced_components(const std::vector<bool>& members) const {
    detail::require(members.size() == n_, ErrorKind::Dimension, "membership mask size mismatch");
    std::vector<std::vector<Vertex>> components;
    std::vector<bool> seen(n_, false);
    for (Vertex start = 0; start < n_; ++start) {
      if (!members[start] || seen[start]) continue;
      std::vector<Vertex> comp;
      std::queue<Vertex> frontier;
      frontier.push(start);
      seen[start] = true;
      while (!frontier.empty()) {
        Vertex x = frontier.front();
        frontier.pop();
        comp.push_back(x);
        for (Vertex y : adjacency_[x]) {
          if (members[y] && !seen[y]) {
            seen[y] = true;
            frontier.push(y);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
    return components;
  }

  /// The empty set counts as connected.
  bool induced_connected(const std::vector<bool>& members) const { return induced_components(members).size() <= 1; }

  bool is_connected() const { return induced_connected(std::vector<bool>(n_, true)); }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Real potential on the vertices of a graph.
class Potential {
 public:
  Potential() = default;
  explicit Potential(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      detail::require(std::isfinite(values_[i]), ErrorKind::Domain,
                      "potential entry " + std::to_string(i) + " is not finite");
  }

  static Potential zero(std::size_t n) { return Potential(std::vector<double>(n, 0.0)); }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](Vertex x) const { return values_[x]; }
  std::span<const double> values() const noexcept { return values_; }

  double min() const { return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end()); }
  double max() const { return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end()); }
  /// |W| = max - min.
  double spread() const { return max() - min(); }

  Potential shifted(double c) const {
    auto v = values_;
    for (double& x : v) x += c;
    return Potential(std::move(v));
  }

  Potential scaled(double f) const {
    auto v = values_;
    for (double& x : v) x *= f;
    return Potential(std::move(v));
  }

  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  std::vector<double> values_;
};

namespace detail {

inline void require_matching(const Graph& g, std::size_t len, const char* what) {
  require(g.size() == len, ErrorKind::Dimension,
          std::string(what) + " has length " + std::to_string(len) + " but graph has " + std::to_string(g.size()) +
              " vertices");
}

}  // namespace detail

/// Path graph 0 - 1 - ... - (l-1).
inline Graph build_path(std::size_t l) {
  detail::require(l >= 1, ErrorKind::InvalidSize, "path length must be at least 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i + 1 < l; ++i) edges.emplace_back(i, i + 1);
  return Graph(l, edges);
}

/// Cycle graph on l >= 3 vertices. Used by tests and canonical-path fixtures.
inline Graph build_cycle(std::size_t l) {
  detail::require(l >= 3, ErrorKind::InvalidSize, "cycle length must be at least 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < l; ++i) edges.emplace_back(i, (i + 1) % l);
  return Graph(l, edges);
}

// ---------------------------------------------------------------------------
// Caterpillar counterexample

struct VertexLabel {
  enum class Kind { B, C };
  enum class Side { Left, Right, Center };
  enum class Leg { None, Top, Bottom };

  Kind kind;
  Side side;
  std::size_t index;  // j in [0, l]
  Leg leg = Leg::None;

  /// "B0L", "B3R", "B4" (center), "C2Lt", "C2Rb", "C4t", ...
  std::string name() const {
    std::string s = kind == Kind::B ? "B" : "C";
    s += std::to_string(index);
    if (side == Side::Left) s += "L";
    if (side == Side::Right) s += "R";
    if (leg == Leg::Top) s += "t";
    if (leg == Leg::Bottom) s += "b";
    return s;
  }

  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

struct Caterpillar {
  std::size_t l;
  Graph graph;
  Potential potential;
  std::vector<VertexLabel> labels;  // labels[x] describes vertex x

  std::size_t spine_length() const { return 2 * l + 1; }
  /// The central spine vertex B_l.
  Vertex center() const { return l; }
  /// Spine vertex B_j on the given side (j < l).
  Vertex spine(std::size_t j, VertexLabel::Side side) const {
    if (j == l) return l;
    return side == VertexLabel::Side::Left ? j : 2 * l - j;
  }

  Vertex find(const VertexLabel& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    detail::require(it != labels.end(), ErrorKind::Domain, "no vertex labelled " + label.name());
    return static_cast<Vertex>(it - labels.begin());
  }

  /// Left-right relabeling automorphism as a vertex permutation.
  std::vector<Vertex> mirror() const {
    std::vector<Vertex> perm(graph.size());
    for (Vertex x = 0; x < graph.size(); ++x) {
      VertexLabel m = labels[x];
      if (m.side == VertexLabel::Side::Left)
        m.side = VertexLabel::Side::Right;
      else if (m.side == VertexLabel::Side::Right)
        m.side = VertexLabel::Side::Left;
      perm[x] = find(m);
    }
    return perm;
  }
};

namespace detail {

inline std::size_t caterpillar_spine_index(std::size_t l, Vertex i) { return i <= l ? i : 2 * l - i; }

inline VertexLabel::Side caterpillar_side(std::size_t l, Vertex i) {
  if (i < l) return VertexLabel::Side::Left;
  if (i == l) return VertexLabel::Side::Center;
  return VertexLabel::Side::Right;
}

inline double caterpillar_leg_potential(std::size_t l, std::size_t j) {
  const double L = static_cast<double>(l);
  if (j == l) return 7.0;
  if (j == 1) return 1.0 / (11.0 / 12.0 - 1.0 / (8.0 * L)) - 1.0;
  return 1.0 / (2.0 / 3.0 - static_cast<double>(j) / (8.0 * L)) - 1.0;
}

inline double caterpillar_leg_amplitude(std::size_t l, std::size_t j) {
  const double L = static_cast<double>(l);
  if (j == l) return std::pow(2.0 / 3.0, L) / 8.0;
  if (j == 1) return (2.0 / 3.0) * (11.0 / 12.0 - 1.0 / (8.0 * L));
  return (2.0 / 3.0 - static_cast<double>(j) / (8.0 * L)) * std::pow(2.0 / 3.0, static_cast<double>(j));
}

}  // namespace detail

/// Builds the 6l-1 vertex caterpillar with its single-basin potential.
///
/// Layout: vertices 0..2l form the spine B_0^L, ..., B_{l-1}^L, B_l,
/// B_{l-1}^R, ..., B_0^R. Every spine vertex B_j with 1 <= j <= l then gets two
/// pendant legs C_j (top, bottom), appended in spine order. B_0 carries no
/// legs. This is the only leg arrangement under which the closed-form ground
/// state returned by caterpillar_ground_state is an exact null vector of
/// H = L + W: at B_0 the degree-1 balance (1 + 0) 2/3 = psi(B_1) leaves no room
/// for a leg, and at every interior B_j the two legs contribute exactly the
/// 2 psi(C_j) needed to cancel (4 + W(B_j)) psi(B_j) - psi(B_{j-1}) - psi(B_{j+1}).
inline Caterpillar build_caterpillar(std::size_t l) {
  detail::require(l >= 2, ErrorKind::InvalidSize, "caterpillar requires l >= 2");
  const std::size_t spine = 2 * l + 1;
  const std::size_t n = 6 * l - 1;
  const double L = static_cast<double>(l);

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<double> w(n, 0.0);
  std::vector<VertexLabel> labels;
  labels.reserve(n);

  for (Vertex i = 0; i < spine; ++i) {
    std::size_t j = detail::caterpillar_spine_index(l, i);
    w[i] = j == 0 ? 0.0 : -0.5 - static_cast<double>(j) / (4.0 * L);
    labels.push_back({VertexLabel::Kind::B, detail::caterpillar_side(l, i), j});
    if (i + 1 < spine) edges.emplace_back(i, i + 1);
  }
  Vertex next = spine;
  for (Vertex i = 0; i < spine; ++i) {
    std::size_t j = detail::caterpillar_spine_index(l, i);
    if (j == 0) continue;
    for (auto leg : {VertexLabel::Leg::Top, VertexLabel::Leg::Bottom}) {
      edges.emplace_back(i, next);
      w[next] = detail::caterpillar_leg_potential(l, j);
      labels.push_back({VertexLabel::Kind::C, detail::caterpillar_side(l, i), j, leg});
      ++next;
    }
  }
  return Caterpillar{l, Graph(n, edges), Potential(std::move(w)), std::move(labels)};
}

/// Unnormalized closed-form zero-energy ground state of the caterpillar,
/// indexed like build_caterpillar(l).
inline std::vector<double> caterpillar_ground_state(std::size_t l) {
  detail::require(l >= 2, ErrorKind::InvalidSize, "caterpillar requires l >= 2");
  const std::size_t spine = 2 * l + 1;
  std::vector<double> psi;
  psi.reserve(6 * l - 1);
  for (Vertex i = 0; i < spine; ++i) {
    std::size_t j = detail::caterpillar_spine_index(l, i);
    psi.push_back(j == 0 ? 2.0 / 3.0 : std::pow(2.0 / 3.0, static_cast<double>(j)));
  }
  for (Vertex i = 0; i < spine; ++i) {
    std::size_t j = detail::caterpillar_spine_index(l, i);
    if (j == 0) continue;
    double a = detail::caterpillar_leg_amplitude(l, j);
    psi.push_back(a);
    psi.push_back(a);
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Classifiers

/// Vertices x with W(x) <= W(y) for every neighbour y.
inline std::vector<Vertex> find_local_minima(const Graph& g, const Potential& w) {
  detail::require_matching(g, w.size(), "potential");
  std::vector<Vertex> out;
  for (Vertex x = 0; x < g.size(); ++x) {
    bool is_min = true;
    for (Vertex y : g.neighbors(x)) {
      if (w[x] > w[y]) {
        is_min = false;
        break;
      }
    }
    if (is_min) out.push_back(x);
  }
  return out;
}

/// True iff every strict sublevel set {x : W(x) < E} induces a connected
/// subgraph. Connectivity can only change when E crosses a value of W, so the
/// distinct values of W plus one threshold above the maximum suffice.
inline bool is_single_basin(const Graph& g, const Potential& w) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(g.is_connected(), ErrorKind::Structure, "single-basin test requires a connected graph");
  std::vector<double> thresholds(w.values().begin(), w.values().end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  for (double e : thresholds) {
    std::vector<bool> below(g.size());
    for (Vertex x = 0; x < g.size(); ++x) below[x] = w[x] < e;
    if (!g.induced_connected(below)) return false;
  }
  return true;  // above the maximum the sublevel set is the whole (connected) graph
}

/// Relative tolerance for deciding psi(x) >= psi(y) on numerically computed
/// states: psi(y) <= psi(x) (1 + kPlateauTolerance) counts as psi(x) >= psi(y).
/// Pairwise, so exponentially small tails are still ordered.
inline constexpr double kPlateauTolerance = 1e-12;

/// Local maxima of psi under the non-strict definition psi(x) >= psi(y) for all
/// neighbours, as a membership mask.
inline std::vector<bool> local_maxima_mask(const Graph& g, std::span<const double> psi,
                                           double plateau_tol = kPlateauTolerance) {
  detail::require_matching(g, psi.size(), "wavefunction");
  for (std::size_t i = 0; i < psi.size(); ++i)
    detail::require(psi[i] > 0.0, ErrorKind::Domain,
                    "wavefunction entry " + std::to_string(i) + " is not strictly positive");
  std::vector<bool> mask(g.size(), true);
  for (Vertex x = 0; x < g.size(); ++x)
    for (Vertex y : g.neighbors(x))
      if (psi[y] > psi[x] * (1.0 + plateau_tol)) {
        mask[x] = false;
        break;
      }
  return mask;
}

inline std::vector<std::vector<Vertex>> local_maxima_components(const Graph& g, std::span<const double> psi,
                                                                double plateau_tol = kPlateauTolerance) {
  return g.induced_components(local_maxima_mask(g, psi, plateau_tol));
}

/// True iff the set of local maxima of psi is connected.
inline bool is_single_peaked(const Graph& g, std::span<const double> psi, double plateau_tol = kPlateauTolerance) {
  return local_maxima_components(g, psi, plateau_tol).size() <= 1;
}

}  // namespace gapline
