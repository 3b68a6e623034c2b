#pragma once

// Random-walk view of a graph Hamiltonian and the gap bounds derived from it:
// exact conductance with the Cheeger-type sandwich, the single-peaked lower
// bound, and Poincare canonical-path bounds.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gapline/error.hpp"
#include "gapline/graph.hpp"
#include "gapline/spectral.hpp"

namespace gapline {

// ---------------------------------------------------------------------------
// Potential normalization and the walk matrix

struct NormalizedPotential {
  Potential potential;
  double shift;  // amount subtracted from every entry
};

/// Subtracts W_max + d_G + 1 so every entry is at most -d_G - 1. The extra 1
/// keeps every diagonal entry of the walk matrix strictly positive.
inline NormalizedPotential normalize_potential(const Graph& g, const Potential& w) {
  detail::require_matching(g, w.size(), "potential");
  const double shift = w.max() + static_cast<double>(g.max_degree()) + 1.0;
  return {w.shifted(-shift), shift};
}

struct WalkMatrix {
  Eigen::MatrixXd transition;       // row-stochastic P
  std::vector<double> stationary;   // pi = psi^2, normalized
  double ground_energy = 0.0;       // E used in the transform

  std::size_t size() const { return stationary.size(); }

  double max_row_sum_deviation() const {
    return (transition.rowwise().sum().array() - 1.0).abs().maxCoeff();
  }

  /// max |pi_x P_xy - pi_y P_yx|.
  double max_detailed_balance_violation() const {
    double worst = 0.0;
    const auto n = transition.rows();
    for (Eigen::Index x = 0; x < n; ++x)
      for (Eigen::Index y = x + 1; y < n; ++y)
        worst = std::max(worst, std::abs(stationary[x] * transition(x, y) - stationary[y] * transition(y, x)));
    return worst;
  }

  /// 1 - (second largest eigenvalue), from a general (non-symmetric) eigensolve of P.
  double spectral_gap() const {
    Eigen::EigenSolver<Eigen::MatrixXd> es(transition, false);
    if (es.info() != Eigen::Success) throw SolverError("walk-matrix eigensolve did not converge", INFINITY);
    std::vector<double> re;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) re.push_back(es.eigenvalues()(k).real());
    std::sort(re.begin(), re.end(), std::greater<>());
    return re.size() < 2 ? 0.0 : 1.0 - re[1];
  }
};

/// P = (1/E) D^{-1} H D with D = diag(psi), for H = assemble(g, w_shifted).
inline WalkMatrix build_walk_matrix(const Graph& g, const Potential& w_shifted, const Spectrum& spectrum) {
  detail::require_matching(g, w_shifted.size(), "potential");
  detail::require_matching(g, spectrum.ground_vector.size(), "ground vector");
  const double d = static_cast<double>(g.max_degree());
  for (Vertex x = 0; x < g.size(); ++x)
    detail::require(w_shifted[x] < -d, ErrorKind::Precondition,
                    "potential entry " + std::to_string(x) + " is not below -d_G; normalize it first");
  const double e = spectrum.ground_energy;
  if (!(e < 0.0)) detail::fail(ErrorKind::TransformUndefined, "walk transform needs a negative ground energy");
  const auto& psi = spectrum.ground_vector;
  for (double p : psi)
    detail::require(p > 0.0, ErrorKind::TransformUndefined, "walk transform needs a strictly positive ground state");

  const Hamiltonian h = assemble(g, w_shifted);
  const auto n = static_cast<Eigen::Index>(g.size());
  WalkMatrix out;
  out.ground_energy = e;
  out.transition = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    out.transition(x, x) = h.matrix(x, x) / e;
    for (Vertex y : g.neighbors(static_cast<Vertex>(x))) out.transition(x, y) = h.matrix(x, y) * psi[y] / (e * psi[x]);
  }
  double mass = 0.0;
  for (double p : psi) mass += p * p;
  for (double p : psi) out.stationary.push_back(p * p / mass);

  const double dev = out.max_row_sum_deviation();
  if (dev > 1e-9)
    detail::fail(ErrorKind::Consistency, "walk matrix row sums deviate from 1 by " + std::to_string(dev));
  return out;
}

// ---------------------------------------------------------------------------
// Cuts and conductance

/// Largest graph for which conductance_exact enumerates every cut.
inline constexpr std::size_t kMaxEnumerationVertices = 24;

struct CutReport {
  std::vector<Vertex> subset;  // sorted
  double flow = 0.0;           // F_S = sum over cut edges psi(x) psi(y)
  double mass = 0.0;           // C_S
  double complement_mass = 0.0;
  double ratio = 0.0;          // F_S / min(C_S, C_Sbar)
};

struct ConductanceReport {
  double phi = 0.0;  // Phi_H
  CutReport minimizer;
  std::uint64_t cuts_examined = 0;
};

namespace detail {

inline void require_unit_positive(const Graph& g, std::span<const double> psi) {
  require_matching(g, psi.size(), "wavefunction");
  double nn = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    require(psi[i] > 0.0, ErrorKind::Domain, "wavefunction entry " + std::to_string(i) + " is not strictly positive");
    nn += psi[i] * psi[i];
  }
  require(std::abs(nn - 1.0) <= 1e-8, ErrorKind::Domain, "wavefunction must have unit 2-norm");
}

}  // namespace detail

inline CutReport cut_profile(const Graph& g, std::span<const double> psi, const std::vector<Vertex>& subset) {
  detail::require_matching(g, psi.size(), "wavefunction");
  std::vector<bool> in(g.size(), false);
  for (Vertex v : subset) {
    detail::require(v < g.size(), ErrorKind::Domain, "cut vertex " + std::to_string(v) + " out of range");
    in[v] = true;
  }
  const auto members = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  detail::require(members > 0 && members < g.size(), ErrorKind::Domain, "cut must be nonempty and proper");

  CutReport r;
  for (Vertex v = 0; v < g.size(); ++v)
    if (in[v]) r.subset.push_back(v);
  for (const auto& e : g.edges())
    if (in[e.u] != in[e.v]) r.flow += psi[e.u] * psi[e.v];
  for (Vertex v = 0; v < g.size(); ++v) (in[v] ? r.mass : r.complement_mass) += psi[v] * psi[v];
  r.ratio = r.flow / std::min(r.mass, r.complement_mass);
  return r;
}

/// Phi_H = min over proper cuts of F_S / min(C_S, C_Sbar), by exhaustive
/// enumeration of the 2^{n-1} - 1 cuts that leave vertex n-1 outside S.
/// Cuts are visited in Gray-code order with O(deg) incremental updates and a
/// periodic exact resync. Ties go to the smallest subset bitmask; the
/// reported minimizer is the smaller-mass side of the optimal cut.
inline ConductanceReport conductance_exact(const Graph& g, std::span<const double> psi) {
  const std::size_t n = g.size();
  detail::require(n >= 2, ErrorKind::InvalidSize, "conductance needs at least two vertices");
  detail::require(n <= kMaxEnumerationVertices, ErrorKind::SizeGuard,
                  "exhaustive conductance is limited to " + std::to_string(kMaxEnumerationVertices) +
                      " vertices; use cut_profile for an upper bound on larger graphs");
  detail::require_unit_positive(g, psi);

  double total = 0.0;
  for (double p : psi) total += p * p;

  std::vector<bool> in(n, false);
  double flow = 0.0;
  double mass = 0.0;
  auto resync = [&] {
    flow = 0.0;
    mass = 0.0;
    for (const auto& e : g.edges())
      if (in[e.u] != in[e.v]) flow += psi[e.u] * psi[e.v];
    for (Vertex v = 0; v < n; ++v)
      if (in[v]) mass += psi[v] * psi[v];
  };

  const std::uint64_t count = (std::uint64_t{1} << (n - 1)) - 1;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  constexpr double kTie = 1e-12;
  for (std::uint64_t k = 1; k <= count; ++k) {
    const auto v = static_cast<Vertex>(std::countr_zero(k));
    const bool entering = !in[v];
    in[v] = entering;
    if ((k & 0xfff) == 0) {
      resync();
    } else {
      for (Vertex y : g.neighbors(v)) {
        const double f = psi[v] * psi[y];
        flow += (in[y] == entering) ? -f : f;
      }
      mass += (entering ? 1.0 : -1.0) * psi[v] * psi[v];
    }
    const std::uint64_t mask = k ^ (k >> 1);
    const double ratio = flow / std::min(mass, total - mass);
    if (ratio < best * (1.0 - kTie) || (ratio <= best * (1.0 + kTie) && mask < best_mask)) {
      best = ratio;
      best_mask = mask;
    }
  }

  std::vector<Vertex> subset;
  for (Vertex v = 0; v + 1 < n; ++v)
    if (best_mask >> v & 1) subset.push_back(v);
  CutReport report = cut_profile(g, psi, subset);
  if (report.mass > report.complement_mass) {
    std::vector<Vertex> complement;
    for (Vertex v = 0; v < n; ++v)
      if (!std::binary_search(subset.begin(), subset.end(), v)) complement.push_back(v);
    report = cut_profile(g, psi, complement);
  }
  return {report.ratio, std::move(report), count};
}

struct GapSandwich {
  double lower = 0.0;                  // -Phi_H^2 / (2 E^(-))
  double upper = 0.0;                  // 2 Phi_H
  double gap = 0.0;                    // gamma from the eigensolver
  double shifted_ground_energy = 0.0;  // E^(-)
  double shift = 0.0;
  ConductanceReport conductance;

  bool holds(double slack) const { return lower - slack <= gap && gap <= upper + slack; }
};

inline GapSandwich gap_sandwich(const Graph& g, const Potential& w, double tol = kDefaultTolerance) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(g.is_connected(), ErrorKind::Structure, "gap sandwich requires a connected graph");
  auto normalized = normalize_potential(g, w);
  const Spectrum sol = solve_ground_and_gap(assemble(g, normalized.potential), tol);
  GapSandwich out;
  out.conductance = conductance_exact(g, sol.ground_vector);
  out.shifted_ground_energy = sol.ground_energy;
  out.shift = normalized.shift;
  out.gap = sol.gap;
  const double phi = out.conductance.phi;
  out.lower = -phi * phi / (2.0 * sol.ground_energy);
  out.upper = 2.0 * phi;
  return out;
}

// ---------------------------------------------------------------------------
// Single-peaked lower bound

/// 1 / (2 (|W| + d_G) |V|^2), valid whenever the ground state is single-peaked.
inline double single_peaked_floor(const Graph& g, const Potential& w) {
  const double n = static_cast<double>(g.size());
  return 1.0 / (2.0 * (w.spread() + static_cast<double>(g.max_degree())) * n * n);
}

/// Checks that the ground state of H(g, w) is single-peaked and returns the
/// guaranteed floor on its gap.
inline double single_peaked_gap_bound(const Graph& g, const Potential& w, const Spectrum& spectrum) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(g.is_connected(), ErrorKind::Structure, "single-peaked bound requires a connected graph");
  auto comps = local_maxima_components(g, spectrum.ground_vector);
  if (comps.size() > 1) {
    std::string msg = "ground state is not single-peaked; local maxima split into";
    for (const auto& c : comps) {
      msg += " {";
      for (std::size_t i = 0; i < c.size(); ++i) msg += (i ? "," : "") + std::to_string(c[i]);
      msg += "}";
    }
    detail::fail(ErrorKind::Precondition, msg);
  }
  return single_peaked_floor(g, w);
}

inline double single_peaked_gap_bound(const Graph& g, const Potential& w, double tol = kDefaultTolerance) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(g.is_connected(), ErrorKind::Structure, "single-peaked bound requires a connected graph");
  return single_peaked_gap_bound(g, w, solve_ground_and_gap(assemble(g, w), tol));
}

// ---------------------------------------------------------------------------
// Canonical paths and Poincare bounds

/// One vertex sequence per ordered pair (x, y), x != y.
class CanonicalPathSet {
 public:
  explicit CanonicalPathSet(std::size_t n) : n_(n), paths_(n * n) {}

  std::size_t size() const noexcept { return n_; }

  std::span<const Vertex> path(Vertex x, Vertex y) const { return paths_.at(x * n_ + y); }
  void set_path(Vertex x, Vertex y, std::vector<Vertex> p) { paths_.at(x * n_ + y) = std::move(p); }

  /// Number of ordered pairs that have a path assigned.
  std::size_t pair_count() const {
    return static_cast<std::size_t>(std::count_if(paths_.begin(), paths_.end(), [](auto& p) { return !p.empty(); }));
  }

  /// Throws PathValidity unless every pair has a path from x to y along edges
  /// of g with no edge repeated.
  void validate(const Graph& g) const {
    detail::require(g.size() == n_, ErrorKind::Dimension, "path set size does not match graph");
    for (Vertex x = 0; x < n_; ++x) {
      for (Vertex y = 0; y < n_; ++y) {
        if (x == y) continue;
        const auto p = path(x, y);
        const std::string pair = "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
        detail::require(p.size() >= 2 && p.front() == x && p.back() == y, ErrorKind::PathValidity,
                        "path for pair " + pair + " does not join its endpoints");
        std::vector<Edge> used;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
          detail::require(p[k] < n_ && p[k + 1] < n_ && g.has_edge(p[k], p[k + 1]), ErrorKind::PathValidity,
                          "path for pair " + pair + " uses non-edge (" + std::to_string(p[k]) + ", " +
                              std::to_string(p[k + 1]) + ")");
          used.push_back({std::min(p[k], p[k + 1]), std::max(p[k], p[k + 1])});
        }
        std::sort(used.begin(), used.end());
        detail::require(std::adjacent_find(used.begin(), used.end()) == used.end(), ErrorKind::PathValidity,
                        "path for pair " + pair + " repeats an edge");
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<std::vector<Vertex>> paths_;
};

/// Shortest paths where each vertex at distance d takes its lowest-index
/// neighbour at distance d-1 as predecessor. Pairs (x, y) with x < y are
/// built from x; the reverse pair gets the reversed sequence.
inline CanonicalPathSet default_canonical_paths(const Graph& g) {
  detail::require(g.is_connected(), ErrorKind::Structure, "canonical paths require a connected graph");
  const std::size_t n = g.size();
  CanonicalPathSet out(n);
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  for (Vertex x = 0; x < n; ++x) {
    std::vector<std::size_t> dist(n, kUnseen);
    std::queue<Vertex> q;
    dist[x] = 0;
    q.push(x);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v : g.neighbors(u))
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
    for (Vertex y = x + 1; y < n; ++y) {
      std::vector<Vertex> rev{y};
      Vertex cur = y;
      while (cur != x) {
        for (Vertex p : g.neighbors(cur))  // sorted ascending
          if (dist[p] + 1 == dist[cur]) {
            cur = p;
            break;
          }
        rev.push_back(cur);
      }
      std::vector<Vertex> fwd(rev.rbegin(), rev.rend());
      out.set_path(x, y, fwd);
      out.set_path(y, x, std::move(rev));
    }
  }
  return out;
}

struct PoincareResult {
  double kappa = 0.0;  // kappa' for unit-norm psi
  double bound = 0.0;  // 1 / kappa'
  Edge bottleneck{0, 0};
};

/// kappa' = max_e sum_{paths through e} psi(x)^2 psi(y)^2 sum_{g in path} 1/(psi(g1) psi(g2)).
/// psi must be unit-norm; the result lower-bounds the gap as 1/kappa'.
inline PoincareResult poincare_kappa(const Graph& g, std::span<const double> psi, const CanonicalPathSet& paths) {
  detail::require_unit_positive(g, psi);
  paths.validate(g);
  const auto edges = g.edges();
  auto edge_index = [&](Vertex a, Vertex b) {
    const Edge e{std::min(a, b), std::max(a, b)};
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };
  std::vector<double> load(edges.size(), 0.0);
  std::vector<std::size_t> ids;
  for (Vertex x = 0; x < g.size(); ++x) {
    for (Vertex y = 0; y < g.size(); ++y) {
      if (x == y) continue;
      const auto p = paths.path(x, y);
      ids.clear();
      double length = 0.0;
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        ids.push_back(edge_index(p[k], p[k + 1]));
        length += 1.0 / (psi[p[k]] * psi[p[k + 1]]);
      }
      const double weight = psi[x] * psi[x] * psi[y] * psi[y] * length;
      for (auto id : ids) load[id] += weight;
    }
  }
  PoincareResult r;
  std::size_t worst = 0;
  for (std::size_t k = 0; k < load.size(); ++k)
    if (load[k] > r.kappa) {
      r.kappa = load[k];
      worst = k;
    }
  if (!edges.empty()) r.bottleneck = edges[worst];
  r.bound = r.kappa > 0.0 ? 1.0 / r.kappa : std::numeric_limits<double>::infinity();
  return r;
}

inline PoincareResult poincare_bound(const Graph& g, const Potential& w, const CanonicalPathSet& paths,
                                     double tol = kDefaultTolerance) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(g.is_connected(), ErrorKind::Structure, "Poincare bound requires a connected graph");
  const Spectrum sol = solve_ground_and_gap(assemble(g, w), tol);
  return poincare_kappa(g, sol.ground_vector, paths);
}

/// kappa' on the path graph: max_j 2 sum_{s<=j<f} R(s, f), with
/// R(s, f) = psi(s)^2 psi(f)^2 sum_{s<=v<f} 1/(psi(v) psi(v+1)).
inline double path_kappa(std::span<const double> psi) {
  const std::size_t l = psi.size();
  detail::require(l >= 2, ErrorKind::InvalidSize, "path kappa needs at least two vertices");
  for (std::size_t i = 0; i < l; ++i)
    detail::require(psi[i] > 0.0, ErrorKind::Domain, "wavefunction entry " + std::to_string(i) + " is not strictly positive");
  // accumulated directly; prefix-sum differences cancel badly when psi has tiny tails
  std::vector<double> load(l - 1, 0.0);
  for (std::size_t s = 0; s + 1 < l; ++s) {
    double length = 0.0;
    for (std::size_t f = s + 1; f < l; ++f) {
      length += 1.0 / (psi[f - 1] * psi[f]);
      const double r = psi[s] * psi[s] * psi[f] * psi[f] * length;
      for (std::size_t j = s; j < f; ++j) load[j] += r;
    }
  }
  return 2.0 * *std::max_element(load.begin(), load.end());
}

}  // namespace gapline
