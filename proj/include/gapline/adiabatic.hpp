#pragma once

// Linear interpolation H(s) = (1-s) L_G + s diag(W): exact gap sweeps, the
// analytic gap floors along the schedule, the smooth switching function and
// runtime estimates. Runtime formulas are reported with their big-O constants
// set to 1, i.e. up to the adiabatic theorem's constant.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gapline/bounds.hpp"
#include "gapline/error.hpp"
#include "gapline/graph.hpp"
#include "gapline/spectral.hpp"

namespace gapline {

inline Hamiltonian interpolated_hamiltonian(const Graph& g, const Potential& w, double s) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(s >= 0.0 && s <= 1.0, ErrorKind::Domain, "interpolation parameter must lie in [0, 1]");
  Hamiltonian h = laplacian(g);
  h.matrix *= (1.0 - s);
  for (Vertex x = 0; x < g.size(); ++x) h.matrix(x, x) += s * w[x];
  h.parameter = s;
  return h;
}

/// H(s) / (1 - s) = L_G + (s / (1 - s)) W, for s in [0, 1).
inline Hamiltonian rescaled_hamiltonian(const Graph& g, const Potential& w, double s) {
  detail::require(s >= 0.0 && s < 1.0, ErrorKind::Domain, "rescaled Hamiltonian needs s in [0, 1)");
  Hamiltonian h = assemble(g, w.scaled(s / (1.0 - s)));
  h.parameter = s;
  return h;
}

/// Largest |eigenvalue| of dH/ds = diag(W) - L_G.
inline double schedule_derivative_norm(const Graph& g, const Potential& w) {
  detail::require_matching(g, w.size(), "potential");
  Eigen::MatrixXd m = -laplacian(g).matrix;
  for (Vertex x = 0; x < g.size(); ++x) m(x, x) += w[x];
  return operator_norm(m);
}

/// Floor on gamma(s) from the single-peaked bound applied to the rescaled
/// Hamiltonian: (1-s) / (2 ((s/(1-s)) |W| + d_G) |V|^2), for s < 1.
inline double bulk_gap_floor(const Graph& g, const Potential& w, double s) {
  detail::require(s >= 0.0 && s < 1.0, ErrorKind::Domain, "bulk floor needs s in [0, 1)");
  const double n = static_cast<double>(g.size());
  const double d = static_cast<double>(g.max_degree());
  return (1.0 - s) / (2.0 * (s / (1.0 - s) * w.spread() + d) * n * n);
}

/// Difference between the two smallest entries of W (with multiplicity); the
/// gap of H(1) = diag(W).
inline double final_gap(const Potential& w) {
  detail::require(w.size() >= 2, ErrorKind::InvalidSize, "final gap needs at least two vertices");
  std::vector<double> v(w.values().begin(), w.values().end());
  std::partial_sort(v.begin(), v.begin() + 2, v.end());
  return v[1] - v[0];
}

struct EndgameBound {
  double s_star = 0.0;  // 1 - 1/(8 d_G)
  double bound = 0.0;   // 1/2 - 1/(8 d_G), for the rescaled potential
  double floor = 0.0;   // 7/16 when d_G >= 2, otherwise equal to bound
  double scale = 1.0;   // factor applied to W to make its final gap 1
};

/// Gap floor on [1 - 1/(8 d_G), 1] once W is rescaled to unit final gap.
inline EndgameBound endgame_bound(const Graph& g, const Potential& w) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(g.size() >= 2 && g.is_connected(), ErrorKind::Structure,
                  "endgame bound needs a connected graph with at least two vertices");
  const double gap1 = final_gap(w);
  detail::require(gap1 > 0.0, ErrorKind::Precondition, "potential has a degenerate minimum");
  const double d = static_cast<double>(g.max_degree());
  EndgameBound out;
  out.s_star = 1.0 - 1.0 / (8.0 * d);
  out.bound = 0.5 - 1.0 / (8.0 * d);
  out.floor = g.max_degree() >= 2 ? 7.0 / 16.0 : out.bound;
  out.scale = 1.0 / gap1;
  return out;
}

inline Potential rescale_to_unit_final_gap(const Potential& w) {
  const double gap1 = final_gap(w);
  detail::require(gap1 > 0.0, ErrorKind::Precondition, "potential has a degenerate minimum");
  return w.scaled(1.0 / gap1);
}

/// Floor on gamma(s) over all of [0, 1] for a unit-final-gap W whose ground
/// states stay single-peaked: the smaller of the endgame floor and
/// (1/(8 d_G)) / (2 (8 d_G |W| + d_G) |V|^2), which bounds the bulk floor on
/// [0, 1 - 1/(8 d_G)].
inline double schedule_gap_floor(const Graph& g, const Potential& unit_gap_w) {
  const EndgameBound end = endgame_bound(g, unit_gap_w);
  const double d = static_cast<double>(g.max_degree());
  const double n = static_cast<double>(g.size());
  const double start = (1.0 / (8.0 * d)) / (2.0 * (8.0 * d * unit_gap_w.spread() + d) * n * n);
  return std::min(end.bound, start);
}

enum class Regime { Bulk, Endgame };

inline const char* to_string(Regime r) { return r == Regime::Bulk ? "bulk" : "endgame"; }

struct ScheduleSample {
  double s = 0.0;
  double gamma = 0.0;                   // exact gap of H(s)
  std::optional<double> bulk_bound;     // when psi(s) is single-peaked and s < 1
  std::optional<double> endgame_bound;  // Weyl floor (1-delta) gamma(1) - 4 delta d_G, endgame regime only
  Regime regime = Regime::Bulk;
  bool single_peaked = false;

  /// Best applicable lower bound, if any.
  std::optional<double> bound() const {
    if (bulk_bound && endgame_bound) return std::max(*bulk_bound, *endgame_bound);
    return bulk_bound ? bulk_bound : endgame_bound;
  }
};

/// `uniform` evenly spaced points on [0, 0.99], 16 points 1 - 0.01 * 2^-k
/// accumulating toward 1, and s = 1 itself.
inline std::vector<double> default_sweep_grid(std::size_t uniform = 101) {
  std::vector<double> grid;
  if (uniform == 1) grid.push_back(0.0);
  for (std::size_t k = 0; uniform > 1 && k < uniform; ++k)
    grid.push_back(0.99 * static_cast<double>(k) / static_cast<double>(uniform - 1));
  for (int k = 1; k <= 16; ++k) grid.push_back(1.0 - 0.01 * std::ldexp(1.0, -k));
  grid.push_back(1.0);
  return grid;
}

/// Samples are independent and returned in grid order.
inline std::vector<ScheduleSample> gap_sweep(const Graph& g, const Potential& w, const std::vector<double>& grid,
                                             double tol = kDefaultTolerance) {
  detail::require_matching(g, w.size(), "potential");
  detail::require(!grid.empty(), ErrorKind::Domain, "sweep grid is empty");
  detail::require(g.size() >= 2 && g.is_connected(), ErrorKind::Structure,
                  "sweep needs a connected graph with at least two vertices");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    detail::require(grid[k] >= 0.0 && grid[k] <= 1.0, ErrorKind::Domain, "grid value outside [0, 1]");
    detail::require(k == 0 || grid[k - 1] <= grid[k], ErrorKind::Domain, "grid must be sorted");
  }
  const double d = static_cast<double>(g.max_degree());
  const double s_end = 1.0 - 1.0 / (8.0 * d);
  const double gap1 = final_gap(w);
  const std::size_t minimizers =
      static_cast<std::size_t>(std::count(w.values().begin(), w.values().end(), w.min()));

  std::vector<ScheduleSample> out;
  out.reserve(grid.size());
  for (double s : grid) {
    ScheduleSample sample;
    sample.s = s;
    sample.regime = s >= s_end ? Regime::Endgame : Regime::Bulk;
    if (s == 1.0) {
      sample.gamma = gap1;
      sample.single_peaked = minimizers == 1;
      sample.endgame_bound = gap1;
    } else {
      const Spectrum sol = solve_ground_and_gap(interpolated_hamiltonian(g, w, s), tol);
      sample.gamma = sol.gap;
      sample.single_peaked = sol.positive && is_single_peaked(g, sol.ground_vector);
      if (sample.single_peaked) sample.bulk_bound = bulk_gap_floor(g, w, s);
      if (sample.regime == Regime::Endgame) {
        const double delta = 1.0 - s;
        const double floor = (1.0 - delta) * gap1 - 4.0 * delta * d;
        if (floor > 0.0) sample.endgame_bound = floor;
      }
    }
    out.push_back(sample);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Switching schedule

namespace detail {

inline double unnormalized_bump(double y) {
  if (!(y > 0.0 && y < 1.0)) return 0.0;
  return std::exp(-1.0 / (y * (1.0 - y)));
}

inline double bump_integral(double a, double b) {
  if (!(b > a)) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(unnormalized_bump, a, b, 10, 1e-12);
}

}  // namespace detail

/// beta = 1 / int_0^1 exp(-1/(y(1-y))) dy, computed once by adaptive
/// Gauss-Kronrod quadrature.
inline double switching_normalization() {
  static const double beta = 1.0 / detail::bump_integral(0.0, 1.0);
  return beta;
}

/// g(y) = beta exp(-1/(y(1-y))) on (0, 1), zero elsewhere.
inline double switching_derivative(double x) { return switching_normalization() * detail::unnormalized_bump(x); }

/// s(x) = int_{-inf}^x g. The upper half is evaluated as 1 - int_x^1 g.
inline double switching_schedule(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double beta = switching_normalization();
  if (x <= 0.5) return beta * detail::bump_integral(0.0, x);
  return 1.0 - beta * detail::bump_integral(x, 1.0);
}

// ---------------------------------------------------------------------------
// Runtime estimates

struct RuntimeEstimate {
  double gamma_min = 0.0;
  double dH_ds_norm = 0.0;
  double tau_cubic = 0.0;   // ||dH/ds||^2 / gamma^3
  double tau_smooth = 0.0;  // ln(1/gamma)^12 / gamma^2
  bool log_degenerate = false;  // gamma >= 1, where ln(1/gamma) <= 0
};

inline RuntimeEstimate runtime_estimate(double gamma_min, double dH_norm) {
  detail::require(gamma_min > 0.0 && std::isfinite(gamma_min), ErrorKind::Domain, "gamma_min must be positive");
  detail::require(dH_norm > 0.0 && std::isfinite(dH_norm), ErrorKind::Domain, "||dH/ds|| must be positive");
  RuntimeEstimate r;
  r.gamma_min = gamma_min;
  r.dH_ds_norm = dH_norm;
  r.tau_cubic = dH_norm * dH_norm / (gamma_min * gamma_min * gamma_min);
  r.tau_smooth = std::pow(std::log(1.0 / gamma_min), 12) / (gamma_min * gamma_min);
  r.log_degenerate = gamma_min >= 1.0;
  return r;
}

}  // namespace gapline
