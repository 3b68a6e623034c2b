#pragma once

// Graph Hamiltonians H = L_G + diag(W), the dense ground-state/gap solve, and
// the variational and curvature diagnostics built on top of it.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gapline/error.hpp"
#include "gapline/graph.hpp"

namespace gapline {

/// Default relative residual tolerance for eigenpairs.
inline constexpr double kDefaultTolerance = 1e-10;

/// Entries of |Lap psi| at or below this are treated as zero when forming the
/// negative-curvature set.
inline constexpr double kCurvatureZero = 1e-12;

struct Hamiltonian {
  Eigen::MatrixXd matrix;
  bool connected = true;             // underlying graph connected
  std::optional<double> parameter;   // interpolation s, when built from H(s)

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

struct Spectrum {
  double ground_energy = 0.0;
  double second_energy = 0.0;
  double gap = 0.0;
  std::vector<double> ground_vector;  // unit 2-norm, sign-fixed
  double residual_norm = 0.0;         // relative, max over both eigenpairs
  double tolerance = kDefaultTolerance;
  bool degenerate = false;            // gap below tolerance
  bool positive = true;               // every ground_vector entry > 0
  std::size_t tiny_entries = 0;       // entries below 1e-14 after the sign fix
};

namespace detail {

inline Eigen::Map<const Eigen::VectorXd> as_eigen(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

inline double residual_scale(const Eigen::MatrixXd& m) {
  return std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
}

/// Ground vector of a tree-shaped matrix (negative off-diagonals) from the
/// leaf-to-root ratios psi(v)/psi(parent) = -m(v,p) / (m(v,v) - e + sum_c m(v,c) r_c),
/// rooted at the dense solution's largest entry. Every ratio is positive, so
/// exponentially small tails keep full relative accuracy where a dense
/// eigenvector only resolves them to ~1e-16 absolute. Empty on anything that
/// is not a tree or when a pivot is not positive.
inline std::optional<Eigen::VectorXd> tree_ground_vector(const Eigen::MatrixXd& m, double e, Eigen::Index root) {
  const Eigen::Index n = m.rows();
  std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(n));
  Eigen::Index edges = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (m(i, j) == 0.0) continue;
      if (!(m(i, j) < 0.0) || ++edges >= n) return std::nullopt;
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  if (edges != n - 1) return std::nullopt;

  std::vector<Eigen::Index> order{root};
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n), -1);
  parent[root] = root;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (Eigen::Index y : adj[order[k]])
      if (parent[y] < 0) {
        parent[y] = order[k];
        order.push_back(y);
      }
  if (static_cast<Eigen::Index>(order.size()) != n) return std::nullopt;

  std::vector<double> ratio(static_cast<std::size_t>(n), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Eigen::Index v = *it;
    if (v == root) continue;
    double pivot = m(v, v) - e;
    for (Eigen::Index c : adj[v])
      if (c != parent[v]) pivot += m(v, c) * ratio[c];
    if (!(pivot > 0.0)) return std::nullopt;
    ratio[v] = -m(v, parent[v]) / pivot;
  }
  Eigen::VectorXd psi(n);
  psi(root) = 1.0;
  for (std::size_t k = 1; k < order.size(); ++k) psi(order[k]) = ratio[order[k]] * psi(parent[order[k]]);
  psi.normalize();
  if (!psi.allFinite()) return std::nullopt;
  return psi;
}

}  // namespace detail

/// L_G + sum_x W(x)|x><x|.
inline Hamiltonian assemble(const Graph& g, const Potential& w) {
  detail::require_matching(g, w.size(), "potential");
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Vertex x = 0; x < g.size(); ++x) m(x, x) = static_cast<double>(g.degree(x)) + w[x];
  for (const auto& e : g.edges()) {
    m(e.u, e.v) = -1.0;
    m(e.v, e.u) = -1.0;
  }
  return Hamiltonian{std::move(m), g.is_connected(), std::nullopt};
}

inline Hamiltonian laplacian(const Graph& g) { return assemble(g, Potential::zero(g.size())); }

/// All eigenvalues in ascending order. Test and diagnostic helper.
inline std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolve did not converge", INFINITY);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Largest |eigenvalue| of a symmetric matrix.
inline double operator_norm(const Eigen::MatrixXd& m) {
  auto ev = eigenvalues(m);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

/// Two lowest eigenpairs of h via a dense Householder tridiagonalization plus
/// implicit symmetric QR sweep. Fails with SolverError when either eigenpair
/// misses the relative residual tol.
/// Tree-shaped Hamiltonians get their ground vector rebuilt by
/// detail::tree_ground_vector, so tiny tail entries stay positive.
inline Spectrum solve_ground_and_gap(const Hamiltonian& h, double tol = kDefaultTolerance) {
  detail::require(h.size() >= 2, ErrorKind::InvalidSize, "gap needs at least two vertices");
  detail::require(tol > 0.0, ErrorKind::Domain, "tolerance must be positive");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix);
  if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolve did not converge", INFINITY);

  const double scale = detail::residual_scale(h.matrix);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();

  double worst = 0.0;
  for (Eigen::Index k = 0; k < 2; ++k) {
    Eigen::VectorXd v = vecs.col(k);
    worst = std::max(worst, (h.matrix * v - vals(k) * v).norm() / (v.norm() * scale));
  }
  if (!(worst <= tol))
    throw SolverError("eigenpair residual " + std::to_string(worst) + " exceeds tolerance " + std::to_string(tol),
                      worst);

  Eigen::VectorXd psi = vecs.col(0);
  psi.normalize();
  Eigen::Index arg = 0;
  psi.cwiseAbs().maxCoeff(&arg);
  if (psi(arg) < 0) psi = -psi;
  if (h.connected) {
    if (auto tree = detail::tree_ground_vector(h.matrix, vals(0), arg)) {
      const double res = (h.matrix * *tree - vals(0) * *tree).norm() / scale;
      if (res <= tol) {
        psi = *tree;
        worst = std::max(worst, res);
      }
    }
  }

  Spectrum out;
  out.ground_energy = vals(0);
  out.second_energy = vals(1);
  out.gap = vals(1) - vals(0);
  out.ground_vector.assign(psi.data(), psi.data() + psi.size());
  out.residual_norm = worst;
  out.tolerance = tol;
  out.degenerate = out.gap < tol * scale;
  for (double x : out.ground_vector) {
    if (x <= 0.0) out.positive = false;
    if (x < 1e-14) ++out.tiny_entries;
  }
  return out;
}

/// ||Hv - lambda v|| / ||v||.
inline double eigen_residual(const Hamiltonian& h, std::span<const double> v, double lambda) {
  detail::require(v.size() == h.size(), ErrorKind::Dimension, "vector length does not match Hamiltonian");
  auto ev = detail::as_eigen(v);
  const double norm = ev.norm();
  detail::require(norm > 0.0, ErrorKind::Domain, "zero vector has no residual");
  return (h.matrix * ev - lambda * ev).norm() / norm;
}

/// <v|H|v>, without normalization.
inline double expectation(const Hamiltonian& h, std::span<const double> v) {
  detail::require(v.size() == h.size(), ErrorKind::Dimension, "vector length does not match Hamiltonian");
  auto ev = detail::as_eigen(v);
  return ev.dot(h.matrix * ev);
}

/// <v|H|v> / <v|v>.
inline double rayleigh_quotient(const Hamiltonian& h, std::span<const double> v) {
  detail::require(v.size() == h.size(), ErrorKind::Dimension, "vector length does not match Hamiltonian");
  const double nn = detail::as_eigen(v).squaredNorm();
  detail::require(nn > 0.0, ErrorKind::Domain, "zero vector has no Rayleigh quotient");
  return expectation(h, v) / nn;
}

/// psi on the left lobe, -psi on the right lobe, zero on B_l and both C_l legs.
/// Orthogonal to psi by the mirror symmetry of the caterpillar.
inline std::vector<double> two_lobe_trial_state(std::size_t l, std::span<const double> psi) {
  const Caterpillar cat = build_caterpillar(l);
  detail::require(psi.size() == cat.graph.size(), ErrorKind::Dimension,
                  "trial state needs a caterpillar ground state of length " + std::to_string(cat.graph.size()));
  std::vector<double> phi(psi.size(), 0.0);
  for (Vertex x = 0; x < psi.size(); ++x) {
    switch (cat.labels[x].side) {
      case VertexLabel::Side::Left: phi[x] = psi[x]; break;
      case VertexLabel::Side::Right: phi[x] = -psi[x]; break;
      case VertexLabel::Side::Center: phi[x] = 0.0; break;
    }
  }
  return phi;
}

struct TrialEnergy {
  double unnormalized;  // <phi|H|phi>
  double norm_squared;  // eta = <phi|phi>
  double normalized;    // <phi|H|phi> / eta
};

inline TrialEnergy trial_energy(const Hamiltonian& h, std::span<const double> phi) {
  const double e = expectation(h, phi);
  const double eta = detail::as_eigen(phi).squaredNorm();
  detail::require(eta > 0.0, ErrorKind::Domain, "zero trial state");
  return {e, eta, e / eta};
}

/// Discrete Laplacian -d_x psi(x) + sum_{y ~ x} psi(y), so that L_G psi = -result.
inline std::vector<double> discrete_curvature(const Graph& g, std::span<const double> psi) {
  detail::require_matching(g, psi.size(), "wavefunction");
  std::vector<double> out(g.size());
  for (Vertex x = 0; x < g.size(); ++x) {
    double acc = -static_cast<double>(g.degree(x)) * psi[x];
    for (Vertex y : g.neighbors(x)) acc += psi[y];
    out[x] = acc;
  }
  return out;
}

/// S[psi] = {x : Lap psi(x) < 0}, with |Lap psi| <= kCurvatureZero treated as 0.
inline std::vector<Vertex> negative_curvature_set(const Graph& g, std::span<const double> psi) {
  auto curv = discrete_curvature(g, psi);
  std::vector<Vertex> out;
  for (Vertex x = 0; x < g.size(); ++x)
    if (curv[x] < -kCurvatureZero) out.push_back(x);
  return out;
}

}  // namespace gapline
