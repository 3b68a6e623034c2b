#pragma once

// End-to-end checks of every gap statement the library implements. Each
// criterion returns a table of rows; random criteria report one summary row
// plus a row for every failing instance.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gapline/adiabatic.hpp"
#include "gapline/bounds.hpp"
#include "gapline/graph.hpp"
#include "gapline/random.hpp"
#include "gapline/serialize.hpp"
#include "gapline/spectral.hpp"

namespace gapline::verify {

struct Config {
  std::size_t lmax = 14;            // caterpillar spectral checks
  std::size_t lmax_structure = 20;  // caterpillar minima / basin checks
  std::uint64_t seed = 0;
  std::size_t random_graphs = 1000;
  std::size_t single_peaked_instances = 1000;
  std::size_t path_instances = 200;
  std::size_t sweep_instances = 50;
  std::size_t flat_path_max = 200;
  double tol = kDefaultTolerance;
};

struct Row {
  std::string check;
  std::string instance;
  std::string expected;
  std::string actual;
  bool pass;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Row> rows;

  bool passed() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return !rows.empty();
  }
};

namespace detail {

inline std::string num(double x) { return format_double(x); }

/// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Aggregate row for a batch of random checks.
struct Tally {
  std::string check;
  std::string instance;
  std::string expected;
  std::size_t total = 0;
  std::size_t failed = 0;
  std::vector<Row> failures;

  void record(bool ok, const std::string& inst, const std::string& actual) {
    ++total;
    if (!ok) {
      ++failed;
      failures.push_back({check, inst, expected, actual, false});
    }
  }

  void flush(std::vector<Row>& rows) const {
    rows.push_back({check, instance, expected, std::to_string(total - failed) + "/" + std::to_string(total),
                    failed == 0 && total > 0});
    rows.insert(rows.end(), failures.begin(), failures.end());
  }
};

struct PathInstance {
  std::size_t l;
  Potential w;
};

inline std::vector<PathInstance> path_instances(const Config& cfg) {
  Rng rng(cfg.seed + 6);
  std::vector<PathInstance> out;
  for (std::size_t k = 0; k < cfg.path_instances; ++k) {
    const std::size_t l = std::uniform_int_distribution<std::size_t>(3, 50)(rng);
    out.push_back({l, random_single_basin_path_potential(l, rng)});
  }
  return out;
}

}  // namespace detail

/// Closed-form caterpillar ground state is an exact zero mode and the
/// eigensolver's ground energy is zero.
inline Criterion caterpillar_exactness(const Config& cfg) {
  Criterion c{1, "counterexample exactness", {}};
  for (std::size_t l = 2; l <= cfg.lmax; ++l) {
    const auto cat = build_caterpillar(l);
    const auto psi = caterpillar_ground_state(l);
    const auto h = assemble(cat.graph, cat.potential);
    const double res = eigen_residual(h, psi, 0.0) * gapline::detail::as_eigen(psi).norm();
    c.rows.push_back({"||H psi||", "caterpillar l=" + std::to_string(l), "<= 1e-12", detail::num(res), res <= 1e-12});
    const auto sol = solve_ground_and_gap(h, cfg.tol);
    c.rows.push_back({"ground energy", "caterpillar l=" + std::to_string(l), "|E| <= 1e-9",
                      detail::num(sol.ground_energy), std::abs(sol.ground_energy) <= 1e-9});
  }
  return c;
}

/// gamma <= 2 (2/3)^{2l-1} and ln gamma decays with slope 2 ln(2/3) (5%),
/// fitted over l in [4, lmax].
inline Criterion caterpillar_gap_collapse(const Config& cfg) {
  Criterion c{2, "counterexample gap collapse", {}};
  std::vector<double> xs, ys;
  for (std::size_t l = 2; l <= cfg.lmax; ++l) {
    const auto cat = build_caterpillar(l);
    const auto sol = solve_ground_and_gap(assemble(cat.graph, cat.potential), cfg.tol);
    const double bound = 2.0 * std::pow(2.0 / 3.0, 2.0 * static_cast<double>(l) - 1.0);
    c.rows.push_back({"gap <= 2(2/3)^(2l-1)", "caterpillar l=" + std::to_string(l), detail::num(bound),
                      detail::num(sol.gap), sol.gap <= bound});
    if (l >= 4) {
      xs.push_back(static_cast<double>(l));
      ys.push_back(std::log(sol.gap));
    }
  }
  const double target = 2.0 * std::log(2.0 / 3.0);
  if (xs.size() >= 2) {
    const double slope = detail::ls_slope(xs, ys);
    c.rows.push_back({"slope of ln gap", "l in [4," + std::to_string(cfg.lmax) + "]",
                      detail::num(target) + " +/- 5%", detail::num(slope),
                      std::abs(slope / target - 1.0) <= 0.05});
  }
  return c;
}

/// The caterpillar potential has B_l as its only local minimum and is single-basin.
inline Criterion caterpillar_no_local_minima(const Config& cfg) {
  Criterion c{3, "no local minima", {}};
  for (std::size_t l = 2; l <= cfg.lmax_structure; ++l) {
    const auto cat = build_caterpillar(l);
    const auto minima = find_local_minima(cat.graph, cat.potential);
    const bool only_center = minima.size() == 1 && minima[0] == cat.center();
    c.rows.push_back({"local minima", "caterpillar l=" + std::to_string(l), "{B_l}",
                      only_center ? "{B_l}" : std::to_string(minima.size()) + " minima", only_center});
    const bool basin = is_single_basin(cat.graph, cat.potential);
    c.rows.push_back({"single basin", "caterpillar l=" + std::to_string(l), "true", basin ? "true" : "false", basin});
  }
  return c;
}

struct SandwichOutcome {
  Criterion sandwich;
  Criterion walk;
};

/// Conductance sandwich on random graphs, plus the walk-matrix contracts on
/// every walk matrix built along the way.
inline SandwichOutcome conductance_sandwich(const Config& cfg) {
  SandwichOutcome out{{4, "conductance sandwich", {}}, {8, "walk-matrix contracts", {}}};
  Rng rng(cfg.seed + 4);
  detail::Tally sandwich{"-Phi^2/(2E) <= gap <= 2 Phi", std::to_string(cfg.random_graphs) + " random graphs n<=12",
                         "all within 1e-8"};
  detail::Tally rows{"row sums", "every walk matrix", "|sum - 1| <= 1e-12"};
  detail::Tally balance{"detailed balance", "every walk matrix", "<= 1e-12"};
  detail::Tally relation{"(-E) gap(P) = gap(H)", "every walk matrix", "within 1e-8"};
  for (std::size_t k = 0; k < cfg.random_graphs; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    const Graph g = random_connected_graph(n, p, rng);
    const Potential w = random_potential(n, -1.0, 1.0, rng);
    const std::string inst = "seed-offset " + std::to_string(k) + " n=" + std::to_string(n);

    const auto s = gap_sandwich(g, w, cfg.tol);
    sandwich.record(s.holds(1e-8), inst,
                    detail::num(s.lower) + " <= " + detail::num(s.gap) + " <= " + detail::num(s.upper));

    const auto shifted = normalize_potential(g, w).potential;
    const auto sol = solve_ground_and_gap(assemble(g, shifted), cfg.tol);
    const auto walk = build_walk_matrix(g, shifted, sol);
    const double dev = walk.max_row_sum_deviation();
    rows.record(dev <= 1e-12, inst, detail::num(dev));
    const double bal = walk.max_detailed_balance_violation();
    balance.record(bal <= 1e-12, inst, detail::num(bal));
    const double rel = -sol.ground_energy * walk.spectral_gap();
    relation.record(std::abs(rel - sol.gap) <= 1e-8, inst, detail::num(rel) + " vs " + detail::num(sol.gap));
  }
  sandwich.flush(out.sandwich.rows);
  rows.flush(out.walk.rows);
  balance.flush(out.walk.rows);
  relation.flush(out.walk.rows);
  return out;
}

/// gamma >= 1/(2(|W|+d_G)|V|^2) on random instances with single-peaked ground states.
inline Criterion single_peaked_bound(const Config& cfg) {
  Criterion c{5, "single-peaked bound", {}};
  Rng rng(cfg.seed + 5);
  detail::Tally t{"gap >= 1/(2(|W|+d)|V|^2)", std::to_string(cfg.single_peaked_instances) + " single-peaked instances",
                  "all within 1e-12"};
  std::size_t attempts = 0;
  const std::size_t budget = 200 * cfg.single_peaked_instances + 1000;
  while (t.total < cfg.single_peaked_instances && attempts < budget) {
    ++attempts;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    const double amp = std::uniform_real_distribution<double>(0.05, 4.0)(rng);
    const Graph g = random_connected_graph(n, p, rng);
    const Potential w = random_potential(n, -amp, amp, rng);
    const auto sol = solve_ground_and_gap(assemble(g, w), cfg.tol);
    if (!sol.positive || !is_single_peaked(g, sol.ground_vector)) continue;
    const double floor = single_peaked_gap_bound(g, w, sol);
    t.record(sol.gap >= floor - 1e-12, "attempt " + std::to_string(attempts),
             detail::num(sol.gap) + " vs " + detail::num(floor));
  }
  t.flush(c.rows);
  if (t.total < cfg.single_peaked_instances)
    c.rows.push_back({"instance count", "random search", std::to_string(cfg.single_peaked_instances),
                      std::to_string(t.total), false});
  return c;
}

/// Single-basin paths have single-peaked ground states and obey the path floor.
inline Criterion path_specialization(const Config& cfg) {
  Criterion c{6, "path specialization", {}};
  const std::string inst = std::to_string(cfg.path_instances) + " single-basin paths l in [3,50]";
  detail::Tally basin{"generator is single-basin", inst, "true"};
  detail::Tally peaked{"ground state single-peaked", inst, "true"};
  detail::Tally floor{"gap >= 1/(2(|W|+2)l^2)", inst, "all"};
  std::size_t k = 0;
  for (const auto& pi : detail::path_instances(cfg)) {
    const Graph g = build_path(pi.l);
    const std::string name = "path #" + std::to_string(k++) + " l=" + std::to_string(pi.l);
    basin.record(is_single_basin(g, pi.w), name, "false");
    const auto sol = solve_ground_and_gap(assemble(g, pi.w), cfg.tol);
    const bool sp = sol.positive && is_single_peaked(g, sol.ground_vector);
    peaked.record(sp, name, "false");
    const double l = static_cast<double>(pi.l);
    const double f = 1.0 / (2.0 * (pi.w.spread() + 2.0) * l * l);
    floor.record(sol.gap >= f, name, detail::num(sol.gap) + " vs " + detail::num(f));
  }
  basin.flush(c.rows);
  peaked.flush(c.rows);
  floor.flush(c.rows);
  return c;
}

/// Poincare bounds on the same paths and the flat-chain comparison.
inline Criterion poincare(const Config& cfg) {
  Criterion c{7, "Poincare", {}};
  const std::string inst = std::to_string(cfg.path_instances) + " single-basin paths l in [3,50]";
  detail::Tally truth{"gap >= 1/kappa'", inst, "all (slack 1e-10)"};
  detail::Tally path_floor{"1/kappa' >= 1/(l(l-1))", inst, "all (rel. slack 1e-10)"};
  detail::Tally agree{"path kappa' = generic kappa'", inst, "rel. diff <= 1e-12"};
  std::size_t k = 0;
  for (const auto& pi : detail::path_instances(cfg)) {
    const Graph g = build_path(pi.l);
    const std::string name = "path #" + std::to_string(k++) + " l=" + std::to_string(pi.l);
    const auto sol = solve_ground_and_gap(assemble(g, pi.w), cfg.tol);
    const auto generic = poincare_kappa(g, sol.ground_vector, default_canonical_paths(g));
    const double special = path_kappa(sol.ground_vector);
    truth.record(sol.gap >= generic.bound - 1e-10, name,
                 detail::num(sol.gap) + " vs " + detail::num(generic.bound));
    const double l = static_cast<double>(pi.l);
    path_floor.record(generic.kappa <= l * (l - 1.0) * (1.0 + 1e-10), name,
                      "kappa' " + detail::num(generic.kappa) + " vs l(l-1) " + detail::num(l * (l - 1.0)));
    agree.record(std::abs(special - generic.kappa) <= 1e-12 * generic.kappa, name,
                 detail::num(special) + " vs " + detail::num(generic.kappa));
  }
  truth.flush(c.rows);
  path_floor.flush(c.rows);
  agree.flush(c.rows);

  detail::Tally flat{"flat gap = 4 sin^2(pi/2l)", "W=0 paths l in [2,50] and " + std::to_string(cfg.flat_path_max),
                     "within 1e-10"};
  std::vector<std::size_t> ls;
  for (std::size_t l = 2; l <= 50; ++l) ls.push_back(l);
  if (cfg.flat_path_max > 50) ls.push_back(cfg.flat_path_max);
  for (std::size_t l : ls) {
    const auto sol = solve_ground_and_gap(laplacian(build_path(l)), cfg.tol);
    const double exact = 4.0 * std::pow(std::sin(std::numbers::pi / (2.0 * static_cast<double>(l))), 2);
    flat.record(std::abs(sol.gap - exact) <= 1e-10, "l=" + std::to_string(l),
                detail::num(sol.gap) + " vs " + detail::num(exact));
  }
  flat.flush(c.rows);

  const std::size_t big = cfg.flat_path_max;
  const Graph g = build_path(big);
  const auto sol = solve_ground_and_gap(laplacian(g), cfg.tol);
  const auto pk = poincare_kappa(g, sol.ground_vector, default_canonical_paths(g));
  const double lb = static_cast<double>(big);
  const double ratio = sol.gap * lb * (lb - 1.0);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  c.rows.push_back({"gap * l(l-1)", "W=0 path l=" + std::to_string(big), "pi^2 within 5%", detail::num(ratio),
                    std::abs(ratio / pi2 - 1.0) <= 0.05});
  c.rows.push_back({"gap >= 1/kappa'", "W=0 path l=" + std::to_string(big), detail::num(pk.bound),
                    detail::num(sol.gap), sol.gap >= pk.bound - 1e-10});
  return c;
}

/// Sweeps on random trees and paths with unit final gap.
inline Criterion adiabatic_sweep(const Config& cfg) {
  Criterion c{9, "adiabatic sweep", {}};
  Rng rng(cfg.seed + 9);
  const std::string inst = std::to_string(cfg.sweep_instances) + " random trees/paths, unit final gap";
  detail::Tally bulk{"gap(s) >= bulk floor (single-peaked samples)", inst, "all within 1e-10"};
  detail::Tally end{"gap(s) >= 7/16 on [1-1/(8d),1]", inst, "all within 1e-8"};
  std::size_t endgame_samples = 0;
  const auto grid = default_sweep_grid();
  for (std::size_t k = 0; k < cfg.sweep_instances; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 16)(rng);
    const Graph g = (k % 2 == 0) ? build_path(n) : random_tree(n, rng);
    Potential w = random_potential(n, 0.0, 1.0, rng);
    if (final_gap(w) <= 0.0) continue;
    w = rescale_to_unit_final_gap(w);
    const std::string name = "instance " + std::to_string(k) + (k % 2 == 0 ? " path" : " tree") +
                             " n=" + std::to_string(n);
    for (const auto& smp : gap_sweep(g, w, grid, cfg.tol)) {
      if (smp.bulk_bound)
        bulk.record(smp.gamma >= *smp.bulk_bound - 1e-10, name + " s=" + detail::num(smp.s),
                    detail::num(smp.gamma) + " vs " + detail::num(*smp.bulk_bound));
      if (smp.regime == Regime::Endgame) {
        ++endgame_samples;
        end.record(smp.gamma >= 7.0 / 16.0 - 1e-8, name + " s=" + detail::num(smp.s), detail::num(smp.gamma));
      }
    }
  }
  bulk.flush(c.rows);
  end.flush(c.rows);
  return c;
}

/// Composite Simpson on [a, b] with m (even) panels.
inline double simpson(double (*f)(double), double a, double b, std::size_t m) {
  const double h = (b - a) / static_cast<double>(m);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return acc * h / 3.0;
}

/// Switching schedule normalization, monotonicity, and derivative.
inline Criterion switching(const Config&) {
  Criterion c{10, "switching schedule", {}};
  const double beta = switching_normalization();
  const double oracle = simpson(gapline::detail::unnormalized_bump, 0.0, 1.0, 200000);
  const double total = beta * oracle;
  c.rows.push_back({"s(0)", "schedule", "0 within 1e-9", detail::num(switching_schedule(0.0)),
                    std::abs(switching_schedule(0.0)) <= 1e-9});
  c.rows.push_back({"s(1) = beta * int_0^1 bump (Simpson oracle)", "schedule", "1 within 1e-9", detail::num(total),
                    std::abs(total - 1.0) <= 1e-9});
  const double half = switching_schedule(0.5);
  c.rows.push_back({"s(1/2)", "schedule", "0.5 within 1e-9", detail::num(half), std::abs(half - 0.5) <= 1e-9});

  constexpr std::size_t kGrid = 10000;
  bool monotone = true;
  double prev = -1.0;
  for (std::size_t i = 0; i <= kGrid; ++i) {
    const double s = switching_schedule(static_cast<double>(i) / kGrid);
    if (s < prev) monotone = false;
    prev = s;
  }
  c.rows.push_back({"monotone", "10^4-point grid on [0,1]", "nondecreasing", monotone ? "yes" : "no", monotone});

  double worst = 0.0;
  constexpr double h = 1e-5;
  for (std::size_t i = 0; i < kGrid; ++i) {
    const double x = 0.01 + 0.98 * (static_cast<double>(i) + 0.5) / kGrid;
    const double fd = (switching_schedule(x + h) - switching_schedule(x - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - switching_derivative(x)));
  }
  c.rows.push_back({"|s'(x) - g(x)| (central difference)", "(0.01, 0.99)", "<= 1e-6", detail::num(worst),
                    worst <= 1e-6});
  return c;
}

/// Every criterion, in order.
inline std::vector<Criterion> run_all(const Config& cfg) {
  std::vector<Criterion> out;
  out.push_back(caterpillar_exactness(cfg));
  out.push_back(caterpillar_gap_collapse(cfg));
  out.push_back(caterpillar_no_local_minima(cfg));
  auto sw = conductance_sandwich(cfg);
  out.push_back(std::move(sw.sandwich));
  out.push_back(single_peaked_bound(cfg));
  out.push_back(path_specialization(cfg));
  out.push_back(poincare(cfg));
  out.push_back(std::move(sw.walk));
  out.push_back(adiabatic_sweep(cfg));
  out.push_back(switching(cfg));
  return out;
}

}  // namespace gapline::verify
