#pragma once

// Command-line front end. Exit codes: 0 success, 2 usage/parse, 3
// precondition, 4 solver, 5 bound violation or failed verification.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gapline/adiabatic.hpp"
#include "gapline/bounds.hpp"
#include "gapline/error.hpp"
#include "gapline/graph.hpp"
#include "gapline/graph_io.hpp"
#include "gapline/serialize.hpp"
#include "gapline/spectral.hpp"
#include "gapline/verify.hpp"

namespace gapline::cli {

enum ExitCode : int { kOk = 0, kParse = 2, kPrecondition = 3, kSolver = 4, kBoundViolation = 5 };

struct CommandReport {
  std::string command;
  std::size_t vertices = 0;
  double spread = 0.0;
  std::vector<std::string> outputs;  // files written; "-" for stdout
  int exit_code = kOk;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kParse;
    case ErrorKind::Solver:
    case ErrorKind::TransformUndefined:
    case ErrorKind::Consistency: return kSolver;
    default: return kPrecondition;
  }
}

/// Writes to a sibling temporary file and renames it into place.
inline void write_file_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) detail::fail(ErrorKind::Precondition, "cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) detail::fail(ErrorKind::Precondition, "failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) detail::fail(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/// GAPLINE_TOL if set and valid, else the library default.
inline double default_tolerance() {
  if (const char* env = std::getenv("GAPLINE_TOL")) {
    try {
      double t = std::stod(env);
      if (t > 0.0) return t;
    } catch (const std::exception&) {
    }
  }
  return kDefaultTolerance;
}

namespace detail {

inline void emit(const std::string& payload, const std::string& path, std::ostream& out, CommandReport& report) {
  if (path.empty() || path == "-") {
    out << payload;
    report.outputs.push_back("-");
  } else {
    write_file_atomically(path, payload);
    report.outputs.push_back(path);
  }
}

inline GraphDocument load(const std::string& path, CommandReport& report) {
  auto doc = read_graph(read_file(path));
  report.vertices = doc.graph.size();
  report.spread = doc.potential.spread();
  return doc;
}

inline std::vector<Vertex> parse_cut(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<Vertex>(v));
    } catch (const std::exception&) {
      gapline::detail::fail(ErrorKind::Parse, "--cut: bad vertex '" + item + "'");
    }
  }
  return out;
}

}  // namespace detail

inline void cmd_gen(const std::string& kind, std::size_t l, const std::string& output, std::ostream& out,
                    CommandReport& report) {
  std::string payload;
  if (kind == "path") {
    const Graph g = build_path(l);
    payload = write_graph(g, Potential::zero(g.size()));
    report.vertices = g.size();
  } else {
    const Caterpillar cat = build_caterpillar(l);
    payload = write_graph(cat.graph, cat.potential, label_map(cat));
    report.vertices = cat.graph.size();
    report.spread = cat.potential.spread();
  }
  detail::emit(payload, output, out, report);
}

inline void cmd_gap(const std::string& file, double tol, std::ostream& out, CommandReport& report) {
  const auto doc = detail::load(file, report);
  const auto sol = solve_ground_and_gap(assemble(doc.graph, doc.potential), tol);
  detail::emit(to_json(sol).dump() + "\n", "", out, report);
}

struct BoundsOptions {
  bool conductance = false;
  bool poincare = false;
  bool single_peaked = false;
  std::string cut;
};

inline void cmd_bounds(const std::string& file, const BoundsOptions& opt, double tol, std::ostream& out,
                       CommandReport& report) {
  const auto doc = detail::load(file, report);
  const Graph& g = doc.graph;
  const Potential& w = doc.potential;
  gapline::detail::require(g.is_connected(), ErrorKind::Structure, "bounds require a connected graph");
  const bool all = !opt.conductance && !opt.poincare && !opt.single_peaked;
  const auto sol = solve_ground_and_gap(assemble(g, w), tol);
  const double slack = std::max(1e-8, 10.0 * tol);

  Json j;
  j["gap"] = sol.gap;
  j["E"] = sol.ground_energy;
  bool violated = false;

  if (all || opt.conductance) {
    if (g.size() <= kMaxEnumerationVertices) {
      const auto s = gap_sandwich(g, w, tol);
      j["conductance"] = to_json(s);
      violated |= !s.holds(slack);
    } else if (opt.conductance && opt.cut.empty()) {
      gapline::detail::fail(ErrorKind::SizeGuard, "graph too large for exhaustive conductance; pass --cut");
    }
  }
  if (!opt.cut.empty()) {
    const auto report_cut = cut_profile(g, sol.ground_vector, detail::parse_cut(opt.cut));
    Json c = to_json(report_cut);
    c["upper"] = 2.0 * report_cut.ratio;
    j["cut"] = c;
    violated |= sol.gap > 2.0 * report_cut.ratio + slack;
  }
  if (all || opt.poincare) {
    const auto p = poincare_kappa(g, sol.ground_vector, default_canonical_paths(g));
    j["poincare"] = to_json(p);
    violated |= sol.gap < p.bound - slack;
  }
  if (all || opt.single_peaked) {
    Json sp;
    const bool peaked = sol.positive && is_single_peaked(g, sol.ground_vector);
    sp["applicable"] = peaked;
    if (peaked) {
      const double b = single_peaked_gap_bound(g, w, sol);
      sp["bound"] = b;
      violated |= sol.gap < b - slack;
    } else if (opt.single_peaked) {
      single_peaked_gap_bound(g, w, sol);  // throws with the maxima components
    }
    j["single_peaked"] = sp;
  }
  detail::emit(j.dump() + "\n", "", out, report);
  if (violated) report.exit_code = kBoundViolation;
}

inline void cmd_sweep(const std::string& file, std::size_t grid_points, const std::string& output, double tol,
                      std::ostream& out, CommandReport& report) {
  const auto doc = detail::load(file, report);
  const auto samples = gap_sweep(doc.graph, doc.potential, default_sweep_grid(grid_points), tol);
  detail::emit(sweep_csv(samples), output, out, report);
  for (const auto& s : samples)
    if (auto b = s.bound(); b && s.gamma < *b - std::max(1e-8, 10.0 * tol)) report.exit_code = kBoundViolation;
}

inline void print_table(const std::vector<verify::Criterion>& results, std::ostream& out) {
  out << "check | instance | expected | actual | pass\n";
  for (const auto& c : results) {
    out << "## " << c.id << ". " << c.title << "\n";
    for (const auto& r : c.rows)
      out << r.check << " | " << r.instance << " | " << r.expected << " | " << r.actual << " | "
          << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& c : results) out << (c.passed() ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << "\n";
}

inline void cmd_verify(std::size_t lmax, std::uint64_t seed, double tol, std::ostream& out, CommandReport& report) {
  gapline::detail::require(lmax >= 2, ErrorKind::InvalidSize, "--lmax must be at least 2");
  verify::Config cfg;
  cfg.lmax = lmax;
  cfg.lmax_structure = lmax;
  cfg.seed = seed;
  cfg.tol = tol;
  const auto results = verify::run_all(cfg);
  print_table(results, out);
  report.outputs.push_back("-");
  for (const auto& c : results)
    if (!c.passed()) report.exit_code = kBoundViolation;
}

inline CommandReport run(const std::vector<std::string>& args, std::ostream& out = std::cout,
                         std::ostream& err = std::cerr) {
  CLI::App app{"Ground states, spectral gaps and gap bounds for graph Hamiltonians", "gapline"};
  app.require_subcommand(1);
  double tol = default_tolerance();

  auto* gen = app.add_subcommand("gen", "Generate a fixture graph");
  std::string kind;
  std::size_t l = 0;
  std::string gen_out;
  gen->add_option("kind", kind, "path or caterpillar")->required()->check(CLI::IsMember({"path", "caterpillar"}));
  gen->add_option("--l", l, "Size parameter")->required();
  gen->add_option("-o,--output", gen_out, "Output file (stdout when omitted)");

  auto* gap = app.add_subcommand("gap", "Ground energy, gap and ground state as JSON");
  std::string gap_file;
  gap->add_option("file", gap_file, "Graph JSON")->required();
  gap->add_option("--tol", tol, "Relative residual tolerance");

  auto* bounds = app.add_subcommand("bounds", "Conductance, Poincare and single-peaked gap bounds as JSON");
  std::string bounds_file;
  BoundsOptions bopt;
  bounds->add_option("file", bounds_file, "Graph JSON")->required();
  bounds->add_flag("--conductance", bopt.conductance, "Exact conductance sandwich");
  bounds->add_flag("--poincare", bopt.poincare, "Poincare bound with breadth-first canonical paths");
  bounds->add_flag("--single-peaked", bopt.single_peaked, "Single-peaked lower bound");
  bounds->add_option("--cut", bopt.cut, "Comma-separated vertex subset for a cut upper bound");
  bounds->add_option("--tol", tol, "Relative residual tolerance");

  auto* sweep = app.add_subcommand("sweep", "Gap along the interpolation H(s) as CSV");
  std::string sweep_file;
  std::size_t grid = 101;
  std::string sweep_out;
  sweep->add_option("file", sweep_file, "Graph JSON")->required();
  sweep->add_option("--grid", grid, "Uniform points on [0, 0.99]")->check(CLI::PositiveNumber);
  sweep->add_option("-o,--output", sweep_out, "Output CSV (stdout when omitted)");
  sweep->add_option("--tol", tol, "Relative residual tolerance");

  auto* ver = app.add_subcommand("verify", "Run every gap-statement check and print a table");
  bool all = false;
  std::size_t lmax = 14;
  std::uint64_t seed = 0;
  ver->add_flag("--all", all, "Run every check (the only mode)");
  ver->add_option("--lmax", lmax, "Largest caterpillar size");
  ver->add_option("--seed", seed, "Random seed");

  CommandReport report;
  std::vector<const char*> argv{"gapline"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    report.exit_code = app.exit(e, out, err);
    return report;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    report.exit_code = kParse;
    return report;
  }

  try {
    if (*gen) {
      report.command = "gen";
      cmd_gen(kind, l, gen_out, out, report);
    } else if (*gap) {
      report.command = "gap";
      cmd_gap(gap_file, tol, out, report);
    } else if (*bounds) {
      report.command = "bounds";
      cmd_bounds(bounds_file, bopt, tol, out, report);
    } else if (*sweep) {
      report.command = "sweep";
      cmd_sweep(sweep_file, grid, sweep_out, tol, out, report);
    } else if (*ver) {
      report.command = "verify";
      cmd_verify(lmax, seed, tol, out, report);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    report.exit_code = exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
    report.exit_code = kPrecondition;
  }
  return report;
}

}  // namespace gapline::cli
