#pragma once

// JSON and CSV renderings of solver and bound results. Doubles go through
// nlohmann's shortest round-trip formatting in JSON and %.17g in CSV, so
// both are exact at double precision.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapline/adiabatic.hpp"
#include "gapline/bounds.hpp"
#include "gapline/spectral.hpp"

namespace gapline {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json to_json(const Spectrum& s) {
  Json j;
  j["E"] = s.ground_energy;
  j["gap"] = s.gap;
  j["psi"] = s.ground_vector;
  j["residual"] = s.residual_norm;
  return j;
}

inline Json to_json(const CutReport& r) {
  Json j;
  j["subset"] = r.subset;
  j["flow"] = r.flow;
  j["mass"] = r.mass;
  j["complement_mass"] = r.complement_mass;
  j["ratio"] = r.ratio;
  return j;
}

inline Json to_json(const ConductanceReport& r) {
  Json j;
  j["phi"] = r.phi;
  j["subset"] = r.minimizer.subset;
  j["flow"] = r.minimizer.flow;
  j["mass"] = r.minimizer.mass;
  j["complement_mass"] = r.minimizer.complement_mass;
  j["cuts_examined"] = r.cuts_examined;
  return j;
}

inline Json to_json(const GapSandwich& s) {
  Json j = to_json(s.conductance);
  j["lower"] = s.lower;
  j["upper"] = s.upper;
  j["gap"] = s.gap;
  j["shifted_E"] = s.shifted_ground_energy;
  return j;
}

inline Json to_json(const PoincareResult& r) {
  Json j;
  j["kappa"] = r.kappa;
  j["bound"] = r.bound;
  j["bottleneck"] = {r.bottleneck.u, r.bottleneck.v};
  return j;
}

inline Json to_json(const RuntimeEstimate& r) {
  Json j;
  j["gamma_min"] = r.gamma_min;
  j["dH_ds_norm"] = r.dH_ds_norm;
  j["tau_cubic"] = r.tau_cubic;
  j["tau_smooth"] = r.tau_smooth;
  j["log_degenerate"] = r.log_degenerate;
  j["constants"] = "up to the adiabatic theorem's constant";
  return j;
}

/// Header "s,gamma,bound,regime,single_peaked"; a missing bound prints as nan.
inline std::string sweep_csv(const std::vector<ScheduleSample>& samples) {
  std::string out = "s,gamma,bound,regime,single_peaked\n";
  for (const auto& x : samples) {
    const auto b = x.bound();
    out += format_double(x.s) + "," + format_double(x.gamma) + "," + (b ? format_double(*b) : std::string("nan")) +
           "," + to_string(x.regime) + "," + (x.single_peaked ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace gapline
