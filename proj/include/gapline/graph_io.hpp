#pragma once

// JSON graph documents:
//   {"n": int, "edges": [[int,int],...], "potential": [float,...], "labels": {name: int}}
// "potential" and "labels" are optional on input. The writer emits each edge
// with its smaller endpoint first, edges sorted lexicographically, and always
// writes the potential.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gapline/error.hpp"
#include "gapline/graph.hpp"

namespace gapline {

struct GraphDocument {
  Graph graph;
  Potential potential;
  std::map<std::string, Vertex> labels;
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& field, const std::string& what) {
  fail(ErrorKind::Parse, field + ": " + what);
}

inline std::size_t parse_index(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer()) parse_fail(field, "expected an integer");
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  auto v = j.get<long long>();
  if (v < 0) parse_fail(field, "negative index " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline GraphDocument read_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::parse_fail("document", e.what());
  }
  if (!doc.is_object()) detail::parse_fail("document", "expected a JSON object");

  if (!doc.contains("n")) detail::parse_fail("n", "missing");
  const std::size_t n = detail::parse_index(doc["n"], "n");
  if (n == 0) detail::parse_fail("n", "must be positive");

  if (!doc.contains("edges")) detail::parse_fail("edges", "missing");
  const auto& jedges = doc["edges"];
  if (!jedges.is_array()) detail::parse_fail("edges", "expected an array");
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::pair<Vertex, Vertex>> seen;
  for (std::size_t k = 0; k < jedges.size(); ++k) {
    const std::string field = "edges[" + std::to_string(k) + "]";
    const auto& je = jedges[k];
    if (!je.is_array() || je.size() != 2) detail::parse_fail(field, "expected a pair of vertex indices");
    Vertex a = detail::parse_index(je[0], field);
    Vertex b = detail::parse_index(je[1], field);
    if (a >= n || b >= n) detail::parse_fail(field, "endpoint out of range for n = " + std::to_string(n));
    if (a == b) detail::parse_fail(field, "self-loop");
    edges.emplace_back(a, b);
  }
  {
    auto sorted = edges;
    for (auto& [a, b] : sorted)
      if (a > b) std::swap(a, b);
    std::vector<std::size_t> order(sorted.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return sorted[x] < sorted[y]; });
    for (std::size_t k = 1; k < order.size(); ++k)
      if (sorted[order[k]] == sorted[order[k - 1]])
        detail::parse_fail("edges[" + std::to_string(std::max(order[k], order[k - 1])) + "]", "duplicate edge");
  }

  std::vector<double> w(n, 0.0);
  if (doc.contains("potential")) {
    const auto& jw = doc["potential"];
    if (!jw.is_array()) detail::parse_fail("potential", "expected an array");
    if (jw.size() != n)
      detail::parse_fail("potential", "length " + std::to_string(jw.size()) + " does not match n = " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) {
      if (!jw[k].is_number()) detail::parse_fail("potential[" + std::to_string(k) + "]", "expected a number");
      w[k] = jw[k].get<double>();
    }
  }

  std::map<std::string, Vertex> labels;
  if (doc.contains("labels")) {
    const auto& jl = doc["labels"];
    if (!jl.is_object()) detail::parse_fail("labels", "expected an object");
    for (auto it = jl.begin(); it != jl.end(); ++it) {
      const std::string field = "labels." + it.key();
      Vertex v = detail::parse_index(it.value(), field);
      if (v >= n) detail::parse_fail(field, "vertex out of range");
      labels.emplace(it.key(), v);
    }
  }

  return GraphDocument{Graph(n, edges), Potential(std::move(w)), std::move(labels)};
}

inline std::string write_graph(const Graph& g, const Potential& w, const std::map<std::string, Vertex>& labels = {}) {
  detail::require_matching(g, w.size(), "potential");
  nlohmann::ordered_json doc;
  doc["n"] = g.size();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  doc["potential"] = std::vector<double>(w.values().begin(), w.values().end());
  if (!labels.empty()) {
    auto jl = nlohmann::ordered_json::object();
    for (const auto& [name, v] : labels) jl[name] = v;
    doc["labels"] = std::move(jl);
  }
  return doc.dump() + "\n";
}

inline std::string write_graph(const GraphDocument& doc) { return write_graph(doc.graph, doc.potential, doc.labels); }

inline std::map<std::string, Vertex> label_map(const Caterpillar& cat) {
  std::map<std::string, Vertex> out;
  for (Vertex x = 0; x < cat.labels.size(); ++x) out.emplace(cat.labels[x].name(), x);
  return out;
}

}  // namespace gapline
