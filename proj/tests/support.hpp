#pragma once

// Graph builders shared by the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "graph.hpp"

namespace qgzeta::testing {

inline QuantumGraph interval(double length, VertexCondition left, VertexCondition right) {
  auto g = MetricGraph::build({"a", "b"}, {{1, "a", "b", length}});
  return QuantumGraph::make(std::move(g), VertexConditionMap{{"a", left}, {"b", right}});
}

/// Star with centre "c" and tips "t1".."tn"; edges run from the centre outwards.
inline QuantumGraph star(const std::vector<double>& lengths, VertexCondition centre,
                         VertexCondition tips = Neumann{}) {
  std::vector<std::string> vertices{"c"};
  std::vector<Edge> edges;
  VertexConditionMap conditions{{"c", centre}};
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const std::string tip = "t" + std::to_string(i + 1);
    vertices.push_back(tip);
    edges.push_back({static_cast<int>(i + 1), "c", tip, lengths[i]});
    conditions[tip] = tips;
  }
  return QuantumGraph::make(MetricGraph::build(vertices, edges), conditions);
}

inline std::vector<double> star_lengths() {
  return {1.0, std::sqrt(2.0), std::numbers::pi / std::numbers::e};
}

inline QuantumGraph kirchhoff_star() { return star(star_lengths(), Kirchhoff{}); }
inline QuantumGraph delta_star(double strength = 1.0) { return star(star_lengths(), Delta{strength}); }

/// Complete graph K_n with Kirchhoff conditions and random lengths in [0.5, 2].
inline QuantumGraph complete_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(0.5, 2.0);
  std::vector<std::string> vertices;
  VertexConditionMap conditions;
  for (int i = 0; i < n; ++i) {
    vertices.push_back("v" + std::to_string(i));
    conditions[vertices.back()] = Kirchhoff{};
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      edges.push_back({static_cast<int>(edges.size()) + 1, vertices[i], vertices[j], len(rng)});
  return QuantumGraph::make(MetricGraph::build(vertices, edges), conditions);
}

/// Connected random graph with `edge_count` edges (loops and parallel edges
/// allowed), lengths in [0.5, 2] and a mix of vertex conditions with
/// non-negative delta strengths.
inline QuantumGraph random_graph(int edge_count, std::uint64_t seed, bool allow_delta = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(0.5, 2.0);
  std::uniform_int_distribution<int> vcount(2, std::max(2, std::min(edge_count + 1, 6)));
  const int nv = vcount(rng);
  std::vector<std::string> vertices;
  for (int i = 0; i < nv; ++i) vertices.push_back("v" + std::to_string(i));

  std::vector<Edge> edges;
  for (int i = 1; i < nv && static_cast<int>(edges.size()) < edge_count; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    edges.push_back({static_cast<int>(edges.size()) + 1, vertices[parent(rng)], vertices[i], len(rng)});
  }
  std::uniform_int_distribution<int> pick(0, nv - 1);
  while (static_cast<int>(edges.size()) < edge_count)
    edges.push_back({static_cast<int>(edges.size()) + 1, vertices[pick(rng)], vertices[pick(rng)], len(rng)});

  // A tree may use fewer vertices than drawn when edge_count < nv - 1.
  std::vector<std::string> used;
  for (const auto& v : vertices)
    for (const auto& e : edges)
      if (e.from == v || e.to == v) {
        used.push_back(v);
        break;
      }

  std::uniform_int_distribution<int> kind(0, allow_delta ? 5 : 4);
  std::uniform_real_distribution<double> strength(0.2, 2.0);
  VertexConditionMap conditions;
  for (const auto& v : used) {
    switch (kind(rng)) {
      case 0: conditions[v] = Dirichlet{}; break;
      case 1: conditions[v] = Neumann{}; break;
      case 5: conditions[v] = Delta{strength(rng)}; break;
      default: conditions[v] = Kirchhoff{}; break;
    }
  }
  return QuantumGraph::make(MetricGraph::build(used, edges), conditions);
}

/// Same graph with every length multiplied by sigma.
inline QuantumGraph scaled(const QuantumGraph& qg, double sigma) {
  auto edges = qg.graph.edges();
  for (auto& e : edges) e.length *= sigma;
  return QuantumGraph::make(MetricGraph::build(qg.graph.vertices(), edges), qg.matching);
}

/// Same graph with lengths replaced.
inline QuantumGraph with_lengths(const QuantumGraph& qg, const std::vector<double>& lengths) {
  auto edges = qg.graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].length = lengths[i];
  return QuantumGraph::make(MetricGraph::build(qg.graph.vertices(), edges), qg.matching);
}

}  // namespace qgzeta::testing
