#pragma once

// JSON graph documents:
//
//   {"edges": [{"id": 1, "from": "a", "to": "b", "length": 1.0}, ...],
//    "vertex_conditions": {"a": {"type": "dirichlet"}, "b": {"type": "delta", "strength": 0.5}},
//    "matching": {"A": [[[re, im], ...], ...], "B": ...}}
//
// A "matching" block overrides the vertex conditions. Errors carry the line of
// the offending element.

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace qgzeta {

struct GraphDocument {
  std::vector<std::string> vertices;  // first appearance in the edge list
  std::vector<Edge> edges;            // file order
  VertexConditionMap conditions;      // Dirichlet, Neumann, Kirchhoff or Delta
  std::optional<GlobalMatching> matching;

  MetricGraph metric_graph() const;
  /// The matching actually in force (explicit or assembled).
  GlobalMatching effective_matching() const;
  /// Throws NotSelfAdjoint when the matching fails validation.
  QuantumGraph quantum_graph() const;
};

GraphDocument parse_graph_document(const std::string& text);
GraphDocument read_graph_file(const std::string& path);

/// Pretty-printed JSON; numbers are written round-trip exact.
std::string serialize_graph_document(const GraphDocument& doc);

}  // namespace qgzeta
