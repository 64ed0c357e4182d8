#pragma once

// Metric graphs and self-adjoint vertex matching conditions.
//
// Boundary data live in "endpoint coordinates": for E edges the vector
// phi = (psi_e(0))_e ++ (psi_e(L_e))_e has 2E entries, and the matching
// inward derivatives are phi' = (psi_e'(0))_e ++ (-psi_e'(L_e))_e. A global
// condition is a pair (A, B) of 2E x 2E complex matrices with A phi + B phi' = 0.

#include <complex>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qgzeta {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

struct Edge {
  int id = 0;  // 1-based, dense
  std::string from;
  std::string to;
  double length = 0.0;
};

enum class Side { Start, End };

/// Coordinate of an edge endpoint: (e, start) -> e - 1, (e, end) -> E + e - 1.
inline int endpoint_index(int edge_id, Side side, int edge_count) {
  return side == Side::Start ? edge_id - 1 : edge_count + edge_id - 1;
}

class MetricGraph {
 public:
  /// Validates and normalizes an edge list. Edges are reordered by id; ids
  /// must be exactly 1..E.
  static MetricGraph build(std::vector<std::string> vertices, std::vector<Edge> edges);

  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const;
  std::span<const double> lengths() const { return lengths_; }
  double total_length() const { return total_length_; }
  double min_length() const;

  /// Endpoint coordinates incident to v, ordered by edge id with the start
  /// endpoint of a loop before its end endpoint.
  std::vector<int> endpoints_at(const std::string& vertex) const;
  int degree(const std::string& vertex) const {
    return static_cast<int>(endpoints_at(vertex).size());
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<double> lengths_;
  double total_length_ = 0.0;
};

struct Dirichlet {};
struct Neumann {};
/// Continuity plus vanishing sum of inward derivatives.
struct Kirchhoff {};
/// Continuity plus sum of inward derivatives = strength * common value.
struct Delta {
  double strength = 0.0;
};
struct Custom {
  CMatrix a;
  CMatrix b;
};

using VertexCondition = std::variant<Dirichlet, Neumann, Kirchhoff, Delta, Custom>;
using VertexConditionMap = std::map<std::string, VertexCondition>;

struct LocalPair {
  CMatrix a;
  CMatrix b;
};

/// d x d local pair for a vertex of degree d. Custom pairs are checked for
/// rank and Hermiticity and rejected with InvalidCondition.
LocalPair local_condition(const VertexCondition& kind, int degree);

struct GlobalMatching {
  CMatrix a;
  CMatrix b;

  int size() const { return static_cast<int>(a.rows()); }
};

/// Block assembly of per-vertex conditions into the global pair. Rows are
/// grouped per vertex in the graph's vertex order.
GlobalMatching assemble_matching(const MetricGraph& graph, const VertexConditionMap& conditions);

struct SelfAdjointReport {
  bool rank_ok = false;
  bool hermitian_ok = false;
  int rank = 0;
  double max_defect = 0.0;

  bool ok() const { return rank_ok && hermitian_ok; }
};

/// rank[A B] == 2E (relative singular value threshold 1e-10) and
/// A B^* == B A^* entrywise.
SelfAdjointReport validate_self_adjoint(const GlobalMatching& m);

/// A metric graph together with a validated matching of matching size.
struct QuantumGraph {
  MetricGraph graph;
  GlobalMatching matching;

  /// Throws LocalDimensionMismatch on size mismatch and NotSelfAdjoint when
  /// validation fails.
  static QuantumGraph make(MetricGraph graph, GlobalMatching matching);
  static QuantumGraph make(MetricGraph graph, const VertexConditionMap& conditions);

  int edge_count() const { return graph.edge_count(); }
  std::span<const double> lengths() const { return graph.lengths(); }
};

}  // namespace qgzeta
