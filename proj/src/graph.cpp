#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "error.hpp"

namespace qgzeta {

MetricGraph MetricGraph::build(std::vector<std::string> vertices, std::vector<Edge> edges) {
  if (edges.empty()) throw Error(ErrorCode::EmptyGraph, "edge list is empty");

  std::set<std::string> known;
  for (const auto& v : vertices) {
    if (!known.insert(v).second)
      throw Error(ErrorCode::DanglingEndpoint, "duplicate vertex label '" + v + "'");
  }

  std::set<int> ids;
  for (const auto& e : edges) {
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw Error(ErrorCode::NonPositiveLength,
                  "edge " + std::to_string(e.id) + " has length " + std::to_string(e.length));
    if (!known.count(e.from) || !known.count(e.to))
      throw Error(ErrorCode::DanglingEndpoint,
                  "edge " + std::to_string(e.id) + " references an unknown vertex");
    if (!ids.insert(e.id).second)
      throw Error(ErrorCode::DuplicateEdgeId, "edge id " + std::to_string(e.id) + " repeated");
  }
  const int n = static_cast<int>(edges.size());
  if (*ids.begin() != 1 || *ids.rbegin() != n)
    throw Error(ErrorCode::DuplicateEdgeId, "edge ids must be exactly 1.." + std::to_string(n));

  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.id < y.id; });

  MetricGraph g;
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  g.lengths_.reserve(g.edges_.size());
  for (const auto& e : g.edges_) {
    g.lengths_.push_back(e.length);
    g.total_length_ += e.length;
  }
  return g;
}

const Edge& MetricGraph::edge(int id) const {
  if (id < 1 || id > edge_count())
    throw Error(ErrorCode::UnknownEdge, "no edge with id " + std::to_string(id));
  return edges_[id - 1];
}

double MetricGraph::min_length() const {
  return *std::min_element(lengths_.begin(), lengths_.end());
}

std::vector<int> MetricGraph::endpoints_at(const std::string& vertex) const {
  std::vector<int> out;
  const int n = edge_count();
  for (const auto& e : edges_) {
    if (e.from == vertex) out.push_back(endpoint_index(e.id, Side::Start, n));
    if (e.to == vertex) out.push_back(endpoint_index(e.id, Side::End, n));
  }
  return out;
}

namespace {

SelfAdjointReport check_pair(const CMatrix& a, const CMatrix& b) {
  SelfAdjointReport r;
  const Eigen::Index n = a.rows();
  CMatrix ab(n, 2 * n);
  ab << a, b;
  Eigen::JacobiSVD<CMatrix> svd(ab);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * smax) ++r.rank;
  r.rank_ok = smax > 0.0 && r.rank == n;

  const CMatrix defect = a * b.adjoint() - b * a.adjoint();
  r.max_defect = n ? defect.cwiseAbs().maxCoeff() : 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff());
  r.hermitian_ok = r.max_defect <= 1e-12 * scale * std::max<double>(1, n);
  return r;
}

}  // namespace

LocalPair local_condition(const VertexCondition& kind, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidCondition, "vertex degree must be at least 1");
  const CMatrix zero = CMatrix::Zero(d, d);
  const CMatrix id = CMatrix::Identity(d, d);

  auto continuity = [d] {
    LocalPair p{CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
    for (int i = 0; i + 1 < d; ++i) {
      p.a(i, i) = 1.0;
      p.a(i, i + 1) = -1.0;
    }
    p.b.row(d - 1).setOnes();
    return p;
  };

  return std::visit(
      [&](const auto& k) -> LocalPair {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Dirichlet>) {
          return {id, zero};
        } else if constexpr (std::is_same_v<K, Neumann>) {
          return {zero, id};
        } else if constexpr (std::is_same_v<K, Kirchhoff>) {
          return continuity();
        } else if constexpr (std::is_same_v<K, Delta>) {
          if (!std::isfinite(k.strength))
            throw Error(ErrorCode::InvalidCondition, "delta strength must be finite");
          LocalPair p = continuity();
          p.a(d - 1, 0) = -k.strength;
          return p;
        } else {
          if (k.a.rows() != d || k.a.cols() != d || k.b.rows() != d || k.b.cols() != d)
            throw Error(ErrorCode::LocalDimensionMismatch,
                        "custom condition must be " + std::to_string(d) + "x" + std::to_string(d));
          const auto r = check_pair(k.a, k.b);
          if (!r.ok())
            throw Error(ErrorCode::InvalidCondition,
                        "custom condition is not self-adjoint (rank " + std::to_string(r.rank) +
                            ", defect " + std::to_string(r.max_defect) + ")");
          return {k.a, k.b};
        }
      },
      kind);
}

GlobalMatching assemble_matching(const MetricGraph& graph, const VertexConditionMap& conditions) {
  const int n = 2 * graph.edge_count();
  GlobalMatching m{CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
  int row = 0;
  for (const auto& v : graph.vertices()) {
    const auto cols = graph.endpoints_at(v);
    if (cols.empty()) continue;
    auto it = conditions.find(v);
    if (it == conditions.end())
      throw Error(ErrorCode::MissingVertexSpec, "no condition for vertex '" + v + "'");
    const int d = static_cast<int>(cols.size());
    const LocalPair p = local_condition(it->second, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        m.a(row + i, cols[j]) = p.a(i, j);
        m.b(row + i, cols[j]) = p.b(i, j);
      }
    row += d;
  }
  return m;
}

SelfAdjointReport validate_self_adjoint(const GlobalMatching& m) {
  if (m.a.rows() != m.a.cols() || m.b.rows() != m.b.cols() || m.a.rows() != m.b.rows())
    throw Error(ErrorCode::LocalDimensionMismatch, "A and B must be square of equal size");
  return check_pair(m.a, m.b);
}

QuantumGraph QuantumGraph::make(MetricGraph graph, GlobalMatching matching) {
  const int n = 2 * graph.edge_count();
  if (matching.a.rows() != n || matching.a.cols() != n || matching.b.rows() != n ||
      matching.b.cols() != n)
    throw Error(ErrorCode::LocalDimensionMismatch,
                "matching must be " + std::to_string(n) + "x" + std::to_string(n));
  const auto r = validate_self_adjoint(matching);
  if (!r.ok())
    throw Error(ErrorCode::NotSelfAdjoint,
                std::string("rank_ok=") + (r.rank_ok ? "true" : "false") +
                    " hermitian_ok=" + (r.hermitian_ok ? "true" : "false"));
  return QuantumGraph{std::move(graph), std::move(matching)};
}

QuantumGraph QuantumGraph::make(MetricGraph graph, const VertexConditionMap& conditions) {
  auto m = assemble_matching(graph, conditions);
  return make(std::move(graph), std::move(m));
}

}  // namespace qgzeta
