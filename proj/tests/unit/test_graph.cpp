#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support.hpp"
#include "error.hpp"
#include "graph.hpp"

using namespace qgzeta;
using namespace qgzeta::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("build validates the edge list") {
  CHECK(code_of([] { MetricGraph::build({"a"}, {}); }) == ErrorCode::EmptyGraph);
  CHECK(code_of([] { MetricGraph::build({"a", "b"}, {{1, "a", "b", -1.0}}); }) == ErrorCode::NonPositiveLength);
  CHECK(code_of([] { MetricGraph::build({"a", "b"}, {{1, "a", "b", 0.0}}); }) == ErrorCode::NonPositiveLength);
  CHECK(code_of([] { MetricGraph::build({"a", "b"}, {{1, "a", "c", 1.0}}); }) == ErrorCode::DanglingEndpoint);
  CHECK(code_of([] { MetricGraph::build({"a", "b"}, {{1, "a", "b", 1.0}, {1, "b", "a", 1.0}}); }) ==
        ErrorCode::DuplicateEdgeId);
  CHECK(code_of([] { MetricGraph::build({"a", "b"}, {{1, "a", "b", 1.0}, {3, "b", "a", 1.0}}); }) ==
        ErrorCode::DuplicateEdgeId);
}

TEST_CASE("edges are sorted by id and lengths accumulate") {
  auto g = MetricGraph::build({"a", "b"}, {{2, "b", "a", 2.0}, {1, "a", "b", 0.5}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges()[0].id == 1);
  CHECK(g.lengths()[1] == 2.0);
  CHECK(g.total_length() == doctest::Approx(2.5));
  CHECK(g.min_length() == 0.5);
  CHECK(g.edge(2).from == "b");
  CHECK(code_of([&] { g.edge(3); }) == ErrorCode::UnknownEdge);
}

TEST_CASE("endpoint coordinates at a vertex") {
  // loop on v plus an edge v -> w
  auto g = MetricGraph::build({"v", "w"}, {{1, "v", "v", 1.0}, {2, "v", "w", 1.0}});
  const auto at_v = g.endpoints_at("v");
  REQUIRE(at_v.size() == 3);
  CHECK(at_v[0] == endpoint_index(1, Side::Start, 2));
  CHECK(at_v[1] == endpoint_index(1, Side::End, 2));
  CHECK(at_v[2] == endpoint_index(2, Side::Start, 2));
  CHECK(g.degree("w") == 1);
  CHECK(endpoint_index(2, Side::End, 2) == 3);
}

TEST_CASE("local conditions") {
  const auto k = local_condition(Kirchhoff{}, 3);
  CHECK(k.a.rows() == 3);
  CHECK(k.a(0, 0) == cplx(1.0));
  CHECK(k.a(0, 1) == cplx(-1.0));
  CHECK(k.b.row(2).sum() == cplx(3.0));
  CHECK(k.b.topRows(2).norm() == 0.0);

  const auto d = local_condition(Delta{0.7}, 3);
  CHECK((d.a - k.a).norm() == doctest::Approx(0.7));
  CHECK(d.a(2, 0) == cplx(-0.7));

  const auto dir = local_condition(Dirichlet{}, 2);
  CHECK(dir.a.isIdentity());
  CHECK(dir.b.norm() == 0.0);
  const auto neu = local_condition(Neumann{}, 2);
  CHECK(neu.b.isIdentity());

  // degree one Kirchhoff is Neumann
  const auto k1 = local_condition(Kirchhoff{}, 1);
  CHECK(k1.a.norm() == 0.0);
  CHECK(k1.b(0, 0) == cplx(1.0));

  CMatrix bad = CMatrix::Zero(2, 2);
  CHECK(code_of([&] { local_condition(Custom{bad, bad}, 2); }) == ErrorCode::InvalidCondition);
  CHECK(code_of([&] { local_condition(Custom{CMatrix::Identity(3, 3), CMatrix::Zero(3, 3)}, 2); }) ==
        ErrorCode::LocalDimensionMismatch);
}

TEST_CASE("assembled matchings are self-adjoint") {
  for (int i = 0; i < 20; ++i) {
    const auto qg = random_graph(1 + i % 8, 10 + i);
    const auto r = validate_self_adjoint(qg.matching);
    CHECK(r.ok());
    CHECK(r.rank == 2 * qg.edge_count());
    CHECK(r.max_defect < 1e-12);
  }
  const auto qg = interval(1.0, Dirichlet{}, Dirichlet{});
  CHECK(qg.matching.a.isIdentity());
}

TEST_CASE("self-adjointness failures") {
  auto g = MetricGraph::build({"a", "b"}, {{1, "a", "b", 1.0}});
  GlobalMatching rank_defect{CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
  rank_defect.a(0, 0) = 1.0;
  const auto r = validate_self_adjoint(rank_defect);
  CHECK_FALSE(r.rank_ok);
  CHECK(r.rank == 1);
  CHECK(code_of([&] { QuantumGraph::make(g, rank_defect); }) == ErrorCode::NotSelfAdjoint);

  GlobalMatching skew{CMatrix::Identity(2, 2), cplx(0.0, 1.0) * CMatrix::Identity(2, 2)};
  const auto s = validate_self_adjoint(skew);
  CHECK(s.rank_ok);
  CHECK_FALSE(s.hermitian_ok);
  CHECK(s.max_defect == doctest::Approx(2.0));

  GlobalMatching wrong{CMatrix::Identity(4, 4), CMatrix::Zero(4, 4)};
  CHECK(code_of([&] { QuantumGraph::make(g, wrong); }) == ErrorCode::LocalDimensionMismatch);

  CHECK(code_of([&] { QuantumGraph::make(g, VertexConditionMap{{"a", Kirchhoff{}}}); }) ==
        ErrorCode::MissingVertexSpec);
}

TEST_CASE("magnetic flux on a cycle is a valid custom condition") {
  // psi(0) = e^{i theta} psi(L), psi'(0) = e^{i theta} psi'(L)
  const cplx w = std::polar(1.0, 0.3);
  CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = -w;
  b(1, 0) = 1.0;
  b(1, 1) = w;
  auto g = MetricGraph::build({"v"}, {{1, "v", "v", 1.0}});
  const auto qg = QuantumGraph::make(g, VertexConditionMap{{"v", Custom{a, b}}});
  CHECK(validate_self_adjoint(qg.matching).ok());
}
