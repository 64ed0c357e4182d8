#include "graph_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace qgzeta {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Offset just past the value-introducing ':' of the top-level key, or npos.
std::size_t find_key(const std::string& text, const std::string& key, std::size_t from = 0) {
  const std::string quoted = "\"" + key + "\"";
  for (std::size_t pos = text.find(quoted, from); pos != std::string::npos; pos = text.find(quoted, pos + 1)) {
    std::size_t p = pos + quoted.size();
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    if (p < text.size() && text[p] == ':') return p + 1;
  }
  return std::string::npos;
}

// Line of the index-th element of the array that follows `start`.
int element_line(const std::string& text, std::size_t start, std::size_t index) {
  if (start == std::string::npos) return 0;
  std::size_t p = text.find('[', start);
  if (p == std::string::npos) return line_of_offset(text, start);
  int depth = 0;
  std::size_t count = 0;
  bool in_string = false;
  bool expect_element = false;
  for (; p < text.size(); ++p) {
    const char ch = text[p];
    if (in_string) {
      if (ch == '\\') ++p;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (expect_element && !std::isspace(static_cast<unsigned char>(ch))) {
      if (count == index) return line_of_offset(text, p);
      ++count;
      expect_element = false;
    }
    if (ch == '"') {
      in_string = true;
    } else if (ch == '[' || ch == '{') {
      if (++depth == 1) expect_element = true;
    } else if (ch == ']' || ch == '}') {
      if (--depth == 0) break;
    } else if (ch == ',' && depth == 1) {
      expect_element = true;
    }
  }
  return line_of_offset(text, start);
}

[[noreturn]] void fail(ErrorCode code, int line, const std::string& what) {
  throw Error(code, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + what);
}

CMatrix parse_matrix(const json& j, const std::string& name, int line) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, line, "matching." + name + " must be a non-empty list of rows");
  const auto rows = j.size();
  const auto cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      fail(ErrorCode::LocalDimensionMismatch, line, "matching." + name + " row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& z = j[r][c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        fail(ErrorCode::ParseError, line, "matching." + name + " entries must be [re, im] pairs");
      m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

MetricGraph GraphDocument::metric_graph() const { return MetricGraph::build(vertices, edges); }

GlobalMatching GraphDocument::effective_matching() const {
  if (matching) return *matching;
  return assemble_matching(metric_graph(), conditions);
}

QuantumGraph GraphDocument::quantum_graph() const {
  return QuantumGraph::make(metric_graph(), effective_matching());
}

GraphDocument parse_graph_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  if (!root.is_object()) fail(ErrorCode::ParseError, 1, "top level must be an object");

  const std::size_t edges_at = find_key(text, "edges");
  const int edges_line = edges_at == std::string::npos ? 0 : line_of_offset(text, edges_at);
  if (!root.contains("edges")) fail(ErrorCode::EmptyGraph, 1, "missing \"edges\"");
  const json& edges = root["edges"];
  if (!edges.is_array()) fail(ErrorCode::ParseError, edges_line, "\"edges\" must be a list");
  if (edges.empty()) fail(ErrorCode::EmptyGraph, edges_line, "edge list is empty");

  GraphDocument doc;
  std::set<int> ids;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    const int line = element_line(text, edges_at, i);
    if (!e.is_object()) fail(ErrorCode::ParseError, line, "edge entries must be objects");
    for (const char* key : {"id", "from", "to", "length"})
      if (!e.contains(key)) fail(ErrorCode::ParseError, line, std::string("edge is missing \"") + key + "\"");
    if (!e["id"].is_number_integer()) fail(ErrorCode::ParseError, line, "edge id must be an integer");
    if (!e["from"].is_string() || !e["to"].is_string())
      fail(ErrorCode::DanglingEndpoint, line, "edge endpoints must be vertex labels");
    if (!e["length"].is_number()) fail(ErrorCode::ParseError, line, "edge length must be a number");
    Edge edge{e["id"].get<int>(), e["from"].get<std::string>(), e["to"].get<std::string>(), e["length"].get<double>()};
    if (!(edge.length > 0.0) || !std::isfinite(edge.length))
      fail(ErrorCode::NonPositiveLength, line, "edge " + std::to_string(edge.id) + " has non-positive length");
    if (edge.from.empty() || edge.to.empty()) fail(ErrorCode::DanglingEndpoint, line, "empty vertex label");
    if (!ids.insert(edge.id).second)
      fail(ErrorCode::DuplicateEdgeId, line, "edge id " + std::to_string(edge.id) + " repeated");
    if (edge.id < 1 || edge.id > static_cast<int>(edges.size()))
      fail(ErrorCode::DuplicateEdgeId, line, "edge ids must be exactly 1.." + std::to_string(edges.size()));
    for (const auto& v : {edge.from, edge.to})
      if (std::find(doc.vertices.begin(), doc.vertices.end(), v) == doc.vertices.end()) doc.vertices.push_back(v);
    doc.edges.push_back(std::move(edge));
  }

  if (root.contains("matching")) {
    const int line = line_of_offset(text, find_key(text, "matching"));
    const json& m = root["matching"];
    if (!m.is_object() || !m.contains("A") || !m.contains("B"))
      fail(ErrorCode::ParseError, line, "\"matching\" needs \"A\" and \"B\"");
    GlobalMatching gm{parse_matrix(m["A"], "A", line), parse_matrix(m["B"], "B", line)};
    const Eigen::Index n = 2 * static_cast<Eigen::Index>(doc.edges.size());
    if (gm.a.rows() != n || gm.a.cols() != n || gm.b.rows() != n || gm.b.cols() != n)
      fail(ErrorCode::LocalDimensionMismatch, line, "matching matrices must be " + std::to_string(n) + "x" + std::to_string(n));
    doc.matching = std::move(gm);
  }

  const std::size_t vc_at = find_key(text, "vertex_conditions");
  const int vc_line = vc_at == std::string::npos ? 0 : line_of_offset(text, vc_at);
  if (root.contains("vertex_conditions")) {
    const json& vc = root["vertex_conditions"];
    if (!vc.is_object()) fail(ErrorCode::ParseError, vc_line, "\"vertex_conditions\" must be an object");
    for (const auto& [label, spec] : vc.items()) {
      const std::size_t at = find_key(text, label, vc_at);
      const int line = at == std::string::npos ? vc_line : line_of_offset(text, at);
      if (std::find(doc.vertices.begin(), doc.vertices.end(), label) == doc.vertices.end())
        fail(ErrorCode::DanglingEndpoint, line, "condition for unknown vertex '" + label + "'");
      if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
        fail(ErrorCode::InvalidCondition, line, "vertex '" + label + "' needs a \"type\"");
      const std::string type = spec["type"].get<std::string>();
      if (type == "dirichlet") {
        doc.conditions[label] = Dirichlet{};
      } else if (type == "neumann") {
        doc.conditions[label] = Neumann{};
      } else if (type == "kirchhoff") {
        doc.conditions[label] = Kirchhoff{};
      } else if (type == "delta") {
        if (!spec.contains("strength") || !spec["strength"].is_number())
          fail(ErrorCode::InvalidCondition, line, "delta vertex '" + label + "' needs a numeric \"strength\"");
        const double strength = spec["strength"].get<double>();
        if (!std::isfinite(strength)) fail(ErrorCode::InvalidCondition, line, "delta strength must be finite");
        doc.conditions[label] = Delta{strength};
      } else {
        fail(ErrorCode::InvalidCondition, line, "unknown condition type '" + type + "'");
      }
    }
  }
  if (!doc.matching) {
    for (const auto& v : doc.vertices)
      if (!doc.conditions.count(v))
        fail(ErrorCode::MissingVertexSpec, vc_line > 0 ? vc_line : edges_line, "no condition for vertex '" + v + "'");
  }
  return doc;
}

GraphDocument read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph_document(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(std::string(error_name(e.code())).size() + 2));
  }
}

std::string serialize_graph_document(const GraphDocument& doc) {
  json root = json::object();
  json edges = json::array();
  for (const auto& e : doc.edges) {
    json j = json::object();
    j["id"] = e.id;
    j["from"] = e.from;
    j["to"] = e.to;
    j["length"] = e.length;
    edges.push_back(std::move(j));
  }
  root["edges"] = std::move(edges);
  json vc = json::object();
  for (const auto& [label, cond] : doc.conditions) {
    json j = json::object();
    if (std::holds_alternative<Dirichlet>(cond)) j["type"] = "dirichlet";
    else if (std::holds_alternative<Neumann>(cond)) j["type"] = "neumann";
    else if (std::holds_alternative<Kirchhoff>(cond)) j["type"] = "kirchhoff";
    else if (const auto* d = std::get_if<Delta>(&cond)) {
      j["type"] = "delta";
      j["strength"] = d->strength;
    } else {
      throw Error(ErrorCode::InvalidCondition, "custom vertex conditions are written as a matching block");
    }
    vc[label] = std::move(j);
  }
  root["vertex_conditions"] = std::move(vc);
  if (doc.matching) root["matching"] = json{{"A", matrix_json(doc.matching->a)}, {"B", matrix_json(doc.matching->b)}};
  return root.dump(2) + "\n";
}

}  // namespace qgzeta
