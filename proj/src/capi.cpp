#include "qgzeta/qgzeta.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "asymptotics.hpp"
#include "error.hpp"
#include "graph_file.hpp"
#include "oracle.hpp"
#include "zeta_engine.hpp"

struct qg_graph {
  qgzeta::GraphDocument doc;
  qgzeta::MetricGraph graph;
  qgzeta::GlobalMatching matching;
};

struct qg_spectrum {
  qgzeta::SpectralData data;
};

struct qg_histogram {
  qgzeta::SpacingStatistics stats;
};

namespace {

using namespace qgzeta;

thread_local std::string last_error;

qg_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveLength: return QG_NON_POSITIVE_LENGTH;
    case ErrorCode::DanglingEndpoint: return QG_DANGLING_ENDPOINT;
    case ErrorCode::DuplicateEdgeId: return QG_DUPLICATE_EDGE_ID;
    case ErrorCode::EmptyGraph: return QG_EMPTY_GRAPH;
    case ErrorCode::MissingVertexSpec: return QG_MISSING_VERTEX_SPEC;
    case ErrorCode::LocalDimensionMismatch: return QG_LOCAL_DIMENSION_MISMATCH;
    case ErrorCode::InvalidCondition: return QG_INVALID_CONDITION;
    case ErrorCode::NotSelfAdjoint: return QG_NOT_SELF_ADJOINT;
    case ErrorCode::UnknownEdge: return QG_UNKNOWN_EDGE;
    case ErrorCode::DomainError: return QG_DOMAIN_ERROR;
    case ErrorCode::ParseError: return QG_PARSE_ERROR;
    case ErrorCode::PoleHit: return QG_POLE_HIT;
    case ErrorCode::SingularG: return QG_SINGULAR_G;
    case ErrorCode::IllConditionedInterpolation: return QG_ILL_CONDITIONED_INTERPOLATION;
    case ErrorCode::ZeroLeadingCoefficient: return QG_ZERO_LEADING_COEFFICIENT;
    case ErrorCode::VanishingOrderMismatch: return QG_VANISHING_ORDER_MISMATCH;
    case ErrorCode::VanishingPhi0: return QG_VANISHING_PHI0;
    case ErrorCode::InsufficientSubtractions: return QG_INSUFFICIENT_SUBTRACTIONS;
    case ErrorCode::QuadratureFailure: return QG_QUADRATURE_FAILURE;
    case ErrorCode::NegativeSpectrum: return QG_NEGATIVE_SPECTRUM;
    case ErrorCode::CompletenessFailure: return QG_COMPLETENESS_FAILURE;
    case ErrorCode::DivergentParameter: return QG_DIVERGENT_PARAMETER;
    case ErrorCode::TruncationTooLarge: return QG_TRUNCATION_TOO_LARGE;
    case ErrorCode::FitResidualTooLarge: return QG_FIT_RESIDUAL_TOO_LARGE;
    case ErrorCode::OrderExceedsProfile: return QG_ORDER_EXCEEDS_PROFILE;
  }
  return QG_INTERNAL_ERROR;
}

template <class F>
qg_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return QG_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = std::string("InternalError: ") + e.what();
    return QG_INTERNAL_ERROR;
  }
}

qg_status null_argument() {
  last_error = "NullArgument: required pointer argument is null";
  return QG_NULL_ARGUMENT;
}

EngineOptions engine_options(const qg_options* options) {
  const qg_options o = options ? *options : qg_options_default();
  EngineOptions e;
  e.t0 = o.t0;
  e.n_sub = o.n_sub;
  e.n_max = std::max(o.n_max, o.n_sub);
  return e;
}

QuantumGraph quantum(const qg_graph* g) { return QuantumGraph::make(g->graph, g->matching); }

qg_graph* make_graph(GraphDocument doc) {
  auto graph = doc.metric_graph();
  auto matching = doc.effective_matching();
  return new qg_graph{std::move(doc), std::move(graph), std::move(matching)};
}

}  // namespace

extern "C" {

const char* qg_status_name(qg_status status) {
  switch (status) {
    case QG_OK: return "Ok";
    case QG_NULL_ARGUMENT: return "NullArgument";
    case QG_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(ErrorCode::OrderExceedsProfile); ++c)
    if (to_status(static_cast<ErrorCode>(c)) == status) return error_name(static_cast<ErrorCode>(c));
  return "UnknownStatus";
}

int qg_status_is_input_error(qg_status status) { return status > QG_OK && status < QG_POLE_HIT; }

const char* qg_last_error(void) { return last_error.c_str(); }

qg_status qg_graph_load_file(const char* path, qg_graph** out) {
  if (!path || !out) return null_argument();
  *out = nullptr;
  return guard([&] { *out = make_graph(read_graph_file(path)); });
}

qg_status qg_graph_load_json(const char* text, qg_graph** out) {
  if (!text || !out) return null_argument();
  *out = nullptr;
  return guard([&] { *out = make_graph(parse_graph_document(text)); });
}

void qg_graph_free(qg_graph* graph) { delete graph; }

qg_status qg_graph_to_json(const qg_graph* graph, char** out) {
  if (!graph || !out) return null_argument();
  *out = nullptr;
  return guard([&] {
    const std::string text = serialize_graph_document(graph->doc);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void qg_string_free(char* text) { std::free(text); }

qg_status qg_graph_validate(const qg_graph* graph, qg_graph_info* out) {
  if (!graph || !out) return null_argument();
  return guard([&] {
    const auto report = validate_self_adjoint(graph->matching);
    out->edge_count = graph->graph.edge_count();
    out->size = graph->matching.size();
    out->total_length = graph->graph.total_length();
    out->rank = report.rank;
    out->rank_ok = report.rank_ok;
    out->hermitian_ok = report.hermitian_ok;
    out->max_defect = report.max_defect;
    out->zero_modes = report.ok() ? zero_modes(graph->matching, graph->graph.lengths()) : -1;
  });
}

qg_options qg_options_default(void) {
  const EngineOptions e;
  return qg_options{e.t0, e.n_sub, e.n_max};
}

qg_status qg_eigenvalues(const qg_graph* graph, double k_max, qg_spectrum** out) {
  if (!graph || !out) return null_argument();
  *out = nullptr;
  return guard([&] { *out = new qg_spectrum{eigenvalues(quantum(graph), k_max)}; });
}

void qg_spectrum_free(qg_spectrum* spectrum) { delete spectrum; }

qg_status qg_spectrum_get_info(const qg_spectrum* spectrum, qg_spectrum_info* out) {
  if (!spectrum || !out) return null_argument();
  const auto& d = spectrum->data;
  out->count = d.roots.size();
  out->levels = d.level_count();
  out->k_max = d.k_max;
  out->complete = d.complete;
  out->zero_modes = d.zero_modes;
  out->max_weyl_deviation = d.max_weyl_deviation;
  out->weyl_bound = d.edge_count + d.zero_modes + 2;
  out->refinements = d.refinements;
  return QG_OK;
}

qg_status qg_spectrum_roots(const qg_spectrum* spectrum, const double** roots, const int** multiplicities) {
  if (!spectrum || !roots || !multiplicities) return null_argument();
  *roots = spectrum->data.roots.data();
  *multiplicities = spectrum->data.multiplicities.data();
  return QG_OK;
}

qg_status qg_direct_heat_trace(const qg_spectrum* spectrum, double t, double* out) {
  if (!spectrum || !out) return null_argument();
  return guard([&] { *out = direct_heat_trace(spectrum->data, t); });
}

qg_status qg_direct_zeta(const qg_spectrum* spectrum, double s, double* value, double* error_estimate) {
  if (!spectrum || !value) return null_argument();
  return guard([&] {
    const auto r = direct_zeta(spectrum->data, s);
    *value = r.value;
    if (error_estimate) *error_estimate = r.error_estimate;
  });
}

qg_status qg_zeta(const qg_graph* graph, double s, const qg_options* options, qg_zeta_result* out) {
  if (!graph || !out) return null_argument();
  return guard([&] {
    const auto r = ZetaEngine(quantum(graph), engine_options(options)).zeta(s);
    *out = qg_zeta_result{r.s, r.finite_part, r.residue, r.method == ZetaMethod::Continued, r.t0, r.n_sub,
                          r.quadrature_error};
  });
}

qg_status qg_determinant(const qg_graph* graph, const qg_options* options, qg_determinant_result* out) {
  if (!graph || !out) return null_argument();
  return guard([&] {
    const ZetaEngine engine(quantum(graph), engine_options(options));
    const auto d = engine.spectral_determinant();
    const double z0 = engine.zeta_continued(0.0).finite_part;
    *out = qg_determinant_result{d.value, d.log_value, d.sign, d.zeta_prime_zero, d.zeta_prime_zero_continued, z0};
  });
}

qg_status qg_vacuum(const qg_graph* graph, const qg_options* options, qg_vacuum_result* out) {
  if (!graph || !out) return null_argument();
  return guard([&] {
    const ZetaEngine engine(quantum(graph), engine_options(options));
    const auto v = engine.vacuum_energy();
    const auto z = engine.zeta_continued(-0.5, std::max(engine.options().n_sub, 2));
    *out = qg_vacuum_result{v.energy, v.energy_residue, v.zeta_residue, z.t0, z.n_sub, 0.5 * z.quadrature_error};
  });
}

qg_status qg_force(const qg_graph* graph, int edge_id, const qg_options* options, qg_force_result* out) {
  if (!graph || !out) return null_argument();
  return guard([&] {
    const auto f = ZetaEngine(quantum(graph), engine_options(options)).casimir_force(edge_id);
    *out = qg_force_result{f.edge, f.dE_dL, f.force, f.closed_part, f.integral_part};
  });
}

qg_status qg_heat(const qg_graph* graph, int order, const qg_options* options, qg_heat_result* out) {
  if (!graph || !out) return null_argument();
  return guard([&] {
    if (order < 0 || order > QG_MAX_HEAT_ORDER)
      throw Error(ErrorCode::DomainError, "heat order must lie in 0.." + std::to_string(QG_MAX_HEAT_ORDER));
    auto opts = engine_options(options);
    opts.n_max = std::max(opts.n_max, order);
    const auto h = ZetaEngine(quantum(graph), opts).heat_coefficients(order);
    *out = qg_heat_result{};
    out->leading = h.leading;
    out->constant = h.constant;
    out->order = static_cast<int>(h.terms.size());
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
      out->power[i] = h.terms[i].power;
      out->coefficient[i] = h.terms[i].coefficient;
    }
    out->next_power = h.next_term.power;
    out->next_coefficient = h.next_term.coefficient;
  });
}

double qg_heat_evaluate(const qg_heat_result* heat, double t) {
  if (!heat) return 0.0;
  HeatExpansion h;
  h.leading = heat->leading;
  h.constant = heat->constant;
  for (int i = 0; i < heat->order; ++i) h.terms.push_back({heat->power[i], heat->coefficient[i]});
  return h.evaluate(t);
}

qg_status qg_spacings(const qg_spectrum* spectrum, int levels, double bin_width, qg_histogram** out) {
  if (!spectrum || !out) return null_argument();
  *out = nullptr;
  return guard([&] {
    if (levels < 1) throw Error(ErrorCode::DomainError, "levels must be positive");
    if (!(bin_width > 0.0)) throw Error(ErrorCode::DomainError, "bin width must be positive");
    *out = new qg_histogram{spacing_statistics(spectrum->data, levels, bin_width)};
  });
}

void qg_histogram_free(qg_histogram* histogram) { delete histogram; }

qg_status qg_histogram_get(const qg_histogram* histogram, qg_histogram_view* out) {
  if (!histogram || !out) return null_argument();
  const auto& s = histogram->stats;
  *out = qg_histogram_view{s.density.size(), s.bin_edges.data(), s.density.data(), s.wigner.data(),
                           s.spacings.size(), s.ks_distance};
  return QG_OK;
}

}  // extern "C"
