#ifndef QGZETA_QGZETA_H
#define QGZETA_QGZETA_H

/* C interface to the quantum graph zeta library.
 *
 * Handles are opaque and owned by the caller (free with the matching
 * *_free function). Every call returns a qg_status; on failure
 * qg_last_error() holds a message for the calling thread. */

#include <stddef.h>

#if defined(_WIN32)
#define QG_API __declspec(dllexport)
#elif defined(__GNUC__)
#define QG_API __attribute__((visibility("default")))
#else
#define QG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qg_status {
  QG_OK = 0,
  /* input and validation */
  QG_NON_POSITIVE_LENGTH = 1,
  QG_DANGLING_ENDPOINT = 2,
  QG_DUPLICATE_EDGE_ID = 3,
  QG_EMPTY_GRAPH = 4,
  QG_MISSING_VERTEX_SPEC = 5,
  QG_LOCAL_DIMENSION_MISMATCH = 6,
  QG_INVALID_CONDITION = 7,
  QG_NOT_SELF_ADJOINT = 8,
  QG_UNKNOWN_EDGE = 9,
  QG_DOMAIN_ERROR = 10,
  QG_PARSE_ERROR = 11,
  QG_NULL_ARGUMENT = 12,
  /* numerical */
  QG_POLE_HIT = 100,
  QG_SINGULAR_G = 101,
  QG_ILL_CONDITIONED_INTERPOLATION = 102,
  QG_ZERO_LEADING_COEFFICIENT = 103,
  QG_VANISHING_ORDER_MISMATCH = 104,
  QG_VANISHING_PHI0 = 105,
  QG_INSUFFICIENT_SUBTRACTIONS = 106,
  QG_QUADRATURE_FAILURE = 107,
  QG_NEGATIVE_SPECTRUM = 108,
  QG_COMPLETENESS_FAILURE = 109,
  QG_DIVERGENT_PARAMETER = 110,
  QG_TRUNCATION_TOO_LARGE = 111,
  QG_FIT_RESIDUAL_TOO_LARGE = 112,
  QG_ORDER_EXCEEDS_PROFILE = 113,
  QG_INTERNAL_ERROR = 199
} qg_status;

typedef struct qg_graph qg_graph;
typedef struct qg_spectrum qg_spectrum;
typedef struct qg_histogram qg_histogram;

/* Status helpers. */
QG_API const char* qg_status_name(qg_status status);
QG_API int qg_status_is_input_error(qg_status status);
QG_API const char* qg_last_error(void);

/* Graph documents (see README for the JSON layout). Loading checks the
 * structure only; self-adjointness is checked by qg_graph_validate and by
 * every computation. */
QG_API qg_status qg_graph_load_file(const char* path, qg_graph** out);
QG_API qg_status qg_graph_load_json(const char* text, qg_graph** out);
QG_API void qg_graph_free(qg_graph* graph);
/* Serialized document; release with qg_string_free. */
QG_API qg_status qg_graph_to_json(const qg_graph* graph, char** out);
QG_API void qg_string_free(char* text);

typedef struct qg_graph_info {
  int edge_count;
  int size;              /* 2 E */
  double total_length;
  int rank;              /* rank of [A B] */
  int rank_ok;
  int hermitian_ok;
  double max_defect;     /* max |A B^* - B A^*| */
  int zero_modes;        /* -1 when the matching is not self-adjoint */
} qg_graph_info;

/* Fills the report even for matchings that are not self-adjoint. */
QG_API qg_status qg_graph_validate(const qg_graph* graph, qg_graph_info* out);

typedef struct qg_options {
  double t0;   /* split point of the continuation */
  int n_sub;   /* asymptotic subtractions for s <= 0 */
  int n_max;   /* large-t coefficients kept */
} qg_options;

QG_API qg_options qg_options_default(void);

/* Spectrum in (0, k_max]. */
QG_API qg_status qg_eigenvalues(const qg_graph* graph, double k_max, qg_spectrum** out);
QG_API void qg_spectrum_free(qg_spectrum* spectrum);

typedef struct qg_spectrum_info {
  size_t count;               /* distinct roots */
  int levels;                 /* counted with multiplicity */
  double k_max;
  int complete;
  int zero_modes;
  double max_weyl_deviation;
  double weyl_bound;          /* E + n0 + 2 */
  int refinements;
} qg_spectrum_info;

QG_API qg_status qg_spectrum_get_info(const qg_spectrum* spectrum, qg_spectrum_info* out);
/* Pointers stay valid until the spectrum is freed. */
QG_API qg_status qg_spectrum_roots(const qg_spectrum* spectrum, const double** roots, const int** multiplicities);
QG_API qg_status qg_direct_heat_trace(const qg_spectrum* spectrum, double t, double* out);
QG_API qg_status qg_direct_zeta(const qg_spectrum* spectrum, double s, double* value, double* error_estimate);

typedef struct qg_zeta_result {
  double s;
  double finite_part;
  double residue;
  int continued;       /* 0: strip formula, 1: continuation */
  double t0;
  int n_sub;
  double quadrature_error;
} qg_zeta_result;

QG_API qg_status qg_zeta(const qg_graph* graph, double s, const qg_options* options, qg_zeta_result* out);

typedef struct qg_determinant_result {
  double det_prime;
  double log_det_prime;
  int sign;
  double zeta_prime_zero;
  double zeta_prime_zero_continued;
  double zeta_zero;
} qg_determinant_result;

QG_API qg_status qg_determinant(const qg_graph* graph, const qg_options* options, qg_determinant_result* out);

typedef struct qg_vacuum_result {
  double energy;           /* finite part of zeta(-1/2) / 2 */
  double energy_residue;
  double zeta_residue;
  double t0;
  int n_sub;
  double quadrature_error;
} qg_vacuum_result;

QG_API qg_status qg_vacuum(const qg_graph* graph, const qg_options* options, qg_vacuum_result* out);

typedef struct qg_force_result {
  int edge;
  double dE_dL;
  double force;
  double closed_part;
  double integral_part;
} qg_force_result;

QG_API qg_status qg_force(const qg_graph* graph, int edge_id, const qg_options* options, qg_force_result* out);

#define QG_MAX_HEAT_ORDER 32

typedef struct qg_heat_result {
  double leading;    /* coefficient of t^{-1/2} */
  double constant;
  int order;
  double power[QG_MAX_HEAT_ORDER];
  double coefficient[QG_MAX_HEAT_ORDER];
  double next_power;
  double next_coefficient;
} qg_heat_result;

/* Terms t^{n/2}, n = 1..order. */
QG_API qg_status qg_heat(const qg_graph* graph, int order, const qg_options* options, qg_heat_result* out);
QG_API double qg_heat_evaluate(const qg_heat_result* heat, double t);

/* Unfolded nearest-neighbour spacings of the first `levels` levels. */
QG_API qg_status qg_spacings(const qg_spectrum* spectrum, int levels, double bin_width, qg_histogram** out);
QG_API void qg_histogram_free(qg_histogram* histogram);

typedef struct qg_histogram_view {
  size_t bins;
  const double* bin_edges;  /* bins + 1 entries */
  const double* density;
  const double* wigner;
  size_t spacing_count;
  double ks_distance;
} qg_histogram_view;

QG_API qg_status qg_histogram_get(const qg_histogram* histogram, qg_histogram_view* out);

#ifdef __cplusplus
}
#endif

#endif
