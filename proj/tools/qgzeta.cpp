// Command-line front end over the C interface.
//
// Exit codes: 0 success, 2 input or validation error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qgzeta/qgzeta.h"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Failure {
  int code;
};

void check(qg_status status) {
  if (status == QG_OK) return;
  std::fprintf(stderr, "error: %s\n", qg_last_error());
  throw Failure{qg_status_is_input_error(status) ? kExitInput : kExitNumeric};
}

void kv(const char* key, double value) { std::printf("%s=%.17g\n", key, value); }
void kv(const char* key, int value) { std::printf("%s=%d\n", key, value); }
void kv(const char* key, const char* value) { std::printf("%s=%s\n", key, value); }
void kv(const std::string& key, double value) { kv(key.c_str(), value); }

class Graph {
 public:
  explicit Graph(const std::string& path) { check(qg_graph_load_file(path.c_str(), &g_)); }
  ~Graph() { qg_graph_free(g_); }
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  const qg_graph* get() const { return g_; }

 private:
  qg_graph* g_ = nullptr;
};

class Spectrum {
 public:
  Spectrum(const Graph& g, double k_max) { check(qg_eigenvalues(g.get(), k_max, &s_)); }
  ~Spectrum() { qg_spectrum_free(s_); }
  Spectrum(const Spectrum&) = delete;
  Spectrum& operator=(const Spectrum&) = delete;
  const qg_spectrum* get() const { return s_; }

 private:
  qg_spectrum* s_ = nullptr;
};

struct Settings {
  std::string path;
  double kmax = 0.0;
  double s = 0.0;
  int edge = 0;
  int orders = 4;
  std::optional<double> check_direct;
  int levels = 2000;
  std::string out = "csv";
  std::optional<double> t0;
  std::optional<int> nsub;
};

qg_options options_from(const Settings& st) {
  qg_options o = qg_options_default();
  if (st.t0) o.t0 = *st.t0;
  if (st.nsub) {
    o.n_sub = *st.nsub;
    if (o.n_max < o.n_sub) o.n_max = o.n_sub;
  }
  return o;
}

int cmd_validate(const Settings& st) {
  Graph g(st.path);
  qg_graph_info info{};
  check(qg_graph_validate(g.get(), &info));
  kv("rank_ok", info.rank_ok ? "true" : "false");
  kv("hermitian_ok", info.hermitian_ok ? "true" : "false");
  kv("rank", info.rank);
  kv("size", info.size);
  kv("max_defect", info.max_defect);
  kv("edges", info.edge_count);
  kv("total_length", info.total_length);
  if (info.zero_modes >= 0) kv("zero_modes", info.zero_modes);
  if (!info.rank_ok || !info.hermitian_ok) {
    std::fprintf(stderr, "error: NotSelfAdjoint: matching fails %s\n",
                 !info.rank_ok ? "the rank condition" : "the Hermiticity condition");
    return kExitInput;
  }
  return 0;
}

int cmd_eig(const Settings& st) {
  Graph g(st.path);
  Spectrum sp(g, st.kmax);
  qg_spectrum_info info{};
  check(qg_spectrum_get_info(sp.get(), &info));
  const double* roots = nullptr;
  const int* mult = nullptr;
  check(qg_spectrum_roots(sp.get(), &roots, &mult));
  if (st.out == "json") {
    std::printf("{\n  \"k_max\": %.17g,\n  \"complete\": %s,\n  \"zero_modes\": %d,\n", info.k_max,
                info.complete ? "true" : "false", info.zero_modes);
    std::printf("  \"max_weyl_deviation\": %.17g,\n  \"weyl_bound\": %.17g,\n  \"refinements\": %d,\n",
                info.max_weyl_deviation, info.weyl_bound, info.refinements);
    std::printf("  \"roots\": [");
    for (size_t i = 0; i < info.count; ++i)
      std::printf("%s\n    {\"k\": %.17g, \"multiplicity\": %d}", i ? "," : "", roots[i], mult[i]);
    std::printf("%s]\n}\n", info.count ? "\n  " : "");
  } else {
    std::printf("k,multiplicity\n");
    for (size_t i = 0; i < info.count; ++i) std::printf("%.17g,%d\n", roots[i], mult[i]);
    std::fprintf(stderr, "complete=%s\nzero_modes=%d\nmax_weyl_deviation=%.17g\nweyl_bound=%.17g\n",
                 info.complete ? "true" : "false", info.zero_modes, info.max_weyl_deviation, info.weyl_bound);
  }
  return 0;
}

int cmd_zeta(const Settings& st) {
  Graph g(st.path);
  const qg_options o = options_from(st);
  qg_zeta_result r{};
  check(qg_zeta(g.get(), st.s, &o, &r));
  kv("s", r.s);
  kv("finite_part", r.finite_part);
  kv("residue", r.residue);
  kv("method", r.continued ? "continued" : "strip");
  kv("t0", r.t0);
  kv("n_sub", r.n_sub);
  kv("quadrature_error", r.quadrature_error);
  return 0;
}

int cmd_detprime(const Settings& st) {
  Graph g(st.path);
  const qg_options o = options_from(st);
  qg_determinant_result r{};
  check(qg_determinant(g.get(), &o, &r));
  kv("det_prime", r.det_prime);
  kv("log_det_prime", r.log_det_prime);
  kv("sign", r.sign);
  kv("zeta_prime_zero", r.zeta_prime_zero);
  kv("zeta_prime_zero_continued", r.zeta_prime_zero_continued);
  kv("zeta_zero", r.zeta_zero);
  kv("t0", o.t0);
  kv("n_sub", o.n_sub);
  return 0;
}

int cmd_vacuum(const Settings& st) {
  Graph g(st.path);
  const qg_options o = options_from(st);
  qg_vacuum_result r{};
  check(qg_vacuum(g.get(), &o, &r));
  kv("energy", r.energy);
  kv("finite_part", r.energy);
  kv("residue", r.energy_residue);
  kv("zeta_residue", r.zeta_residue);
  kv("t0", r.t0);
  kv("n_sub", r.n_sub);
  kv("quadrature_error", r.quadrature_error);
  return 0;
}

int cmd_force(const Settings& st) {
  Graph g(st.path);
  const qg_options o = options_from(st);
  qg_force_result r{};
  check(qg_force(g.get(), st.edge, &o, &r));
  kv("edge", r.edge);
  kv("dE_dL", r.dE_dL);
  kv("force", r.force);
  kv("closed_part", r.closed_part);
  kv("integral_part", r.integral_part);
  return 0;
}

int cmd_heat(const Settings& st) {
  Graph g(st.path);
  const qg_options o = options_from(st);
  qg_heat_result h{};
  check(qg_heat(g.get(), st.orders, &o, &h));
  kv("leading", h.leading);
  kv("constant", h.constant);
  kv("order", h.order);
  for (int i = 0; i < h.order; ++i) {
    const std::string key = "term" + std::to_string(i + 1);
    kv(key + "_power", h.power[i]);
    kv(key + "_coefficient", h.coefficient[i]);
  }
  kv("next_power", h.next_power);
  kv("next_coefficient", h.next_coefficient);
  if (st.check_direct) {
    const double t = *st.check_direct;
    if (!(t > 0.0)) {
      std::fprintf(stderr, "error: DomainError: --check-direct needs t > 0\n");
      return kExitInput;
    }
    // exp(-k_max^2 t) well below 1e-14.
    const double k_max = std::sqrt(40.0 / t);
    Spectrum sp(g, k_max);
    double direct = 0.0;
    check(qg_direct_heat_trace(sp.get(), t, &direct));
    const double series = qg_heat_evaluate(&h, t);
    kv("check_t", t);
    kv("check_k_max", k_max);
    kv("direct_trace", direct);
    kv("series_trace", series);
    kv("abs_difference", std::abs(series - direct));
    kv("omitted_term_bound", std::abs(h.next_coefficient) * std::pow(t, h.next_power));
  }
  return 0;
}

int cmd_spacings(const Settings& st) {
  Graph g(st.path);
  qg_graph_info info{};
  check(qg_graph_validate(g.get(), &info));
  // A margin past the requested level count on the Weyl scale.
  const double k_max = (st.levels + 2.0 * info.edge_count + 20.0) * M_PI / info.total_length;
  Spectrum sp(g, k_max);
  qg_histogram* hist = nullptr;
  check(qg_spacings(sp.get(), st.levels, 0.1, &hist));
  qg_histogram_view v{};
  qg_histogram_get(hist, &v);
  if (st.out == "json") {
    std::printf("{\n  \"spacings\": %zu,\n  \"ks_distance\": %.17g,\n  \"bins\": [", v.spacing_count, v.ks_distance);
    for (size_t i = 0; i < v.bins; ++i)
      std::printf("%s\n    {\"lo\": %.17g, \"hi\": %.17g, \"density\": %.17g, \"wigner\": %.17g}", i ? "," : "",
                  v.bin_edges[i], v.bin_edges[i + 1], v.density[i], v.wigner[i]);
    std::printf("\n  ]\n}\n");
  } else {
    std::printf("bin_lo,bin_hi,density,wigner\n");
    for (size_t i = 0; i < v.bins; ++i)
      std::printf("%.17g,%.17g,%.17g,%.17g\n", v.bin_edges[i], v.bin_edges[i + 1], v.density[i], v.wigner[i]);
    std::fprintf(stderr, "spacings=%zu\nks_distance=%.17g\n", v.spacing_count, v.ks_distance);
  }
  qg_histogram_free(hist);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, zeta functions, determinants and Casimir energies of quantum graphs"};
  app.require_subcommand(1);
  Settings st;

  auto with_path = [&](CLI::App* sub) {
    sub->add_option("path", st.path, "graph file")->required();
    return sub;
  };
  auto with_engine = [&](CLI::App* sub) {
    sub->add_option("--t0", st.t0, "split point of the continuation");
    sub->add_option("--nsub", st.nsub, "number of asymptotic subtractions");
    return sub;
  };
  auto out_option = [&](CLI::App* sub) {
    sub->add_option("--out", st.out, "output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* validate = with_path(app.add_subcommand("validate", "check a graph file and report rank, Hermiticity, E, total length, n0"));
  auto* eig = with_path(app.add_subcommand("eig", "eigenvalue square roots up to --kmax"));
  eig->add_option("--kmax", st.kmax, "upper end of the scan window")->required();
  out_option(eig);
  auto* zeta = with_engine(with_path(app.add_subcommand("zeta", "spectral zeta function at --s")));
  zeta->add_option("--s", st.s, "argument")->required();
  auto* det = with_engine(with_path(app.add_subcommand("detprime", "zeta-regularized determinant")));
  auto* vac = with_engine(with_path(app.add_subcommand("vacuum", "Casimir energy zeta(-1/2)/2")));
  auto* force = with_engine(with_path(app.add_subcommand("force", "Casimir force on --edge")));
  force->add_option("--edge", st.edge, "edge id")->required();
  auto* heat = with_engine(with_path(app.add_subcommand("heat", "small-t heat trace coefficients")));
  heat->add_option("--orders", st.orders, "number of terms t^{n/2}, n >= 1");
  heat->add_option("--check-direct", st.check_direct, "compare with the eigenvalue sum at this t");
  auto* spacings = with_path(app.add_subcommand("spacings", "unfolded level spacing histogram"));
  spacings->add_option("--levels", st.levels, "number of spacings");
  out_option(spacings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*validate) return cmd_validate(st);
    if (*eig) return cmd_eig(st);
    if (*zeta) return cmd_zeta(st);
    if (*det) return cmd_detprime(st);
    if (*vac) return cmd_vacuum(st);
    if (*force) return cmd_force(st);
    if (*heat) return cmd_heat(st);
    if (*spacings) return cmd_spacings(st);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitInput;
}
