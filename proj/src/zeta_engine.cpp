#include "zeta_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "secular.hpp"
#include "special.hpp"

namespace qgzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLongTail = 100;
constexpr int kRule = 20;
constexpr int kCheckRule = 14;

struct Panel {
  double a, b;
};

// Geometric panels with growth `ratio`, widths capped at `max_width`.
std::vector<Panel> make_panels(double a, double b, double ratio, double max_width) {
  std::vector<Panel> out;
  double x = a;
  while (x < b * (1 - 1e-15)) {
    const double next = std::min({x * ratio, x + max_width, b});
    out.push_back({x, next});
    x = next;
  }
  return out;
}

template <class F>
void for_each_node(const std::vector<Panel>& panels, int order, F&& f) {
  const GaussRule& rule = gauss_legendre(order);
  for (const auto& p : panels) {
    const double half = 0.5 * (p.b - p.a);
    const double mid = 0.5 * (p.b + p.a);
    for (int i = 0; i < order; ++i) f(mid + half * rule.nodes[i], half * rule.weights[i]);
  }
}

double root_bound(const std::vector<cplx>& c, int degree) {
  // Fujiwara-type bound on the zeros of p(t).
  double bound = 0.0;
  for (int j = 1; j <= degree; ++j)
    bound = std::max(bound, std::pow(std::abs(c[degree - j] / c[degree]), 1.0 / j));
  return 2.0 * bound;
}

}  // namespace

double HeatExpansion::evaluate(double t) const {
  double k = leading / std::sqrt(t) + constant;
  for (const auto& term : terms) k += term.coefficient * std::pow(t, term.power);
  return k;
}

ZetaEngine::ZetaEngine(QuantumGraph qg, EngineOptions options)
    : qg_(std::move(qg)), options_(options) {
  if (!(options_.t0 > 0.0)) throw Error(ErrorCode::DomainError, "split point t0 must be positive");
  if (options_.n_max < 1) throw Error(ErrorCode::DomainError, "n_max must be at least 1");
  if (options_.n_sub < 0 || options_.n_sub > options_.n_max)
    throw Error(ErrorCode::DomainError, "n_sub must lie in 0..n_max");

  profile_ = compute_profile(qg_, options_.n_max);
  long_tail_ = log_tail(profile_.c, profile_.degree, kLongTail);
  if (profile_.phi0 < 0.0)
    throw Error(ErrorCode::NegativeSpectrum,
                "fhat(t)/t^nu changes sign on (0, inf): the Laplacian has negative eigenvalues");

  const auto& m = qg_.matching;
  const auto lengths = qg_.lengths();
  const double lmin = qg_.graph.min_length();
  const double t0 = options_.t0;
  const int nu = profile_.vanishing_order;
  const double phase = std::arg(profile_.leading);

  t_small_ = std::min(0.05 / qg_.graph.total_length(), 0.25 * t0);
  t_cut_ = std::max({25.0 / lmin, 2.0 * root_bound(profile_.c, profile_.degree), 2.0 * t0});

  auto dlog_phi = [&](double t) {
    const SecularValue v = secular_fhat(m, lengths, t);
    if (v.value == cplx(0.0) || std::cos(v.arg - phase) <= 0.0)
      throw Error(ErrorCode::NegativeSpectrum,
                  "fhat vanishes or changes sign at t = " + std::to_string(t));
    return dlog_fhat_dt(m, lengths, t) - nu / t;
  };

  {
    std::vector<double> x, y;
    for (int i = 0; i < 6; ++i) {
      const double t = t_small_ * (0.5 + 0.3 * i);
      x.push_back((t / t_small_) * (t / t_small_));
      y.push_back(dlog_phi(t) / t);
    }
    small_fit_ = polyfit(x, y, 3);
  }

  const auto head = make_panels(t_small_, t0, 2.0, INFINITY);
  const auto tail = make_panels(t0, t_cut_, 1.5, 4.0 / lmin);
  for (int order : {kRule, kCheckRule}) {
    auto& dest = order == kRule ? nodes_ : check_nodes_;
    for_each_node(head, order, [&](double t, double w) { dest.push_back({t, w, dlog_phi(t), false}); });
    for_each_node(tail, order, [&](double t, double w) { dest.push_back({t, w, dlog_phi(t), true}); });
  }
}

double ZetaEngine::small_t_part(double s) const {
  // int_0^{ts} t^{1-2s} sum_j a_j (t/ts)^{2j} dt
  double acc = 0.0;
  for (std::size_t j = 0; j < small_fit_.size(); ++j)
    acc += small_fit_[j] / (2.0 * j + 2.0 - 2.0 * s);
  return acc * std::pow(t_small_, 2.0 - 2.0 * s);
}

double ZetaEngine::integral(double s, int n_sub, const std::vector<Node>& nodes) const {
  const double ntilde = profile_.degree - profile_.vanishing_order;
  double acc = 0.0;
  for (const auto& node : nodes) {
    double f = node.dlog_phi;
    if (node.tail) {
      f -= ntilde / node.t;
      for (int n = 1; n <= n_sub; ++n) f += n * long_tail_[n - 1].real() * std::pow(node.t, -n - 1.0);
    }
    acc += node.w * std::pow(node.t, -2.0 * s) * f;
  }
  return acc;
}

double ZetaEngine::beyond_cut(double s, int n_sub) const {
  // Past t_cut, fhat = p(t) to machine precision and the remainder is the
  // convergent series -sum_{n > n_sub} n b_n t^{-n-1}.
  double acc = 0.0;
  for (int n = n_sub + 1; n <= kLongTail; ++n) {
    const double term = n * long_tail_[n - 1].real() * std::pow(t_cut_, -2.0 * s - n) / (2.0 * s + n);
    acc -= term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(acc)) && n > n_sub + 4) break;
  }
  return acc;
}

ZetaResult ZetaEngine::assemble(double s, int n_sub, ZetaMethod method) const {
  ZetaResult r;
  r.s = s;
  r.method = method;
  r.t0 = options_.t0;
  r.n_sub = n_sub;

  const auto lengths = qg_.lengths();
  const double total = qg_.graph.total_length();
  const double t0 = options_.t0;
  const double sin_factor = std::sin(kPi * s) / kPi;

  // zeta_R(2s) sum_e (L_e/pi)^{2s}
  if (std::abs(s - 0.5) < 1e-15) {
    r.residue += total / (2.0 * kPi);
    double fin = kEulerGamma * total / kPi;
    for (double len : lengths) fin += (len / kPi) * std::log(len / kPi);
    r.finite_part += fin;
  } else {
    double sum = 0.0;
    for (double len : lengths) sum += std::pow(len / kPi, 2.0 * s);
    r.finite_part += riemann_zeta(2.0 * s) * sum;
  }

  const double numeric = small_t_part(s) + integral(s, n_sub, nodes_) + beyond_cut(s, n_sub);
  r.finite_part += sin_factor * numeric;
  r.quadrature_error =
      std::abs(sin_factor * (integral(s, n_sub, nodes_) - integral(s, n_sub, check_nodes_)));

  // Ntilde log t on (t0, inf): sin(pi s)/pi * Ntilde t0^{-2s} / (2s)
  const double ntilde = profile_.degree - profile_.vanishing_order;
  if (s == 0.0)
    r.finite_part += ntilde / 2.0;
  else
    r.finite_part += sin_factor * ntilde * std::pow(t0, -2.0 * s) / (2.0 * s);

  // b_n t^{-n} on (t0, inf): sin(pi s)/pi * (-n b_n) t0^{-2s-n} / (2s + n)
  for (int n = 1; n <= n_sub; ++n) {
    const double bn = long_tail_[n - 1].real();
    if (std::abs(2.0 * s + n) < 1e-12) {
      // h(s) / (2 (s - s0)) with h(s) = sin(pi s)/pi (-n b_n) t0^{-2s-n}
      const double h = sin_factor * (-n * bn);
      const double dh = std::cos(kPi * s) * (-n * bn) + sin_factor * (-n * bn) * (-2.0 * std::log(t0));
      r.residue += h / 2.0;
      r.finite_part += dh / 2.0;
    } else {
      r.finite_part += sin_factor * (-n * bn) * std::pow(t0, -2.0 * s - n) / (2.0 * s + n);
    }
  }
  return r;
}

ZetaResult ZetaEngine::zeta_strip(double s) const {
  if (!(s > 0.0 && s < 1.0))
    throw Error(ErrorCode::DomainError, "strip representation needs 0 < s < 1");
  return assemble(s, 0, ZetaMethod::Strip);
}

ZetaResult ZetaEngine::zeta_continued(double s, int n_sub) const {
  if (!(s <= 0.0)) throw Error(ErrorCode::DomainError, "continuation is used for s <= 0");
  if (n_sub > options_.n_max)
    throw Error(ErrorCode::OrderExceedsProfile, "n_sub exceeds the stored b_n");
  if (!(n_sub > -2.0 * s))
    throw Error(ErrorCode::InsufficientSubtractions,
                "need more than " + std::to_string(-2.0 * s) + " subtractions at s = " +
                    std::to_string(s));
  return assemble(s, n_sub, ZetaMethod::Continued);
}

ZetaResult ZetaEngine::zeta(double s) const {
  return s > 0.0 ? zeta_strip(s) : zeta_continued(s);
}

double ZetaEngine::zeta_prime_zero() const {
  double acc = 0.0;
  for (double len : qg_.lengths()) acc -= std::log(2.0 * len);
  acc += std::log(std::abs(profile_.leading)) - std::log(std::abs(profile_.phi0));
  return acc;
}

double ZetaEngine::zeta_prime_zero_continued() const {
  const int n_sub = options_.n_sub;
  const double t0 = options_.t0;
  double acc = 0.0;
  for (double len : qg_.lengths()) acc -= std::log(2.0 * len);
  // d/ds [sin(pi s)/pi * I(s)] at 0 is I(0).
  acc += small_t_part(0.0) + integral(0.0, n_sub, nodes_);
  const double ntilde = profile_.degree - profile_.vanishing_order;
  acc -= ntilde * std::log(t0);
  for (int n = 1; n <= n_sub; ++n) acc -= long_tail_[n - 1].real() * std::pow(t0, -n);
  for (int n = n_sub + 1; n <= kLongTail; ++n) {
    const double term = long_tail_[n - 1].real() * std::pow(t_cut_, -n);
    acc -= term;
    if (std::abs(term) < 1e-18 && n > n_sub + 4) break;
  }
  return acc;
}

DeterminantResult ZetaEngine::spectral_determinant() const {
  if (profile_.phi0 == 0.0) throw Error(ErrorCode::VanishingPhi0, "Phi0 vanished");
  DeterminantResult d;
  d.zeta_prime_zero = zeta_prime_zero();
  d.zeta_prime_zero_continued = zeta_prime_zero_continued();
  d.log_value = -d.zeta_prime_zero;
  d.value = std::exp(d.log_value);
  d.sign = profile_.phi0 > 0.0 ? 1 : -1;
  return d;
}

ForceResult ZetaEngine::casimir_force(int edge_id) const {
  const auto& edge = qg_.graph.edge(edge_id);
  const auto& m = qg_.matching;
  const auto lengths = qg_.lengths();
  const double len = edge.length;
  const double lmin = qg_.graph.min_length();

  // The integrand is even in t and decays like t^2 exp(-t L_e).
  const double ts = t_small_;
  std::vector<double> x, y;
  for (int i = 0; i < 6; ++i) {
    const double t = ts * (0.5 + 0.3 * i);
    x.push_back((t / ts) * (t / ts));
    y.push_back(dlog_fhat_dlength(m, lengths, edge_id, t));
  }
  const auto fit = polyfit(x, y, 3);
  double integral = 0.0;
  for (std::size_t j = 0; j < fit.size(); ++j) integral += ts * fit[j] / (2.0 * j + 1.0);

  const double t_end = std::max(t_cut_, 60.0 / len);
  auto panels = make_panels(ts, options_.t0, 2.0, INFINITY);
  const auto rest = make_panels(options_.t0, t_end, 1.5, 4.0 / lmin);
  panels.insert(panels.end(), rest.begin(), rest.end());
  for_each_node(panels, kRule, [&](double t, double w) {
    integral += w * dlog_fhat_dlength(m, lengths, edge_id, t);
  });

  ForceResult f;
  f.edge = edge_id;
  f.closed_part = kPi / (24.0 * len * len);
  f.integral_part = integral / (2.0 * kPi);
  f.dE_dL = f.closed_part + f.integral_part;
  f.force = -f.dE_dL;
  return f;
}

VacuumReport ZetaEngine::vacuum_energy() const {
  const int n_sub = std::max(options_.n_sub, 2);
  if (n_sub > options_.n_max)
    throw Error(ErrorCode::InsufficientSubtractions, "vacuum energy needs n_max >= 2");
  const ZetaResult z = assemble(-0.5, n_sub, ZetaMethod::Continued);
  VacuumReport r;
  r.energy = 0.5 * z.finite_part;
  r.zeta_residue = z.residue;
  r.energy_residue = 0.5 * z.residue;
  for (int e = 1; e <= qg_.edge_count(); ++e) r.forces.push_back(casimir_force(e));
  return r;
}

HeatExpansion ZetaEngine::heat_coefficients(int order) const {
  if (order < 0) throw Error(ErrorCode::DomainError, "heat expansion order must be >= 0");
  if (order > options_.n_max)
    throw Error(ErrorCode::OrderExceedsProfile,
                "order " + std::to_string(order) + " exceeds n_max = " + std::to_string(options_.n_max));
  // Poles of Gamma(s) zeta(s): s = 1/2 (Weyl), s = 0 (zeta(0)), and
  // s = -n/2 from the b_n term, each giving a_{n/2} = -b_n / Gamma(n/2).
  HeatExpansion h;
  h.leading = qg_.graph.total_length() / std::sqrt(4.0 * kPi);
  h.constant = 0.5 * (profile_.degree - profile_.vanishing_order - qg_.edge_count()) +
               profile_.zero_modes;
  auto coefficient = [&](int n) { return -long_tail_[n - 1].real() / std::tgamma(0.5 * n); };
  for (int n = 1; n <= order; ++n) h.terms.push_back({0.5 * n, coefficient(n)});
  h.next_term = {0.5 * (order + 1), coefficient(order + 1)};
  return h;
}

ZetaResult zeta_strip(const QuantumGraph& qg, double s, EngineOptions options) {
  return ZetaEngine(qg, options).zeta_strip(s);
}

ZetaResult zeta_continued(const QuantumGraph& qg, double s, EngineOptions options) {
  return ZetaEngine(qg, options).zeta_continued(s);
}

DeterminantResult spectral_determinant(const QuantumGraph& qg, EngineOptions options) {
  return ZetaEngine(qg, options).spectral_determinant();
}

VacuumReport vacuum_energy(const QuantumGraph& qg, EngineOptions options) {
  return ZetaEngine(qg, options).vacuum_energy();
}

ForceResult casimir_force(const QuantumGraph& qg, int edge_id, EngineOptions options) {
  return ZetaEngine(qg, options).casimir_force(edge_id);
}

HeatExpansion heat_coefficients(const QuantumGraph& qg, int order, EngineOptions options) {
  return ZetaEngine(qg, options).heat_coefficients(order);
}

}  // namespace qgzeta
