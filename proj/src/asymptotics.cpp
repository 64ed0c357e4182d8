#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "linalg.hpp"
#include "secular.hpp"

namespace qgzeta {

namespace {

template <class Real>
std::vector<cplx> fourier_coefficients(const GlobalMatching& m, double radius) {
  using C = std::complex<Real>;
  using Mat = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = m.size();
  const int nodes = n + 1;
  const Mat a = m.a.cast<C>();
  const Mat b = m.b.cast<C>();
  const Real two_pi = 2 * std::numbers::pi_v<Real>;

  std::vector<C> values(nodes);
  for (int j = 0; j < nodes; ++j) {
    const C t = std::polar(static_cast<Real>(radius), two_pi * j / nodes);
    const LogDet d = log_determinant<C>(a - t * b);
    values[j] = d.zero ? C(0) : std::polar(std::exp(static_cast<Real>(d.log_abs)), static_cast<Real>(d.arg));
  }
  std::vector<cplx> c(nodes);
  for (int k = 0; k < nodes; ++k) {
    C sum = 0;
    for (int j = 0; j < nodes; ++j) sum += values[j] * std::polar(Real(1), -two_pi * j * k / nodes);
    sum /= static_cast<Real>(nodes) * std::pow(static_cast<Real>(radius), static_cast<Real>(k));
    c[k] = cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  }
  return c;
}

double refit_residual(const GlobalMatching& m, const std::vector<cplx>& c) {
  double worst = 0.0;
  const int probes = 5;
  for (int i = 0; i < probes; ++i) {
    const double t = std::cos(std::numbers::pi * (i + 0.5) / probes);
    const cplx exact = to_value(log_determinant<cplx>(m.a - t * m.b));
    cplx fit = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) fit = fit * t + *it;
    worst = std::max(worst, std::abs(fit - exact));
  }
  return worst;
}

double max_abs(std::span<const cplx> c) {
  double mx = 0.0;
  for (const auto& x : c) mx = std::max(mx, std::abs(x));
  return mx;
}

}  // namespace

std::vector<cplx> char_polynomial(const GlobalMatching& m) {
  auto c = fourier_coefficients<double>(m, 1.0);
  const double tol = 1e-9 * std::max(max_abs(c), 1e-300);
  if (refit_residual(m, c) < tol) return c;
  c = fourier_coefficients<long double>(m, 1.0);
  if (refit_residual(m, c) < tol) return c;
  throw Error(ErrorCode::IllConditionedInterpolation,
              "det(A - tB) coefficients failed the refit check");
}

int polynomial_degree(std::span<const cplx> c) {
  const double mx = max_abs(c);
  if (mx == 0.0) throw Error(ErrorCode::ZeroLeadingCoefficient, "det(A - tB) vanishes identically");
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j)
    if (std::abs(c[j]) > 1e-10 * mx) return j;
  return 0;
}

std::vector<cplx> log_tail(std::span<const cplx> c, int degree, int n_max) {
  if (degree < 0 || degree >= static_cast<int>(c.size()) || std::abs(c[degree]) == 0.0)
    throw Error(ErrorCode::ZeroLeadingCoefficient, "leading coefficient is zero");
  // With u = 1/t: p(t) = c_N t^N (1 + sum_j d_j u^j), d_j = c_{N-j}/c_N.
  std::vector<cplx> d(n_max + 1, 0.0);
  for (int j = 1; j <= std::min(degree, n_max); ++j) d[j] = c[degree - j] / c[degree];
  // log(1 + D(u)) = sum beta_n u^n,  n beta_n = n d_n - sum_{m<n} m beta_m d_{n-m}.
  std::vector<cplx> beta(n_max + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    cplx acc = 0.0;
    for (int k = 1; k < n; ++k) acc += static_cast<double>(k) * beta[k] * d[n - k];
    beta[n] = d[n] - acc / static_cast<double>(n);
  }
  return {beta.begin() + 1, beta.end()};
}

int zero_modes(const GlobalMatching& m, std::span<const double> lengths) {
  const int e = static_cast<int>(lengths.size());
  const int n = 2 * e;
  // Columns: alpha_e at i, beta_e at e + i.
  //   phi  = (alpha, alpha + beta L),  phi' = (beta, -beta)
  CMatrix z(n, n);
  for (int i = 0; i < e; ++i) {
    z.col(i) = m.a.col(i) + m.a.col(e + i);
    z.col(e + i) = lengths[i] * m.a.col(e + i) + m.b.col(i) - m.b.col(e + i);
  }
  Eigen::JacobiSVD<CMatrix> svd(z);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax == 0.0) return n;
  int kernel = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-10 * smax) ++kernel;
  return kernel;
}

VanishingData vanishing_order_and_limit(const GlobalMatching& m, std::span<const double> lengths,
                                        int n0, double phase) {
  VanishingData out;
  out.order = 2 * n0;
  // t has units of inverse length; start at a fraction of 1 / total length and
  // shrink until two extrapolation orders agree.
  double total = 0.0;
  for (double l : lengths) total += l;
  constexpr int kPoints = 5;

  double phi0 = 0.0;
  double scale = 0.0;
  bool converged = false;
  for (int attempt = 0; attempt < 6 && !converged; ++attempt) {
    const double h = 0.4 / total / std::pow(4.0, attempt);
    double r[kPoints];
    double u[kPoints];
    for (int i = 0; i < kPoints; ++i) {
      const double t = h / std::pow(2.0, i);
      const SecularValue v = secular_fhat(m, lengths, t);
      r[i] = std::exp(v.log_abs - out.order * std::log(t)) * std::cos(v.arg - phase);
      u[i] = t * t;
      scale = std::max(scale, std::abs(r[i]));
    }
    // Neville tableau in u = t^2; p[0] ends as the quartic, lower[0] as the
    // cubic through the four largest t.
    double p[kPoints];
    double lower = 0.0;
    std::copy(r, r + kPoints, p);
    for (int level = 1; level < kPoints; ++level) {
      for (int i = 0; i + level < kPoints; ++i)
        p[i] = (u[i + level] * p[i] - u[i] * p[i + 1]) / (u[i + level] - u[i]);
      if (level == kPoints - 2) lower = p[0];
    }
    phi0 = p[0];
    out.extrapolation_spread = std::abs(p[0] - lower);
    converged = out.extrapolation_spread <= 1e-7 * std::abs(phi0);
  }
  if (!converged || !(std::abs(phi0) > 1e-8 * scale))
    throw Error(ErrorCode::VanishingOrderMismatch,
                "fhat(t)/t^" + std::to_string(out.order) + " has no finite nonzero limit");
  out.limit = phi0;

  if (n0 == 0) {
    const SecularValue at0 = secular_fhat(m, lengths, 0.0);
    if (at0.value == cplx(0.0))
      throw Error(ErrorCode::VanishingOrderMismatch, "fhat(0) = 0 but no zero modes were found");
    const double closed = std::exp(at0.log_abs) * std::cos(at0.arg - phase);
    if (std::abs(closed - phi0) > 1e-6 * std::abs(closed))
      throw Error(ErrorCode::VanishingOrderMismatch,
                  "closed-form fhat(0) disagrees with the t -> 0 extrapolation");
    out.limit = closed;
  }
  return out;
}

AsymptoticProfile compute_profile(const QuantumGraph& qg, int n_max) {
  AsymptoticProfile p;
  p.n_max = n_max;
  p.c = char_polynomial(qg.matching);
  p.degree = polynomial_degree(p.c);
  p.leading = p.c[p.degree];
  p.b = log_tail(p.c, p.degree, n_max);
  p.zero_modes = zero_modes(qg.matching, qg.lengths());
  const VanishingData v =
      vanishing_order_and_limit(qg.matching, qg.lengths(), p.zero_modes, std::arg(p.leading));
  p.vanishing_order = v.order;
  p.phi0 = v.limit;
  return p;
}

}  // namespace qgzeta
