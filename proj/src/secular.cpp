#include "secular.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "linalg.hpp"

namespace qgzeta {

namespace {

SecularValue from_logdet(const LogDet& d) {
  SecularValue v;
  v.value = to_value(d);
  v.log_abs = d.log_abs;
  v.arg = d.arg;
  return v;
}

// Entries of t H(t) for one edge plus their derivatives, x = tL.
//   p = t coth(tL),  q = -t csch(tL)
struct HypEntry {
  double p, q;
  double dp_dt, dq_dt;
  double dp_dl, dq_dl;
};

HypEntry hyp_entry(double t, double len) {
  const double x = t * len;
  HypEntry h{};
  const double x_coth = x < 1e-8 ? 1.0 + x * x / 3.0 : x / std::tanh(x);
  const double x_csch = x < 1e-8 ? 1.0 - x * x / 6.0 : x / std::sinh(x);
  h.p = x_coth / len;
  h.q = -x_csch / len;
  if (x < 0.05) {
    const double x2 = x * x;
    h.dp_dt = x * (2.0 / 3 + x2 * (-4.0 / 45 + x2 * (12.0 / 945 + x2 * (-8.0 / 4725 + x2 * 20.0 / 93555))));
    h.dq_dt = x * (1.0 / 3 + x2 * (-7.0 / 90 + x2 * (31.0 / 2520 + x2 * (-127.0 / 75600 + x2 * 73.0 / 342144))));
  } else {
    const double csch = 1.0 / std::sinh(x);
    const double coth = 1.0 / std::tanh(x);
    h.dp_dt = coth - x * csch * csch;
    h.dq_dt = x * csch * coth - csch;
  }
  h.dp_dl = -x_csch * x_csch / (len * len);
  h.dq_dl = x_csch * x_coth / (len * len);
  return h;
}

bool near_pole(double k, std::span<const double> lengths) {
  if (k == 0.0) return true;
  for (double len : lengths) {
    const double m = std::round(k * len / std::numbers::pi);
    if (m == 0.0) continue;
    const double pole = m * std::numbers::pi / len;
    if (std::abs(k - pole) <= 1e-13 * std::abs(pole)) return true;
  }
  return false;
}

// X = G^{-1} B with G = A - t B H(t).
CMatrix solve_against_b(const GlobalMatching& m, std::span<const double> lengths, double t) {
  const CMatrix g = hyperbolic_system(m, lengths, t);
  Eigen::PartialPivLU<CMatrix> lu(g);
  const auto diag = lu.matrixLU().diagonal();
  const double scale = g.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (!(std::abs(diag(i)) > 1e-300 * std::max(1.0, scale)))
      throw Error(ErrorCode::SingularG, "G(t) singular at t = " + std::to_string(t));
  return lu.solve(m.b);
}

}  // namespace

SecularValue secular_f(const GlobalMatching& m, std::span<const double> lengths, double k) {
  if (near_pole(k, lengths))
    throw Error(ErrorCode::PoleHit, "k = " + std::to_string(k) + " lies on the pole lattice");
  return secular_f_complex(m, lengths, cplx(k, 0.0));
}

SecularValue secular_f_complex(const GlobalMatching& m, std::span<const double> lengths, cplx k) {
  const int e = static_cast<int>(lengths.size());
  CMatrix blk = CMatrix::Zero(2 * e, 2 * e);
  for (int i = 0; i < e; ++i) {
    const cplx z = k * lengths[i];
    const cplx s = std::sin(z);
    if (std::abs(s) <= 1e-13 * std::max(1.0, std::abs(z))) {
      SecularValue v;
      v.finite = false;
      v.value = cplx(NAN, NAN);
      return v;
    }
    const cplx cot = std::cos(z) / s;
    const cplx csc = 1.0 / s;
    blk(i, i) = -k * cot;
    blk(e + i, e + i) = -k * cot;
    blk(i, e + i) = k * csc;
    blk(e + i, i) = k * csc;
  }
  return from_logdet(log_determinant<cplx>(m.a + m.b * blk));
}

CMatrix hyperbolic_system(const GlobalMatching& m, std::span<const double> lengths, double t) {
  const int e = static_cast<int>(lengths.size());
  CMatrix g = m.a;
  // G = A - B D with D = [[P, Q], [Q, P]] diagonal blocks, so column j of B
  // only feeds columns j and its partner endpoint.
  for (int i = 0; i < e; ++i) {
    const HypEntry h = hyp_entry(t, lengths[i]);
    g.col(i) -= h.p * m.b.col(i) + h.q * m.b.col(e + i);
    g.col(e + i) -= h.q * m.b.col(i) + h.p * m.b.col(e + i);
  }
  return g;
}

SecularValue secular_fhat(const GlobalMatching& m, std::span<const double> lengths, double t) {
  if (t < 0.0) throw Error(ErrorCode::DomainError, "fhat requires t >= 0");
  return from_logdet(log_determinant<cplx>(hyperbolic_system(m, lengths, t)));
}

CMatrix entire_matrix(const GlobalMatching& m, std::span<const double> lengths, double k) {
  const int e = static_cast<int>(lengths.size());
  const int n = 2 * e;
  CMatrix z = CMatrix::Zero(n, n);
  // Columns: a_e at i, b_e at e + i.
  //   phi  = V (a, b): rows i -> a_i; rows e+i -> cos a_i + sin b_i
  //   phi' = W (a, b): rows i -> k b_i; rows e+i -> k (sin a_i - cos b_i)
  for (int i = 0; i < e; ++i) {
    const double c = std::cos(k * lengths[i]);
    const double s = std::sin(k * lengths[i]);
    z.col(i) = m.a.col(i) + c * m.a.col(e + i) + (k * s) * m.b.col(e + i);
    z.col(e + i) = s * m.a.col(e + i) + k * m.b.col(i) - (k * c) * m.b.col(e + i);
  }
  return z;
}

SecularValue secular_entire(const GlobalMatching& m, std::span<const double> lengths, double k) {
  return from_logdet(log_determinant<cplx>(entire_matrix(m, lengths, k)));
}

double dlog_fhat_dt(const GlobalMatching& m, std::span<const double> lengths, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::DomainError, "dlog fhat/dt requires t > 0");
  const int e = static_cast<int>(lengths.size());
  const CMatrix x = solve_against_b(m, lengths, t);
  // G' = -B D'(t); tr(G^{-1} G') = -tr(X D').
  cplx tr = 0.0;
  for (int i = 0; i < e; ++i) {
    const HypEntry h = hyp_entry(t, lengths[i]);
    tr += h.dp_dt * (x(i, i) + x(e + i, e + i)) + h.dq_dt * (x(i, e + i) + x(e + i, i));
  }
  return -tr.real();
}

double dlog_fhat_dlength(const GlobalMatching& m, std::span<const double> lengths, int edge_id,
                         double t) {
  const int e = static_cast<int>(lengths.size());
  if (edge_id < 1 || edge_id > e)
    throw Error(ErrorCode::UnknownEdge, "no edge with id " + std::to_string(edge_id));
  if (!(t > 0.0)) throw Error(ErrorCode::DomainError, "dlog fhat/dL requires t > 0");
  const CMatrix x = solve_against_b(m, lengths, t);
  const int i = edge_id - 1;
  const HypEntry h = hyp_entry(t, lengths[i]);
  const cplx tr = h.dp_dl * (x(i, i) + x(e + i, e + i)) + h.dq_dl * (x(i, e + i) + x(e + i, i));
  return -tr.real();
}

}  // namespace qgzeta
