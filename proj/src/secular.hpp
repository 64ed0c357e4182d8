#pragma once

// Secular functions of a quantum graph.
//
//   f(k)    = det(A + k B M(k)),  M(k) = [[-cot kL, csc kL], [csc kL, -cot kL]]
//   fhat(t) = det(A - t B H(t)),  H(t) = [[coth tL, -csch tL], [-csch tL, coth tL]]
//   det Z(k) = det(A V(k) + B W(k)) = f(k) * prod_e sin(k L_e)   (entire in k)
//
// L = diag(L_1..L_E); all blocks are E x E.

#include <span>

#include "graph.hpp"

namespace qgzeta {

struct SecularValue {
  cplx value;
  double log_abs = 0.0;
  double arg = 0.0;
  bool finite = true;
};

/// Throws PoleHit when k lies on {m pi / L_e} (relative distance 1e-13).
SecularValue secular_f(const GlobalMatching& m, std::span<const double> lengths, double k);

/// Complex-argument extension of f; finite=false on the pole lattice.
SecularValue secular_f_complex(const GlobalMatching& m, std::span<const double> lengths, cplx k);

/// fhat(t) for t >= 0; at t = 0 the limit det(A - B K0) is returned.
SecularValue secular_fhat(const GlobalMatching& m, std::span<const double> lengths, double t);

/// The matrix G(t) = A - t B H(t) whose determinant is fhat(t).
CMatrix hyperbolic_system(const GlobalMatching& m, std::span<const double> lengths, double t);

/// Z(k) acting on per-edge coefficients (a_e, b_e) of a cos kx + b sin kx.
CMatrix entire_matrix(const GlobalMatching& m, std::span<const double> lengths, double k);
SecularValue secular_entire(const GlobalMatching& m, std::span<const double> lengths, double k);

/// d/dt log|fhat(t)| = Re tr(G^{-1} G'). Throws SingularG when G(t) is singular.
double dlog_fhat_dt(const GlobalMatching& m, std::span<const double> lengths, double t);

/// d/dL_e log|fhat(t)|; edge ids are 1-based.
double dlog_fhat_dlength(const GlobalMatching& m, std::span<const double> lengths, int edge_id,
                         double t);

}  // namespace qgzeta
