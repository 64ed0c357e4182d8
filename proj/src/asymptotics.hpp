#pragma once

// Data controlling the analytic continuation of the zeta function:
//   p(t) = det(A - tB) = sum_j c_j t^j   (fhat(t) = p(t) + exponentially small)
//   log fhat(t) ~ N log t + log c_N + sum_n b_n t^{-n}
//   fhat(t) ~ Phi0 t^nu  as t -> 0, nu = 2 n0.

#include <span>
#include <vector>

#include "graph.hpp"

namespace qgzeta {

struct AsymptoticProfile {
  std::vector<cplx> c;   // c_0 .. c_{2E}
  int degree = 0;        // N
  cplx leading;          // c_N
  int zero_modes = 0;    // n0
  int vanishing_order = 0;  // nu
  double phi0 = 0.0;     // lim fhat(t)/t^nu, rotated by -arg(c_N)
  std::vector<cplx> b;   // b_1 .. b_{n_max}; b[0] is b_1
  int n_max = 8;

  /// Re b_n, zero beyond the stored range.
  double tail(int n) const { return n >= 1 && n <= static_cast<int>(b.size()) ? b[n - 1].real() : 0.0; }
};

/// Coefficients of det(A - tB) from its values on a circle |t| = r (discrete
/// Fourier inversion), refit-checked at real nodes.
std::vector<cplx> char_polynomial(const GlobalMatching& m);

/// Index of the highest coefficient above 1e-10 max|c|.
int polynomial_degree(std::span<const cplx> c);

/// b_1..b_{n_max} of log(p(t) / (c_N t^N)) = sum_n b_n t^{-n}.
std::vector<cplx> log_tail(std::span<const cplx> c, int degree, int n_max);

/// dim ker(A V0 + B W0) over linear edge solutions alpha + beta x.
int zero_modes(const GlobalMatching& m, std::span<const double> lengths);

struct VanishingData {
  int order = 0;   // nu
  double limit = 0.0;  // Phi0
  double extrapolation_spread = 0.0;
};

/// nu = 2 n0 and Phi0 by Richardson extrapolation in t^2; cross-checked
/// with det(A - B K0) when n0 = 0. fhat is real up to a constant phase, and
/// Phi0 is reported as the real part after rotating by -phase (pass arg c_N).
/// Throws VanishingOrderMismatch.
VanishingData vanishing_order_and_limit(const GlobalMatching& m, std::span<const double> lengths,
                                        int n0, double phase = 0.0);

AsymptoticProfile compute_profile(const QuantumGraph& qg, int n_max = 8);

}  // namespace qgzeta
