#pragma once

// Spectral zeta function of a quantum graph and the quantities derived from
// it. With Phi(t) = fhat(t) / t^nu (zero modes removed) and
// Ntilde = N - nu,
//
//   zeta(s) = zeta_R(2s) sum_e (L_e/pi)^{2s}
//           + sin(pi s)/pi * int_0^inf t^{-2s} d/dt log Phi(t) dt,   0 < s < 1.
//
// For s <= 0 the integral is split at t0; beyond t0 the large-t asymptotics
// Ntilde log t + sum_{n <= n_sub} b_n t^{-n} are subtracted from log Phi and
// integrated in closed form, which carries all poles of zeta.

#include <vector>

#include "asymptotics.hpp"
#include "graph.hpp"

namespace qgzeta {

struct EngineOptions {
  double t0 = 1.0;  // split point
  int n_sub = 8;    // asymptotic subtractions used for s <= 0
  int n_max = 8;    // b_n kept in the profile; bounds n_sub and heat order
};

enum class ZetaMethod { Strip, Continued };

/// Laurent data of zeta at a real point: zeta(s) = residue/(s - s0) + finite_part + O(s - s0).
struct ZetaResult {
  double s = 0.0;
  double finite_part = 0.0;
  double residue = 0.0;
  ZetaMethod method = ZetaMethod::Strip;
  double t0 = 0.0;
  int n_sub = 0;
  double quadrature_error = 0.0;
};

struct DeterminantResult {
  double value = 0.0;       // |det'(-Laplacian)|
  double log_value = 0.0;
  int sign = 1;             // sign of Phi0 / c_N after phase removal
  double zeta_prime_zero = 0.0;            // closed form
  double zeta_prime_zero_continued = 0.0;  // through the numerical continuation
};

struct ForceResult {
  int edge = 0;
  double dE_dL = 0.0;
  double force = 0.0;         // -dE/dL
  double closed_part = 0.0;   // pi / (24 L^2)
  double integral_part = 0.0;
};

struct VacuumReport {
  double energy = 0.0;          // finite part of zeta(-1/2) / 2
  double zeta_residue = 0.0;    // residue of zeta at -1/2, equals b_1 / (2 pi)
  double energy_residue = 0.0;  // zeta_residue / 2
  std::vector<ForceResult> forces;
};

struct HeatTerm {
  double power = 0.0;
  double coefficient = 0.0;
};

/// K(t) ~ leading t^{-1/2} + constant + sum_terms coefficient t^power.
struct HeatExpansion {
  double leading = 0.0;
  double constant = 0.0;
  std::vector<HeatTerm> terms;
  /// Coefficient of the first term beyond `terms` (order + 1).
  HeatTerm next_term;

  double evaluate(double t) const;
};

class ZetaEngine {
 public:
  explicit ZetaEngine(QuantumGraph qg, EngineOptions options = {});

  const QuantumGraph& graph() const { return qg_; }
  const AsymptoticProfile& profile() const { return profile_; }
  const EngineOptions& options() const { return options_; }

  /// 0 < s < 1. At s = 1/2 the Weyl pole is returned as a residue.
  ZetaResult zeta_strip(double s) const;
  /// s <= 0 with n_sub > -2s subtractions (n_sub <= n_max).
  ZetaResult zeta_continued(double s, int n_sub) const;
  ZetaResult zeta_continued(double s) const { return zeta_continued(s, options_.n_sub); }
  /// Dispatches on the sign of s.
  ZetaResult zeta(double s) const;

  /// -sum_e log(2 L_e) + log(c_N / Phi0).
  double zeta_prime_zero() const;
  /// The same derivative assembled from the numerical continuation.
  double zeta_prime_zero_continued() const;

  DeterminantResult spectral_determinant() const;
  VacuumReport vacuum_energy() const;
  ForceResult casimir_force(int edge_id) const;
  HeatExpansion heat_coefficients(int order) const;

 private:
  struct Node {
    double t;
    double w;
    double dlog_phi;  // d/dt log Phi(t)
    bool tail;        // t >= t0
  };

  double integral(double s, int n_sub, const std::vector<Node>& nodes) const;
  double small_t_part(double s) const;
  double beyond_cut(double s, int n_sub) const;
  ZetaResult assemble(double s, int n_sub, ZetaMethod method) const;

  QuantumGraph qg_;
  EngineOptions options_;
  AsymptoticProfile profile_;
  std::vector<cplx> long_tail_;  // b_n, n = 1..kLongTail
  double t_small_ = 0.0;
  double t_cut_ = 0.0;
  std::vector<double> small_fit_;  // Phi'/Phi / t as a polynomial in (t / t_small)^2
  std::vector<Node> nodes_;
  std::vector<Node> check_nodes_;
};

// Free-function forms.
ZetaResult zeta_strip(const QuantumGraph& qg, double s, EngineOptions options = {});
ZetaResult zeta_continued(const QuantumGraph& qg, double s, EngineOptions options = {});
DeterminantResult spectral_determinant(const QuantumGraph& qg, EngineOptions options = {});
VacuumReport vacuum_energy(const QuantumGraph& qg, EngineOptions options = {});
ForceResult casimir_force(const QuantumGraph& qg, int edge_id, EngineOptions options = {});
HeatExpansion heat_coefficients(const QuantumGraph& qg, int order, EngineOptions options = {});

}  // namespace qgzeta
