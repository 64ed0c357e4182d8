#pragma once

// Brute-force references: the spectrum by scanning det Z(k), defining sums
// over it, and a catalog of graphs with closed-form spectra. Nothing here
// touches the zeta engine, so the two can check each other.

#include <functional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace qgzeta {

struct SpectralData {
  std::vector<double> roots;        // ascending, positive
  std::vector<int> multiplicities;
  double k_max = 0.0;
  bool complete = false;
  int zero_modes = 0;
  double total_length = 0.0;
  int edge_count = 0;
  double max_weyl_deviation = 0.0;  // max |N(k) - L k / pi| over the window
  int refinements = 0;

  /// Multiplicity-weighted number of roots, zero modes excluded.
  int level_count() const;
};

/// Eigenvalue square roots in (0, k_max]. Grid step pi/(8 L), sign changes
/// refined by bisection, touching (even multiplicity) zeros by minimizing the
/// smallest singular value of Z(k). Throws CompletenessFailure when the Weyl
/// certificate |N(k) - L k / pi| <= E + n0 + 2 fails after two x4 refinements.
SpectralData eigenvalues(const QuantumGraph& qg, double k_max);

struct DirectSum {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// sum' k_j^{-2s} plus the Weyl tail (L/pi) k_max^{1-2s} / (2s - 1); 1/2 < s < 1.
DirectSum direct_zeta(const SpectralData& spectrum, double s);

/// n0 + sum_j mult_j exp(-k_j^2 t); needs exp(-k_max^2 t) < 1e-14.
double direct_heat_trace(const SpectralData& spectrum, double t);

struct CutoffFit {
  double finite_part = 0.0;
  double leading = 0.0;   // coefficient of delta^-2
  double residual = 0.0;  // rms residual of the fit
};

/// Finite part of (1/2) sum_j k_j exp(-delta k_j) extrapolated to delta -> 0
/// from a fit in powers delta^-2 .. delta^2. Needs k_max * min(delta) >= 30.
CutoffFit cutoff_vacuum_energy(const SpectralData& spectrum, const std::vector<double>& deltas);

struct CatalogEntry {
  std::string name;
  QuantumGraph graph;
  std::function<double(int)> root;  // j-th distinct root, j = 1, 2, ...
  int multiplicity = 1;
  int zero_modes = 0;
  double det_prime = 0.0;
  double zeta_zero = 0.0;
  double vacuum_energy = 0.0;
};

/// Dirichlet, Neumann and mixed intervals and the cycle, all of length L.
std::vector<CatalogEntry> analytic_catalog(double length = 1.0);

struct SpacingStatistics {
  std::vector<double> spacings;     // unfolded with the Weyl mean L k / pi
  double ks_distance = 0.0;         // against the GOE Wigner surmise
  std::vector<double> bin_edges;
  std::vector<double> density;      // histogram, normalized
  std::vector<double> wigner;       // surmise density at bin centres
};

SpacingStatistics spacing_statistics(const SpectralData& spectrum, int levels, double bin_width = 0.1);

}  // namespace qgzeta
