#pragma once

#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace qgzeta {

/// Riemann zeta for real x != 1: Borwein-accelerated alternating (eta)
/// series for x > 0, functional equation for x < 0.
double riemann_zeta(double x);

inline constexpr double kZetaAtZero = -0.5;
inline constexpr double kZetaAtMinusOne = -1.0 / 12.0;
/// zeta_R'(0) = -log(2 pi) / 2.
inline constexpr double kZetaPrimeAtZero = -0.91893853320467274178;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// Least-squares polynomial fit; returns coefficients in increasing degree.
std::vector<double> polyfit(std::span<const double> x, std::span<const double> y, int degree);

}  // namespace qgzeta
