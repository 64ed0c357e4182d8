#include "special.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Dense>

#include "error.hpp"

namespace qgzeta {

namespace {

// Dirichlet eta via Borwein's algorithm 2, error ~ 3 / (3 + sqrt 8)^n.
double dirichlet_eta(double x) {
  constexpr int n = 40;
  double d[n + 1];
  double term = 1.0 / n;
  double sum = term;
  d[0] = n * sum;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1));
    sum += term;
    d[i] = n * sum;
  }
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * (d[k] - d[n]) / std::pow(k + 1.0, x);
  }
  return -acc / d[n];
}

}  // namespace

double riemann_zeta(double x) {
  if (x == 1.0) throw Error(ErrorCode::DomainError, "zeta_R has a pole at 1");
  if (x == 0.0) return kZetaAtZero;
  if (x < 0.0) {
    // Trivial zeros at negative even integers.
    if (std::floor(x / 2) == x / 2) return 0.0;
    const double one_minus = 1.0 - x;
    return std::pow(2.0, x) * std::pow(std::numbers::pi, x - 1.0) *
           std::sin(std::numbers::pi * x / 2.0) * std::tgamma(one_minus) * riemann_zeta(one_minus);
  }
  const double h = x - 1.0;
  if (std::abs(h) < 1e-4) {
    // Stieltjes constants gamma_1, gamma_2.
    constexpr double g1 = -0.0728158454836767248605863758749547;
    constexpr double g2 = -0.00969036319287231848453038603521;
    return 1.0 / h + kEulerGamma - g1 * h + 0.5 * g2 * h * h;
  }
  if (x > 60.0) return 1.0 + std::pow(2.0, -x) + std::pow(3.0, -x);
  return dirichlet_eta(x) / (-std::expm1((1.0 - x) * std::numbers::ln2));
}

const GaussRule& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

std::vector<double> polyfit(std::span<const double> x, std::span<const double> y, int degree) {
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd v(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double pw = 1.0;
    for (int j = 0; j <= degree; ++j) {
      v(i, j) = pw;
      pw *= x[i];
    }
    rhs(i) = y[i];
  }
  const Eigen::VectorXd c = v.colPivHouseholderQr().solve(rhs);
  return {c.data(), c.data() + c.size()};
}

}  // namespace qgzeta
