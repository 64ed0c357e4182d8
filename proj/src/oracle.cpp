#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asymptotics.hpp"
#include "error.hpp"
#include "secular.hpp"
#include "special.hpp"

namespace qgzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.38196601125010515;  // 2 - phi

class Scanner {
 public:
  explicit Scanner(const QuantumGraph& qg)
      : qg_(qg), norm_a_(qg.matching.a.norm()), norm_b_(qg.matching.b.norm()) {}

  void set_phase(double phase) { rotation_ = std::polar(1.0, -phase); }

  cplx raw(double k) const { return secular_entire(qg_.matching, qg_.lengths(), k).value; }
  double value(double k) const { return (raw(k) * rotation_).real(); }

  Eigen::VectorXd singular_values(double k) const {
    return Eigen::JacobiSVD<CMatrix>(entire_matrix(qg_.matching, qg_.lengths(), k)).singularValues();
  }
  // Z = A V + B W with |V| ~ 1 and |W| ~ k; Z can vanish entirely at a root.
  double scale(double k) const { return norm_a_ + std::abs(k) * norm_b_; }
  double sigma_ratio(double k) const {
    const auto sv = singular_values(k);
    return sv(sv.size() - 1) / scale(k);
  }
  int multiplicity(double k) const {
    const auto sv = singular_values(k);
    int m = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) < 1e-8 * scale(k)) ++m;
    return std::max(m, 1);
  }

  double bisect(double a, double fa, double b) const {
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = value(mid);
      if (fm == 0.0) return mid;
      if ((fm > 0) == (fa > 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  }

  template <class F>
  static double golden_min(double a, double b, F&& f, double tol) {
    double x1 = a + kGolden * (b - a);
    double x2 = b - kGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = a + kGolden * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = b - kGolden * (b - a);
        f2 = f(x2);
      }
    }
    return f1 < f2 ? x1 : x2;
  }

 private:
  const QuantumGraph& qg_;
  double norm_a_;
  double norm_b_;
  cplx rotation_ = 1.0;
};

struct Root {
  double k;
  int multiplicity;
};

std::vector<Root> scan(const Scanner& sc, double step, double k_max) {
  // Offset keeps grid points off rational multiples of pi / L.
  constexpr double offset = 0.31830988618379067;
  std::vector<double> ks;
  std::vector<double> hs;
  for (int i = 0;; ++i) {
    const double k = (i + offset) * step;
    ks.push_back(k);
    hs.push_back(sc.value(k));
    if (k > k_max) break;
  }

  std::vector<Root> roots;
  auto add = [&](double k) {
    if (k > 1e-9 && k <= k_max) roots.push_back({k, sc.multiplicity(k)});
  };

  const std::size_t n = ks.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (hs[i] == 0.0) {
      add(ks[i]);
      continue;
    }
    if (hs[i + 1] != 0.0 && (hs[i] > 0) != (hs[i + 1] > 0)) add(sc.bisect(ks[i], hs[i], ks[i + 1]));
  }

  // Zeros of even multiplicity (or close pairs) do not change sign on the grid.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double l = hs[i - 1], c = hs[i], r = hs[i + 1];
    if (l == 0.0 || c == 0.0 || r == 0.0) continue;
    if ((l > 0) != (c > 0) || (c > 0) != (r > 0)) continue;
    if (!(std::abs(c) < std::abs(l) && std::abs(c) < std::abs(r))) continue;

    const double a = ks[i - 1], b = ks[i + 1];
    const double kmin = Scanner::golden_min(a, b, [&](double k) { return std::abs(sc.value(k)); },
                                            1e-10 * std::max(1.0, b));
    const double hmin = sc.value(kmin);
    if (hmin != 0.0 && (hmin > 0) != (c > 0)) {
      add(sc.bisect(a, l, kmin));
      add(sc.bisect(kmin, hmin, b));
      continue;
    }
    if (std::abs(hmin) > 1e-6 * std::max(std::abs(l), std::abs(r))) continue;
    const double width = 1e-6 * std::max(1.0, kmin);
    const double kroot = Scanner::golden_min(kmin - width, kmin + width,
                                             [&](double k) { return sc.sigma_ratio(k); },
                                             1e-15 * std::max(1.0, kmin));
    if (sc.sigma_ratio(kroot) < 1e-8) add(kroot);
  }

  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.k < y.k; });
  std::vector<Root> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && r.k - merged.back().k <= 1e-9 * std::max(1.0, r.k)) {
      merged.back().multiplicity = std::max(merged.back().multiplicity, r.multiplicity);
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

double weyl_deviation(const std::vector<Root>& roots, int n0, double total, double k_max) {
  double worst = 0.0;
  int count = n0;
  for (const auto& r : roots) {
    const double weyl = total * r.k / kPi;
    worst = std::max(worst, std::abs(count - weyl));  // just below the root
    count += r.multiplicity;
    worst = std::max(worst, std::abs(count - weyl));
  }
  worst = std::max(worst, std::abs(count - total * k_max / kPi));
  return worst;
}

}  // namespace

int SpectralData::level_count() const {
  int n = 0;
  for (int m : multiplicities) n += m;
  return n;
}

SpectralData eigenvalues(const QuantumGraph& qg, double k_max) {
  if (!(k_max > 0.0)) throw Error(ErrorCode::DomainError, "k_max must be positive");
  SpectralData out;
  out.k_max = k_max;
  out.total_length = qg.graph.total_length();
  out.edge_count = qg.edge_count();
  out.zero_modes = zero_modes(qg.matching, qg.lengths());
  const double bound = out.edge_count + out.zero_modes + 2;

  Scanner sc(qg);
  {
    // Fix the overall phase of det Z from a well-conditioned sample.
    double best = -1.0;
    double phase = 0.0;
    for (int i = 1; i <= 16; ++i) {
      const cplx v = sc.raw(i * 0.7390851332151607 * kPi / out.total_length);
      if (std::abs(v) > best) {
        best = std::abs(v);
        phase = std::arg(v);
      }
    }
    sc.set_phase(phase);
  }

  double step = kPi / (8.0 * out.total_length);
  for (int refine = 0; refine <= 2; ++refine, step /= 4.0) {
    const auto roots = scan(sc, step, k_max);
    const double dev = weyl_deviation(roots, out.zero_modes, out.total_length, k_max);
    out.refinements = refine;
    out.max_weyl_deviation = dev;
    if (dev <= bound) {
      out.complete = true;
      for (const auto& r : roots) {
        out.roots.push_back(r.k);
        out.multiplicities.push_back(r.multiplicity);
      }
      return out;
    }
  }
  throw Error(ErrorCode::CompletenessFailure,
              "Weyl certificate failed (deviation " + std::to_string(out.max_weyl_deviation) +
                  " > " + std::to_string(bound) + ")");
}

DirectSum direct_zeta(const SpectralData& spectrum, double s) {
  if (!(s > 0.5 && s < 1.0))
    throw Error(ErrorCode::DivergentParameter, "direct zeta sum needs 1/2 < s < 1");
  DirectSum r;
  for (std::size_t j = 0; j < spectrum.roots.size(); ++j)
    r.value += spectrum.multiplicities[j] * std::pow(spectrum.roots[j], -2.0 * s);
  const double k = spectrum.k_max;
  r.value += spectrum.total_length / kPi * std::pow(k, 1.0 - 2.0 * s) / (2.0 * s - 1.0);
  r.error_estimate = (spectrum.edge_count + spectrum.zero_modes + 2) * std::pow(k, -2.0 * s);
  return r;
}

double direct_heat_trace(const SpectralData& spectrum, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::DomainError, "heat trace needs t > 0");
  if (std::exp(-spectrum.k_max * spectrum.k_max * t) >= 1e-14)
    throw Error(ErrorCode::TruncationTooLarge,
                "spectrum up to k = " + std::to_string(spectrum.k_max) + " is too short for t = " +
                    std::to_string(t));
  double acc = 0.0;
  // Smallest terms first.
  for (std::size_t j = spectrum.roots.size(); j-- > 0;)
    acc += spectrum.multiplicities[j] * std::exp(-spectrum.roots[j] * spectrum.roots[j] * t);
  return acc + spectrum.zero_modes;
}

CutoffFit cutoff_vacuum_energy(const SpectralData& spectrum, const std::vector<double>& deltas) {
  if (deltas.size() < 6) throw Error(ErrorCode::DomainError, "need at least 6 cutoff values");
  const double dmin = *std::min_element(deltas.begin(), deltas.end());
  const double dmax = *std::max_element(deltas.begin(), deltas.end());
  if (spectrum.k_max * dmin < 30.0)
    throw Error(ErrorCode::TruncationTooLarge, "k_max * delta_min must be at least 30");

  // delta^2 E(delta) = c2 + c1 delta + a delta^2 + d1 delta^3 + d2 delta^4
  std::vector<double> x, y;
  for (double d : deltas) {
    double e = 0.0;
    for (std::size_t j = spectrum.roots.size(); j-- > 0;)
      e += spectrum.multiplicities[j] * spectrum.roots[j] * std::exp(-d * spectrum.roots[j]);
    x.push_back(d / dmax);
    y.push_back(0.5 * e * d * d);
  }
  const auto c = polyfit(x, y, 4);
  CutoffFit fit;
  fit.finite_part = c[2] / (dmax * dmax);
  fit.leading = c[0];
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) p = p * x[i] + c[j];
    const double r = (p - y[i]) / (deltas[i] * deltas[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / x.size());
  if (fit.residual > 1e-6 * std::max(1.0, std::abs(fit.finite_part)))
    throw Error(ErrorCode::FitResidualTooLarge, "cutoff fit residual " + std::to_string(fit.residual));
  return fit;
}

std::vector<CatalogEntry> analytic_catalog(double length) {
  const double len = length;
  auto interval = [&](VertexCondition left, VertexCondition right) {
    auto g = MetricGraph::build({"a", "b"}, {{1, "a", "b", len}});
    return QuantumGraph::make(std::move(g), VertexConditionMap{{"a", left}, {"b", right}});
  };

  std::vector<CatalogEntry> out;
  out.push_back({"dirichlet_interval", interval(Dirichlet{}, Dirichlet{}),
                 [len](int j) { return j * kPi / len; }, 1, 0, 2.0 * len, -0.5,
                 -kPi / (24.0 * len)});
  out.push_back({"neumann_interval", interval(Neumann{}, Neumann{}),
                 [len](int j) { return j * kPi / len; }, 1, 1, 2.0 * len, -0.5,
                 -kPi / (24.0 * len)});
  out.push_back({"mixed_interval", interval(Dirichlet{}, Neumann{}),
                 [len](int j) { return (j - 0.5) * kPi / len; }, 1, 0, 2.0, 0.0,
                 kPi / (48.0 * len)});
  {
    auto g = MetricGraph::build({"v"}, {{1, "v", "v", len}});
    out.push_back({"cycle", QuantumGraph::make(std::move(g), VertexConditionMap{{"v", Kirchhoff{}}}),
                   [len](int j) { return 2.0 * j * kPi / len; }, 2, 1, len * len, -1.0,
                   -kPi / (6.0 * len)});
  }
  return out;
}

SpacingStatistics spacing_statistics(const SpectralData& spectrum, int levels, double bin_width) {
  std::vector<double> unfolded;
  for (std::size_t j = 0; j < spectrum.roots.size(); ++j)
    for (int m = 0; m < spectrum.multiplicities[j]; ++m)
      unfolded.push_back(spectrum.total_length * spectrum.roots[j] / kPi);
  if (static_cast<int>(unfolded.size()) < levels + 1)
    throw Error(ErrorCode::DomainError, "spectrum has fewer than " + std::to_string(levels + 1) +
                                            " levels");
  unfolded.resize(levels + 1);

  SpacingStatistics st;
  for (int j = 0; j < levels; ++j) st.spacings.push_back(unfolded[j + 1] - unfolded[j]);

  std::vector<double> sorted = st.spacings;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto wigner_cdf = [](double s) { return 1.0 - std::exp(-kPi * s * s / 4.0); };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = wigner_cdf(sorted[i]);
    st.ks_distance = std::max({st.ks_distance, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }

  const int bins = static_cast<int>(std::ceil(std::max(sorted.back(), 3.0) / bin_width));
  st.density.assign(bins, 0.0);
  for (int b = 0; b <= bins; ++b) st.bin_edges.push_back(b * bin_width);
  for (double s : sorted) st.density[std::min(bins - 1, static_cast<int>(s / bin_width))] += 1.0;
  for (int b = 0; b < bins; ++b) {
    st.density[b] /= n * bin_width;
    const double c = (b + 0.5) * bin_width;
    st.wigner.push_back(kPi * c / 2.0 * std::exp(-kPi * c * c / 4.0));
  }
  return st;
}

}  // namespace qgzeta
