// Acceptance suite: one PASS/FAIL line per criterion. Criterion 13 is
// informational and does not affect the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "../support.hpp"
#include "asymptotics.hpp"
#include "oracle.hpp"
#include "secular.hpp"
#include "special.hpp"
#include "zeta_engine.hpp"

using namespace qgzeta;
using namespace qgzeta::testing;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Check spectra() {
  Check c;
  for (const auto& entry : analytic_catalog(1.0)) {
    if (entry.name == "neumann_interval") continue;
    const int jmax = 20;
    const double kmax = entry.root(jmax) + 0.5 * (entry.root(jmax + 1) - entry.root(jmax));
    const auto sp = eigenvalues(entry.graph, kmax);
    c.expect(static_cast<int>(sp.roots.size()) == jmax, entry.name + " root count " + std::to_string(sp.roots.size()));
    for (int j = 1; j <= std::min<int>(jmax, sp.roots.size()); ++j) {
      const double err = std::abs(sp.roots[j - 1] - entry.root(j));
      c.expect(err < 1e-10, entry.name + fmt(" root %g error %.3g", j, err));
      c.expect(sp.multiplicities[j - 1] == entry.multiplicity, entry.name + fmt(" multiplicity at root %g", j));
    }
  }
  return c;
}

Check star_secular() {
  Check c;
  const auto qg = kirchhoff_star();
  const auto sp = eigenvalues(qg, 100.0);
  const auto lengths = star_lengths();
  double worst = 0.0;
  for (double k : sp.roots) {
    double sum = 0.0;
    for (double l : lengths) sum += std::tan(k * l);
    worst = std::max(worst, std::abs(sum));
  }
  c.expect(sp.roots.size() > 50, "too few roots");
  c.expect(worst < 1e-8, fmt("max |sum tan| = %.3g", worst));
  c.detail += fmt("%g roots, max |sum tan kL| = %.3g", sp.roots.size(), worst);
  return c;
}

Check weyl() {
  Check c;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto qg = random_graph(1 + i % 8, 1000 + i);
    const auto sp = eigenvalues(qg, 150.0 * kPi / qg.graph.total_length());
    const double bound = qg.edge_count() + sp.zero_modes + 2;
    c.expect(sp.complete && sp.max_weyl_deviation <= bound, fmt("graph %g deviation %.3g", i, sp.max_weyl_deviation));
    worst = std::max(worst, sp.max_weyl_deviation - bound);
  }
  c.detail += fmt("max(deviation - bound) = %.3g", worst);
  return c;
}

Check determinants() {
  Check c;
  for (double len : {0.7, 1.0, 2.3}) {
    for (const auto& entry : analytic_catalog(len)) {
      const double got = spectral_determinant(entry.graph).value;
      const double err = rel(got, entry.det_prime);
      c.expect(err < 1e-8, entry.name + fmt(" L=%g det' rel err %.3g", len, err));
    }
  }
  return c;
}

Check strip() {
  Check c;
  std::vector<QuantumGraph> graphs{kirchhoff_star(), random_graph(5, 77)};
  for (const auto& qg : graphs) {
    const double kmax = 1e4 * kPi / qg.graph.total_length();
    const auto sp = eigenvalues(qg, kmax);
    const double direct = direct_zeta(sp, 0.75).value;
    const double engine = zeta_strip(qg, 0.75).finite_part;
    const double err = rel(engine, direct);
    c.expect(err < 1e-4, fmt("engine %.12g direct %.12g rel %.3g", engine, direct, err));
    c.detail += fmt(" rel %.3g;", err);
  }
  return c;
}

Check continuation() {
  Check c;
  std::vector<QuantumGraph> graphs{kirchhoff_star(), delta_star(1.0), random_graph(5, 77), random_graph(7, 91)};
  double worst = 0.0;
  for (const auto& qg : graphs) {
    double ref[3] = {0, 0, 0};
    bool first = true;
    for (double t0 : {0.5, 1.0, 2.0}) {
      for (int n_sub : {4, 6, 8}) {
        EngineOptions opt;
        opt.t0 = t0;
        opt.n_sub = n_sub;
        const ZetaEngine eng(qg, opt);
        const double v[3] = {eng.zeta_continued(0.0).finite_part, eng.zeta_prime_zero_continued(),
                             eng.vacuum_energy().energy};
        if (first) {
          std::copy(v, v + 3, ref);
          first = false;
          // The closed form of zeta'(0) must agree with the continued one as well.
          const double d = std::abs(eng.zeta_prime_zero() - v[1]);
          worst = std::max(worst, d);
          c.expect(d < 1e-9, fmt("closed vs continued zeta'(0) %.3g", d));
        }
        for (int q = 0; q < 3; ++q) {
          const double d = std::abs(v[q] - ref[q]);
          worst = std::max(worst, d);
          c.expect(d < 1e-9, fmt("quantity %g changed by %.3g at t0=%g", q, d, t0) + " n_sub=" + std::to_string(n_sub));
        }
      }
    }
  }
  c.detail += fmt("max change %.3g", worst);
  return c;
}

Check identities() {
  Check c;
  std::mt19937_64 rng(4242);
  double worst_f = 0.0, worst_z = 0.0;
  for (int g = 0; g < 5; ++g) {
    const auto qg = random_graph(2 + g, 500 + g);
    const auto& m = qg.matching;
    const auto lengths = qg.lengths();
    std::uniform_real_distribution<double> tdist(0.05, 5.0);
    for (int i = 0; i < 20; ++i) {
      const double t = tdist(rng);
      const cplx a = secular_fhat(m, lengths, t).value;
      const cplx b = secular_f_complex(m, lengths, cplx(0.0, t)).value;
      const double err = std::abs(a - b) / std::abs(a);
      worst_f = std::max(worst_f, err);
      c.expect(err < 1e-12, fmt("fhat(t) vs f(it) rel %.3g at t=%g", err, t));
    }
    std::uniform_real_distribution<double> kdist(0.1, 30.0);
    for (int i = 0; i < 20; ++i) {
      const double k = kdist(rng);
      const cplx z = secular_entire(m, lengths, k).value;
      cplx f = secular_f(m, lengths, k).value;
      for (double l : lengths) f *= std::sin(k * l);
      const double err = std::abs(z - f) / std::abs(z);
      worst_z = std::max(worst_z, err);
      c.expect(err < 1e-10, fmt("det Z vs f prod sin rel %.3g at k=%g", err, k));
    }
  }
  c.detail += fmt("max rel: fhat %.3g, det Z %.3g", worst_f, worst_z);
  return c;
}

Check heat() {
  Check c;
  std::vector<QuantumGraph> graphs{kirchhoff_star(), delta_star(1.0)};
  for (const auto& qg : graphs) {
    const auto hx = heat_coefficients(qg, 4);
    const auto prof = compute_profile(qg);
    const double expected_constant = 0.5 * (prof.degree - qg.edge_count());
    c.expect(prof.vanishing_order == 2 * prof.zero_modes, "nu != 2 n0");
    c.expect(std::abs(hx.constant - expected_constant) < 1e-12,
             fmt("constant %.15g expected %.15g", hx.constant, expected_constant));
    const auto sp = eigenvalues(qg, 120.0);
    for (double t : {0.005, 0.01, 0.02}) {
      const double direct = direct_heat_trace(sp, t);
      const double series = hx.evaluate(t);
      const double bound = 5.0 * std::abs(hx.next_term.coefficient) * std::pow(t, hx.next_term.power);
      const double tol = std::max(bound, 1e-9);
      const double err = std::abs(series - direct);
      c.expect(err <= tol, fmt("t=%g |series - direct| = %.3g > %.3g", t, err, tol));
      c.detail += fmt(" t=%g err %.2g tol %.2g;", t, err, tol);
    }
  }
  return c;
}

Check b_vanishing() {
  Check c;
  std::vector<QuantumGraph> plain{interval(1.3, Dirichlet{}, Neumann{}), kirchhoff_star(),
                                  star(star_lengths(), Kirchhoff{}, Dirichlet{}), complete_graph(4, 3)};
  for (int i = 0; i < 6; ++i) plain.push_back(random_graph(2 + i, 3000 + i, false));
  for (const auto& qg : plain) {
    const auto prof = compute_profile(qg, 8);
    for (int n = 1; n <= 8; ++n) c.expect(std::abs(prof.b[n - 1]) < 1e-10, fmt("b_%g = %.3g", n, std::abs(prof.b[n - 1])));
    c.expect(std::abs(vacuum_energy(qg).zeta_residue) < 1e-10, "nonzero residue at -1/2");
  }

  const auto qg = delta_star(1.0);
  const auto prof = compute_profile(qg, 8);
  const double b1 = prof.tail(1);
  // Large-t fit of log fhat - N log t - log c_N in powers of 1/t.
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    const double t = 20.0 * std::pow(10.0, i / 39.0);
    const auto v = secular_fhat(qg.matching, qg.lengths(), t);
    x.push_back(1.0 / t);
    y.push_back(v.log_abs - prof.degree * std::log(t) - std::log(std::abs(prof.leading)));
  }
  const auto fit = polyfit(x, y, 6);
  c.expect(rel(fit[1], b1) < 1e-6, fmt("b1 %.15g vs fit %.15g", b1, fit[1]));
  c.expect(std::abs(b1 - 1.0 / 3.0) < 1e-12, fmt("b1 %.15g vs 1/3", b1));
  const double residue = vacuum_energy(qg).zeta_residue;
  c.expect(std::abs(residue - b1 / (2 * kPi)) < 1e-9, fmt("residue %.15g vs b1/(2pi) %.15g", residue, b1 / (2 * kPi)));
  c.detail += fmt("b1 = %.15g, fit = %.15g, residue = %.15g", b1, fit[1], residue);
  return c;
}

Check forces() {
  Check c;
  const auto qg = kirchhoff_star();
  const auto lengths = star_lengths();
  for (int e = 1; e <= 3; ++e) {
    const auto f = casimir_force(qg, e);
    const double le = lengths[e - 1];
    const double h = 1e-4 * le;
    auto plus = lengths, minus = lengths;
    plus[e - 1] += h;
    minus[e - 1] -= h;
    const double fd = (vacuum_energy(with_lengths(qg, plus)).energy - vacuum_energy(with_lengths(qg, minus)).energy) / (2 * h);
    const double err = rel(f.dE_dL, fd);
    c.expect(err < 1e-5, fmt("edge %g dE/dL %.12g vs FD %.12g", e, f.dE_dL, fd));
    c.expect(f.closed_part == kPi / (24.0 * le * le), fmt("edge %g closed part %.17g", e, f.closed_part));
    c.expect(f.force == -f.dE_dL, "force sign");
    c.detail += fmt(" edge %g rel %.2g;", e, err);
  }
  return c;
}

Check cutoff() {
  Check c;
  std::vector<QuantumGraph> graphs{interval(1.0, Dirichlet{}, Dirichlet{}), kirchhoff_star()};
  std::vector<double> deltas;
  for (int i = 0; i < 12; ++i) deltas.push_back(0.02 * std::pow(4.0, i / 11.0));
  for (const auto& qg : graphs) {
    const auto sp = eigenvalues(qg, 3000.0);
    const auto fit = cutoff_vacuum_energy(sp, deltas);
    const double ec = vacuum_energy(qg).energy;
    c.expect(std::abs(fit.finite_part - ec) < 1e-3, fmt("cutoff %.9g vs continuation %.9g", fit.finite_part, ec));
    c.detail += fmt(" cutoff %.9g continuation %.9g;", fit.finite_part, ec);
  }
  c.expect(std::abs(vacuum_energy(graphs[0]).energy + kPi / 24.0) < 1e-9, "Dirichlet interval E_c != -pi/24");
  return c;
}

Check structural() {
  Check c;
  const auto base = kirchhoff_star();
  const auto lengths = star_lengths();

  // Split edge 2 with a degree-2 Kirchhoff vertex.
  const double cut = 0.37 * lengths[1];
  const auto split = QuantumGraph::make(
      MetricGraph::build({"c", "t1", "t2", "t3", "m"}, {{1, "c", "t1", lengths[0]},
                                                       {2, "c", "m", cut},
                                                       {3, "c", "t3", lengths[2]},
                                                       {4, "m", "t2", lengths[1] - cut}}),
      VertexConditionMap{{"c", Kirchhoff{}}, {"m", Kirchhoff{}}, {"t1", Neumann{}}, {"t2", Neumann{}}, {"t3", Neumann{}}});
  const auto a = eigenvalues(base, 60.0);
  const auto b = eigenvalues(split, 60.0);
  c.expect(a.roots.size() == b.roots.size(), "dummy vertex changed the root count");
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.roots.size(), b.roots.size()); ++i) worst = std::max(worst, std::abs(a.roots[i] - b.roots[i]));
  c.expect(worst < 1e-8, fmt("dummy vertex root change %.3g", worst));
  const double da = spectral_determinant(base).value, db = spectral_determinant(split).value;
  c.expect(rel(db, da) < 1e-7, fmt("dummy vertex det' %.15g vs %.15g", db, da));
  const double ea = vacuum_energy(base).energy, eb = vacuum_energy(split).energy;
  c.expect(std::abs(ea - eb) < 1e-6, fmt("dummy vertex E_c %.15g vs %.15g", eb, ea));

  const double sigma = 1.7;
  const auto big = scaled(base, sigma);
  const auto s = eigenvalues(big, 60.0 / sigma);
  double worst_scale = 0.0;
  c.expect(s.roots.size() == a.roots.size(), "scaling changed the root count");
  for (std::size_t i = 0; i < std::min(a.roots.size(), s.roots.size()); ++i)
    worst_scale = std::max(worst_scale, std::abs(s.roots[i] - a.roots[i] / sigma));
  c.expect(worst_scale < 1e-9, fmt("scaled roots off by %.3g", worst_scale));
  const double z0 = ZetaEngine(base).zeta(0.0).finite_part;
  const double expect = da * std::pow(sigma, -2.0 * z0);
  const double ds = spectral_determinant(big).value;
  c.expect(rel(ds, expect) < 1e-6, fmt("scaled det' %.15g vs %.15g", ds, expect));
  c.detail += fmt("roots %.2g, scaled roots %.2g, det' rel %.2g", worst, worst_scale, rel(ds, expect));
  return c;
}

Check spacings() {
  Check c;
  const auto qg = complete_graph(5, 5);
  const int levels = 2000;
  const auto sp = eigenvalues(qg, (levels + 40) * kPi / qg.graph.total_length());
  const auto st = spacing_statistics(sp, levels);
  c.expect(st.ks_distance < 0.08, fmt("KS distance %.4g", st.ks_distance));
  c.detail += fmt("KS distance %.4g over %g spacings", st.ks_distance, st.spacings.size());
  return c;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    std::function<Check()> run;
    bool gating;
  };
  const std::vector<Item> items{
      {1, "closed-form spectra", spectra, true},
      {2, "star secular equation", star_secular, true},
      {3, "Weyl certificate on random graphs", weyl, true},
      {4, "catalog determinants", determinants, true},
      {5, "strip cross-validation", strip, true},
      {6, "continuation invariances", continuation, true},
      {7, "secular identities", identities, true},
      {8, "heat trace expansion", heat, true},
      {9, "b_n vanishing and delta star residue", b_vanishing, true},
      {10, "force consistency", forces, true},
      {11, "cutoff vacuum energy", cutoff, true},
      {12, "structural invariances", structural, true},
      {13, "spacing statistics (informational)", spacings, false},
  };
  int failures = 0;
  for (const auto& item : items) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = item.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%.1fs) %s\n", result.ok ? "PASS" : "FAIL", item.id, item.name, secs,
                result.detail.c_str());
    std::fflush(stdout);
    if (!result.ok && item.gating) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
