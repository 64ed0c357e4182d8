#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace qgzeta {

/// Determinant as log-magnitude plus phase, so that large determinants
/// (f-hat grows like t^N) never overflow.
struct LogDet {
  double log_abs = -INFINITY;
  double arg = 0.0;  // principal value in (-pi, pi]
  bool zero = true;
};

inline double wrap_phase(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

/// Gaussian elimination with partial pivoting; works in the scalar type of
/// the argument (complex<double> or complex<long double>).
template <class Scalar>
LogDet log_determinant(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m) {
  using std::abs;
  using std::arg;
  using std::log;
  LogDet r;
  const Eigen::Index n = m.rows();
  long double log_abs = 0.0L;
  long double phase = 0.0L;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    auto best = abs(m(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const auto v = abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) return r;
    if (piv != k) {
      m.row(k).swap(m.row(piv));
      phase += std::numbers::pi_v<long double>;
    }
    const Scalar pivot = m(k, k);
    log_abs += static_cast<long double>(log(abs(pivot)));
    phase += static_cast<long double>(arg(pivot));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar f = m(i, k) / pivot;
      if (f == Scalar(0)) continue;
      m.row(i).tail(n - k - 1) -= f * m.row(k).tail(n - k - 1);
    }
  }
  r.zero = false;
  r.log_abs = static_cast<double>(log_abs);
  r.arg = wrap_phase(static_cast<double>(std::fmod(phase, 2.0L * std::numbers::pi_v<long double>)));
  return r;
}

inline std::complex<double> to_value(const LogDet& d) {
  if (d.zero) return {0.0, 0.0};
  return std::polar(std::exp(d.log_abs), d.arg);
}

}  // namespace qgzeta
