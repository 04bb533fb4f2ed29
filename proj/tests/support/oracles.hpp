#pragma once

// Brute-force reference implementations used to cross-check the library.
// Written independently of core/: plain index loops, no shared helpers.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline double mae(const std::vector<double>& y, const std::vector<double>& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); i++) total = total + std::fabs(y[i] - p[i]);
  return total / y.size();
}

inline double r2(const std::vector<double>& y, const std::vector<double>& p) {
  double ybar = 0.0;
  for (std::size_t i = 0; i < y.size(); i++) ybar = ybar + y[i];
  ybar = ybar / y.size();
  double res = 0.0;
  double tot = 0.0;
  for (std::size_t i = 0; i < y.size(); i++) {
    res = res + (y[i] - p[i]) * (y[i] - p[i]);
    tot = tot + (y[i] - ybar) * (y[i] - ybar);
  }
  return 1.0 - res / tot;
}

inline double smape_pct(const std::vector<double>& y, const std::vector<double>& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); i++) {
    const double den = (std::fabs(y[i]) + std::fabs(p[i])) / 2.0 + 1e-8;
    total = total + std::fabs(y[i] - p[i]) / den;
  }
  return 100.0 * total / y.size();
}

/// Compares on the integer lattice of 0.05 mm steps.
inline double sr(const std::vector<double>& truth, const std::vector<double>& pred, double eps) {
  std::size_t hits = 0;
  const long e = std::lround(eps * 20.0);
  for (std::size_t i = 0; i < truth.size(); i++) {
    const long d = std::labs(std::lround(pred[i] * 20.0) - std::lround(truth[i] * 20.0));
    if (d <= e) hits++;
  }
  return static_cast<double>(hits) / truth.size();
}

inline double sample_sd(const std::vector<double>& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); i++) m = m + v[i];
  m = m / v.size();
  double ss = 0.0;
  for (std::size_t i = 0; i < v.size(); i++) ss = ss + (v[i] - m) * (v[i] - m);
  return std::sqrt(ss / (v.size() - 1));
}

inline double uniformity(const std::vector<double>& means) {
  double m = 0.0;
  for (std::size_t i = 0; i < means.size(); i++) m = m + means[i];
  m = m / means.size();
  return 1.0 / (1.0 + sample_sd(means) / std::fabs(m));
}

/// Centered average over the neighbours that exist.
inline std::vector<double> smooth(const std::vector<double>& v, int window) {
  const int n = static_cast<int>(v.size());
  const int h = window / 2;
  std::vector<double> out(v.size());
  for (int i = 0; i < n; i++) {
    double s = 0.0;
    int c = 0;
    for (int j = i - h; j <= i + h; j++) {
      if (j < 0 || j >= n) continue;
      s = s + v[j];
      c++;
    }
    out[i] = s / c;
  }
  return out;
}

inline double r_spatial(const std::vector<double>& dist, const std::vector<double>& depth, int window) {
  return 0.5 * (sample_sd(smooth(dist, window)) + sample_sd(smooth(depth, window)));
}

inline double r_light(double mae_o, double mae_c, double i_o, double i_c) {
  const double a = std::fabs(i_c / i_o - 1.0);
  const double b = std::fabs(mae_c / mae_o - 1.0);
  return a / (a + b);
}

/// trials[g][r]: value of trial r in group g.
inline double rep(const std::vector<std::vector<double>>& trials) {
  double total = 0.0;
  for (std::size_t g = 0; g < trials.size(); g++) total = total + sample_sd(trials[g]);
  return total / trials.size();
}

}  // namespace oracle
