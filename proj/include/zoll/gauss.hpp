// zollgeo: Gauss-Legendre nodes and weights on [-1,1].

// Nodes are the roots of the Legendre polynomial P_n, found by Newton from
// the Chebyshev initial guess; weights w_i = 2/((1-x_i^2) P_n'(x_i)^2).
// Node sets are cached per order since callers reuse a handful of orders.

#ifndef ZOLL_GAUSS_HPP_
#define ZOLL_GAUSS_HPP_

// C++ headers
#include <cmath>          // cos, abs
#include <map>            // map
#include <mutex>          // mutex, lock_guard
#include <utility>        // pair
#include <vector>         // vector

namespace zoll {

//----------------------------------------------------------------------------

struct GaussRule {
  std::vector<double> nodes;    // ascending in (-1,1)
  std::vector<double> weights;  // positive, sum 2
};

// Returns the n-point Gauss-Legendre rule on [-1,1] (cached, thread-safe).
inline const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846264338327950288;
  for (int i = 0; i < n; ++i) {
    // Chebyshev guess, then Newton on P_n via the three-term recurrence.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;  // store ascending
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  auto res = cache.emplace(n, std::move(rule));
  return res.first->second;
}

// integral_a^b f(x) dx by a single n-point Gauss-Legendre panel.
template <typename F>
double gauss_panel(F&& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

// integral_a^b f(x) dx by `panels` equal Gauss-Legendre panels of order n.
template <typename F>
double gauss_composite(F&& f, double a, double b, int n, int panels) {
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    double pa = a + (b - a) * p / panels;
    double pb = a + (b - a) * (p + 1) / panels;
    sum += gauss_panel(f, pa, pb, n);
  }
  return sum;
}

}  // namespace zoll

#endif  // ZOLL_GAUSS_HPP_
