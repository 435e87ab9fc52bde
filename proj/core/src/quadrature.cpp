#include "qot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qot {

double recovery_weight_density(double t) {
  const double pi = 3.14159265358979323846;
  return pi / (2.0 * (std::cosh(pi * t) + 1.0));
}

double recovery_weight_tail(double t) {
  const double pi = 3.14159265358979323846;
  return 2.0 / (std::exp(pi * t) + 1.0);
}

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  const double pi = 3.14159265358979323846;
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence: (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[m - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[m - 1 - i] = w;
  }
}

double QuadratureRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double QuadratureRule::residual() const { return 1.0 - weight_sum(); }

namespace {

QuadratureRule build(double tol, double half_width, int panels) {
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(16, gl_nodes, gl_weights);

  QuadratureRule rule;
  rule.tol = tol;
  rule.half_width = half_width;
  rule.panels = panels;
  const double h = half_width / panels;
  // lay panels over [0, T] and mirror them, so the node set is exactly
  // symmetric in floating point
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (size_t k = 0; k < gl_nodes.size(); ++k) {
      const double t = a + 0.5 * h * (gl_nodes[k] + 1.0);
      const double w = 0.5 * h * gl_weights[k] * recovery_weight_density(t);
      rule.nodes.push_back(t);
      rule.weights.push_back(w);
      rule.nodes.push_back(-t);
      rule.weights.push_back(w);
    }
  }
  // ascending node order; the mirrored values stay exact
  std::vector<size_t> order(rule.nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t i, size_t j) { return rule.nodes[i] < rule.nodes[j]; });
  QuadratureRule sorted = rule;
  for (size_t i = 0; i < order.size(); ++i) {
    sorted.nodes[i] = rule.nodes[order[i]];
    sorted.weights[i] = rule.weights[order[i]];
  }
  return sorted;
}

}  // namespace

QuadratureRule recovery_weight_rule(double tol) {
  if (tol <= 0.0 || tol >= 1.0)
    throw std::invalid_argument("recovery_weight_rule: tolerance must lie in (0, 1)");
  // two-sided tail 2 e^{-pi T} <= tol / 2
  const double pi = 3.14159265358979323846;
  const double half_width = std::log(4.0 / tol) / pi;

  int panels = 2;
  QuadratureRule rule = build(tol, half_width, panels);
  double prev = rule.weight_sum();
  for (int iter = 0; iter < 12; ++iter) {
    panels *= 2;
    QuadratureRule next = build(tol, half_width, panels);
    const double cur = next.weight_sum();
    rule = next;
    if (std::abs(cur - prev) < 0.5 * tol) break;
    prev = cur;
  }
  return rule;
}

}  // namespace qot
