#pragma once
// Deterministic quadrature for the probability density
//   p(t) = pi / (2 (cosh(pi t) + 1)),  t in R,
// which weights the rotated recovery-map integrand.  The density has CDF
// (1 + tanh(pi t / 2))/2, so the two-sided tail mass beyond T is
// 2/(e^{pi T}+1) <= 2 e^{-pi T}.  The rule truncates at T with
// 2 e^{-pi T} <= tol/2 and lays composite 16-point Gauss-Legendre panels
// over [-T, T], doubling the panel count until the total weight (the
// integral of the constant 1) moves by less than tol/2.

#include <vector>

namespace qot {

struct QuadratureRule {
  std::vector<double> nodes;    // symmetric about 0
  std::vector<double> weights;  // strictly positive
  double tol = 0.0;
  double half_width = 0.0;      // T
  int panels = 0;

  double weight_sum() const;
  // 1 - weight_sum(): truncation plus panel error, <= tol by construction
  double residual() const;
};

QuadratureRule recovery_weight_rule(double tol);

// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1]
// (computed by Newton iteration on the Legendre polynomial; deterministic).
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

// Density and tail helpers, exposed for tests.
double recovery_weight_density(double t);
double recovery_weight_tail(double t);  // mass of [-t, t]^c

}  // namespace qot
