#include "qot/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace qot;

namespace {

// Plain adaptive Simpson, used as an independent check on the panel rule.
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double b, double fa,
                double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = f(0.5 * (a + m));
  double rm = f(0.5 * (m + b));
  double left = simpson(f, a, m, fa, lm, fm);
  double right = simpson(f, m, b, fm, rm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(f, a, m, fa, lm, fm, left, tol / 2, depth - 1) +
         adaptive(f, m, b, fm, rm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(f, a, b, fa, fm, fb);
  return adaptive(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

TEST_CASE("density and tail are consistent") {
  // tail(t) = 2 (1 - CDF(t)) with CDF = (1 + tanh(pi t / 2)) / 2
  for (double t : {0.0, 0.3, 1.0, 2.5, 6.0}) {
    double cdf = 0.5 * (1.0 + std::tanh(M_PI * t / 2.0));
    CHECK(recovery_weight_tail(t) == doctest::Approx(2.0 * (1.0 - cdf)).epsilon(1e-12));
  }
  // numeric derivative of the CDF matches the density
  double t = 0.7, h = 1e-6;
  double num = (std::tanh(M_PI * (t + h) / 2) - std::tanh(M_PI * (t - h) / 2)) / (4 * h);
  CHECK(recovery_weight_density(t) == doctest::Approx(num).epsilon(1e-7));
}

TEST_CASE("gauss-legendre base rule integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(16, x, w);
  REQUIRE(x.size() == 16);
  double s0 = 0, s2 = 0, s30 = 0;
  for (int i = 0; i < 16; ++i) {
    s0 += w[i];
    s2 += w[i] * x[i] * x[i];
    s30 += w[i] * std::pow(x[i], 30);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // degree 30 < 2*16, still exact: integral of x^30 over [-1,1] is 2/31
  CHECK(s30 == doctest::Approx(2.0 / 31.0).epsilon(1e-12));
}

TEST_CASE("recovery weight rule: symmetry and normalization") {
  QuadratureRule rule = recovery_weight_rule(1e-10);
  size_t n = rule.nodes.size();
  REQUIRE(n % 2 == 0);
  for (size_t i = 0; i < n / 2; ++i) {
    // exact bitwise mirror
    CHECK(rule.nodes[i] == -rule.nodes[n - 1 - i]);
    CHECK(rule.weights[i] == rule.weights[n - 1 - i]);
    CHECK(rule.weights[i] > 0);
  }
  CHECK(std::abs(rule.residual()) < rule.tol);
  // truncation point covers the requested tail mass
  CHECK(recovery_weight_tail(rule.half_width) <= rule.tol / 2 + 1e-16);
}

TEST_CASE("recovery weight rule against adaptive simpson") {
  QuadratureRule rule = recovery_weight_rule(1e-10);
  double oracle = integrate(recovery_weight_density, -rule.half_width, rule.half_width, 1e-13);
  CHECK(rule.weight_sum() == doctest::Approx(oracle).epsilon(1e-11));
  // second moment of the full density is exactly 1/3
  double m2 = 0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    m2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
  CHECK(std::abs(m2 - 1.0 / 3.0) < 1e-8);
}

TEST_CASE("tighter tolerance widens the window") {
  QuadratureRule loose = recovery_weight_rule(1e-6);
  QuadratureRule tight = recovery_weight_rule(1e-12);
  CHECK(tight.half_width > loose.half_width);
  CHECK(std::abs(loose.residual()) < 1e-6);
  CHECK(std::abs(tight.residual()) < 1e-12);
}
