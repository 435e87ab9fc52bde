#include "qot/rng.hpp"
#include "qot/eig.hpp"

#include <doctest.h>

#include <cmath>

using namespace qot;

TEST_CASE("streams are reproducible and independent") {
  Rng a(42, 7), b(42, 7), c(42, 8);
  bool same = true, differ = false;
  for (int i = 0; i < 100; ++i) {
    uint64_t x = a.next_u64();
    same = same && (x == b.next_u64());
    differ = differ || (x != c.next_u64());
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("uniform range and crude moments") {
  Rng rng(1);
  double sum = 0, sumsq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
  CHECK(std::abs(sumsq / n - 1.0 / 3.0) < 0.01);
}

TEST_CASE("gaussian moments") {
  Rng rng(2);
  double sum = 0, sumsq = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    double g = rng.gaussian();
    sum += g;
    sumsq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sumsq / n - 1.0) < 0.03);
}

TEST_CASE("uniform_int covers its range") {
  Rng rng(3);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 5000; ++i) {
    int k = rng.uniform_int(5);
    REQUIRE(k >= 0);
    REQUIRE(k < 5);
    counts[k]++;
  }
  for (int k = 0; k < 5; ++k) CHECK(counts[k] > 800);
}

TEST_CASE("random state and density helpers") {
  Rng rng(4);
  auto psi = haar_state(rng, 6);
  double norm = 0;
  for (auto& z : psi) norm += std::norm(z);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));

  CMat pure = haar_pure_density(rng, 6);
  CHECK(trace(pure).real() == doctest::Approx(1.0));
  EigResult ep = herm_eig(pure);
  CHECK(ep.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(std::abs(ep.eigenvalues[1]) < 1e-12);

  CMat rho = random_density(rng, 5);
  CHECK(hermiticity_error(rho) < 1e-14);
  CHECK(trace(rho).real() == doctest::Approx(1.0));
  CHECK(lambda_min_herm(rho) > -1e-13);

  CMat h = random_hermitian(rng, 5);
  CHECK(hermiticity_error(h) < 1e-14);
  CMat t = random_traceless_hermitian(rng, 5);
  CHECK(std::abs(trace(t)) < 1e-13);
}
