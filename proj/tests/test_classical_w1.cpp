#include "qot/classical_w1.hpp"
#include "qot/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace qot;

namespace {

std::vector<double> random_dist(Rng& rng, int size, int support) {
  std::vector<double> p(size, 0.0);
  double total = 0.0;
  for (int k = 0; k < support; ++k) {
    const int i = rng.uniform_int(size);
    const double w = -std::log(1.0 - rng.uniform());
    p[i] += w;
    total += w;
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace

TEST_CASE("hamming distance") {
  CHECK(hamming_distance(0, 0, 2, 3) == 0);
  CHECK(hamming_distance(0, 7, 2, 3) == 3);
  CHECK(hamming_distance(1, 3, 2, 3) == 1);
  CHECK(hamming_distance(0, 8, 3, 2) == 2);  // base-3 strings 00 vs 22
  CHECK(hamming_distance(0, 6, 3, 2) == 1);  // 00 vs 20
}

TEST_CASE("identical distributions cost nothing") {
  std::vector<double> p = {0.25, 0.25, 0.25, 0.25};
  CHECK(classical_w1_hamming(p, p, 2, 2) == 0.0);
  CHECK(classical_w1_hamming_bruteforce(p, p, 2, 2) == 0.0);
}

TEST_CASE("single site reduces to total variation") {
  std::vector<double> p = {0.7, 0.3}, q = {0.4, 0.6};
  CHECK(classical_w1_hamming(p, q, 2, 1) == doctest::Approx(0.3));
  std::vector<double> pp = {1, 0}, qq = {0, 1};
  CHECK(classical_w1_hamming(pp, qq, 2, 1) == doctest::Approx(1.0));
}

TEST_CASE("point masses pay the hamming distance") {
  std::vector<double> p(4, 0.0), q(4, 0.0);
  p[0] = 1.0;  // 00
  q[3] = 1.0;  // 11
  CHECK(classical_w1_hamming(p, q, 2, 2) == doctest::Approx(2.0));
  std::vector<double> p3(8, 0.0), q3(8, 0.0);
  p3[0] = 1.0;
  q3[5] = 1.0;  // 101: distance 2 from 000
  CHECK(classical_w1_hamming(p3, q3, 2, 3) == doctest::Approx(2.0));
}

TEST_CASE("splitting mass can beat a single move") {
  // p concentrated at 00; q split between 01 and 10: each unit travels 1
  std::vector<double> p(4, 0.0), q(4, 0.0);
  p[0] = 1.0;
  q[1] = 0.5;
  q[2] = 0.5;
  CHECK(classical_w1_hamming(p, q, 2, 2) == doctest::Approx(1.0));
}

TEST_CASE("simplex matches the exhaustive oracle") {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const int size = 1 << n;
    auto p = random_dist(rng, size, 3);
    auto q = random_dist(rng, size, 3);
    const double fast = classical_w1_hamming(p, q, 2, n);
    const double slow = classical_w1_hamming_bruteforce(p, q, 2, n);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
  }
  // a base-3 register too
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_dist(rng, 9, 4);
    auto q = random_dist(rng, 9, 4);
    const double fast = classical_w1_hamming(p, q, 3, 2);
    const double slow = classical_w1_hamming_bruteforce(p, q, 3, 2);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
  }
}

TEST_CASE("metric properties on random instances") {
  Rng rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_dist(rng, 8, 4);
    auto q = random_dist(rng, 8, 4);
    auto r = random_dist(rng, 8, 4);
    const double pq = classical_w1_hamming(p, q, 2, 3);
    const double qp = classical_w1_hamming(q, p, 2, 3);
    CHECK(pq == doctest::Approx(qp).epsilon(1e-10));
    const double pr = classical_w1_hamming(p, r, 2, 3);
    const double qr = classical_w1_hamming(q, r, 2, 3);
    CHECK(pq <= pr + qr + 1e-10);
    // sandwiched between total variation and n * total variation
    double tv = 0.0;
    for (int i = 0; i < 8; ++i) tv += std::abs(p[i] - q[i]);
    tv /= 2;
    CHECK(pq >= tv - 1e-10);
    CHECK(pq <= 3 * tv + 1e-10);
  }
}

TEST_CASE("input validation") {
  std::vector<double> p = {0.5, 0.5}, bad_sum = {0.5, 0.4}, neg = {1.5, -0.5};
  CHECK_THROWS_AS(classical_w1_hamming(p, bad_sum, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(classical_w1_hamming(p, neg, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(classical_w1_hamming(p, p, 2, 2), std::invalid_argument);
}
