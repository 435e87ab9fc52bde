#include "qot/matfun.hpp"
#include "qot/rng.hpp"
#include "qot/tensor.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace qot;

namespace {
CMat random_posdef(Rng& rng, int d, double shift) {
  CMat a = random_hermitian(rng, d);
  CMat g = a * a;
  CMat id = CMat::identity(d);
  id *= shift;
  return g + id;
}
}  // namespace

TEST_CASE("powers of diagonal matrices") {
  CMat a(2);
  a(0, 0) = 4.0;
  a(1, 1) = 9.0;
  CMat r = mat_power(a, 0.5);
  CHECK(r(0, 0).real() == doctest::Approx(2.0));
  CHECK(r(1, 1).real() == doctest::Approx(3.0));
  CMat inv = mat_power(a, -1.0);
  CHECK(inv(0, 0).real() == doctest::Approx(0.25));
}

TEST_CASE("complex power has the right modulus and phase") {
  CMat a(1);
  a(0, 0) = 2.0;
  cxd z(0.5, 0.3);
  CMat r = mat_power(a, z);
  cxd expect = std::pow(cxd(2.0, 0.0), z);
  CHECK(std::abs(r(0, 0) - expect) < 1e-14);
}

TEST_CASE("power composition on a random positive matrix") {
  Rng rng(31);
  CMat a = random_posdef(rng, 6, 0.3);
  CMat h = mat_power(a, 0.5);
  CHECK(max_abs_entry(h * h - a) < 1e-9);
  CMat p = mat_power(a, cxd(0, 1)) * mat_power(a, cxd(0, -1));
  CHECK(max_abs_entry(p - CMat::identity(6)) < 1e-9);
}

TEST_CASE("mat_power refuses singular input, clipped variant flags it") {
  CMat a(2);
  a(0, 0) = 1.0;  // second eigenvalue is 0
  CHECK_THROWS_AS(mat_power(a, 0.5), std::domain_error);
  bool clipped = false;
  CMat r = mat_power_clipped(a, 0.5, 1e-12, &clipped);
  CHECK(clipped);
  CHECK(r(0, 0).real() == doctest::Approx(1.0));
  // on a well conditioned matrix the flag stays off
  clipped = true;
  Rng rng(32);
  CMat b = random_posdef(rng, 4, 1.0);
  mat_power_clipped(b, 0.5, 1e-12, &clipped);
  CHECK(!clipped);
}

TEST_CASE("exp and log invert each other") {
  Rng rng(33);
  CMat a = random_hermitian(rng, 5);
  CMat e = mat_exp_herm(a);
  CHECK(lambda_min_herm(e) > 0);
  CMat back = mat_log_herm(e);
  CHECK(max_abs_entry(back - a) < 1e-8);
  // exp of Z is diag(e, 1/e)
  CMat ez = mat_exp_herm(pauli_z());
  CHECK(ez(0, 0).real() == doctest::Approx(std::exp(1.0)));
  CHECK(ez(1, 1).real() == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("eigendecomposition-cached powers agree") {
  Rng rng(34);
  CMat a = random_posdef(rng, 6, 0.5);
  EigResult e = herm_eig(a);
  cxd z(0.35, -0.8);
  CHECK(max_abs_entry(mat_power_from_eig(e, z) - mat_power(a, z)) < 1e-12);
}

TEST_CASE("perturbation inequality for matrix powers") {
  Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    CMat a = random_posdef(rng, 5, 0.4);
    CMat d = random_hermitian(rng, 5);
    d *= 0.05;
    CMat b = a + d;
    for (cxd z : {cxd(0.5, 0.0), cxd(-0.5, 0.0), cxd(0.5, 1.3), cxd(-0.25, -2.0)}) {
      PowerPerturbation p = power_perturbation_check(a, b, z);
      CHECK(p.holds);
      CHECK(p.lhs <= p.rhs + 1e-9);
    }
  }
}
