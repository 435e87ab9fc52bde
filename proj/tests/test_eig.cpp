#include "qot/eig.hpp"
#include "qot/rng.hpp"
#include "qot/tensor.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace qot;

namespace {
double unitarity_error(const CMat& v) {
  CMat g = adjoint(v) * v;
  return max_abs_entry(g - CMat::identity(v.dim()));
}
}  // namespace

TEST_CASE("jacobi reconstructs random hermitian matrices") {
  Rng rng(21);
  for (int d : {2, 3, 8, 16, 64}) {
    CMat a = random_hermitian(rng, d);
    EigResult e = herm_eig(a);
    CHECK(unitarity_error(e.vectors) < 1e-11);
    CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
    CMat back = from_eig(e.eigenvalues, e.vectors);
    double scale = std::max(1.0, fro_norm(a));
    CHECK(max_abs_entry(back - a) < 1e-9 * scale);
  }
}

TEST_CASE("known spectra") {
  EigResult ex = herm_eig(pauli_x());
  CHECK(ex.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(ex.eigenvalues[1] == doctest::Approx(-1.0));
  // projector |+><+| has spectrum {1, 0}
  CMat plus(2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  EigResult ep = herm_eig(plus);
  CHECK(ep.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(std::abs(ep.eigenvalues[1]) < 1e-12);
}

TEST_CASE("eigenvector gauge is deterministic") {
  Rng rng(22);
  CMat a = random_hermitian(rng, 12);
  EigResult e1 = herm_eig(a);
  EigResult e2 = herm_eig(a);
  CHECK(max_abs_entry(e1.vectors - e2.vectors) == 0.0);
  for (int c = 0; c < 12; ++c) {
    for (int r = 0; r < 12; ++r) {
      cxd v = e1.vectors(r, c);
      if (std::abs(v) > 1e-12) {
        CHECK(v.real() > 0);
        CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v.real()) + 1e-300);
        break;
      }
    }
  }
}

TEST_CASE("norm helpers agree with the spectrum") {
  Rng rng(23);
  CMat a = random_hermitian(rng, 10);
  EigResult e = herm_eig(a);
  double sum_abs = 0, max_abs = 0;
  for (double w : e.eigenvalues) {
    sum_abs += std::abs(w);
    max_abs = std::max(max_abs, std::abs(w));
  }
  CHECK(op_norm_herm(a) == doctest::Approx(max_abs));
  CHECK(trace_norm_herm(a) == doctest::Approx(sum_abs));
  CHECK(lambda_max_herm(a) == doctest::Approx(e.eigenvalues.front()));
  CHECK(lambda_min_herm(a) == doctest::Approx(e.eigenvalues.back()));
}

TEST_CASE("general norms on a non-normal matrix") {
  // [[0, 2], [0, 0]] has singular values {2, 0}
  CMat a(2);
  a(0, 1) = 2.0;
  CHECK(op_norm(a) == doctest::Approx(2.0));
  CHECK(trace_norm(a) == doctest::Approx(2.0));
  // unitary: all singular values 1
  CMat h(2);
  double s = 1.0 / std::sqrt(2.0);
  h(0, 0) = s;
  h(0, 1) = s;
  h(1, 0) = s;
  h(1, 1) = -s;
  CHECK(op_norm(h) == doctest::Approx(1.0));
  CHECK(trace_norm(h) == doctest::Approx(2.0));
}

TEST_CASE("sign, abs and positive part") {
  Rng rng(24);
  CMat a = random_hermitian(rng, 9);
  CMat s = sign_herm(a);
  CMat ab = abs_herm(a);
  CMat p = pos_part_herm(a);
  // |A| = sign(A) * A and A = P - (P - A) with both parts PSD
  CHECK(max_abs_entry(s * a - ab) < 1e-10);
  CMat neg = p - a;
  CHECK(lambda_min_herm(p) > -1e-11);
  CHECK(lambda_min_herm(neg) > -1e-11);
  CHECK(max_abs_entry((p - neg) - a) < 1e-10);
  CHECK(trace_norm_herm(a) == doctest::Approx(trace(ab).real()));
}
