#include "qot/register.hpp"
#include "qot/rng.hpp"
#include "qot/tensor.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qot;

TEST_CASE("register shape basics") {
  RegisterShape r(2, {4, 7, 9});
  CHECK(r.dim() == 8);
  CHECK(r.pos(7) == 1);
  CHECK(r.has_site(9));
  CHECK(!r.has_site(1));
  CHECK_THROWS_AS(r.pos(1), std::invalid_argument);
  CHECK_THROWS_AS(RegisterShape(2, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(RegisterShape(1, {0}), std::invalid_argument);
  // subset keeps register order no matter the query order
  RegisterShape s = r.subset({9, 4});
  CHECK(s.sites == std::vector<int>{4, 9});
  CHECK(r.complement({7}).sites == std::vector<int>{4, 9});
  CHECK_THROWS_AS(r.subset({3}), std::invalid_argument);
}

TEST_CASE("embed matches kron for contiguous placement") {
  Rng rng(11);
  CMat op = random_hermitian(rng, 2);
  RegisterShape full(2, {0, 1, 2});
  CMat lifted = embed(op, single_site(2, 1), full);
  CMat expect = kron(kron(CMat::identity(2), op), CMat::identity(2));
  CHECK(max_abs_entry(lifted - expect) < 1e-14);
}

TEST_CASE("embed handles out-of-order operator factors") {
  Rng rng(12);
  CMat a = random_hermitian(rng, 2);
  CMat b = random_hermitian(rng, 2);
  RegisterShape full(2, {0, 1, 2});
  // first factor acts on site 2, second on site 0
  CMat op = kron(a, b);
  CMat lifted = embed(op, RegisterShape(2, {2, 0}), full);
  CMat expect = kron(kron(b, CMat::identity(2)), a);
  CHECK(max_abs_entry(lifted - expect) < 1e-14);
}

TEST_CASE("embed of two-site op on a qutrit register") {
  Rng rng(13);
  CMat a = random_hermitian(rng, 3);
  CMat b = random_hermitian(rng, 3);
  RegisterShape full(3, {5, 6, 7});
  CMat lifted = embed(kron(a, b), RegisterShape(3, {5, 7}), full);
  CMat expect = kron(kron(a, CMat::identity(3)), b);
  CHECK(max_abs_entry(lifted - expect) < 1e-14);
}

TEST_CASE("partial trace undoes embedding") {
  Rng rng(14);
  RegisterShape full(2, {0, 1, 2});
  CMat rho_a = random_density(rng, 2);
  CMat rho_bc = random_density(rng, 4);
  CMat joint = kron(rho_a, rho_bc);
  CMat back = partial_trace(joint, full, {1, 2});
  CHECK(max_abs_entry(back - rho_a) < 1e-12);
  CMat other = partial_trace(joint, full, {0});
  CHECK(max_abs_entry(other - rho_bc) < 1e-12);
  // trace is preserved
  CHECK(trace(partial_trace(joint, full, {1})).real() == doctest::Approx(1.0));
}

TEST_CASE("partial trace of Bell state is maximally mixed") {
  CMat bell(4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  RegisterShape full(2, {0, 1});
  CMat red = partial_trace(bell, full, {1});
  CMat half = CMat::identity(2);
  half *= 0.5;
  CHECK(max_abs_entry(red - half) < 1e-15);
}

TEST_CASE("site average and centering") {
  Rng rng(15);
  RegisterShape full(2, {0, 1, 2});
  CMat x = random_hermitian(rng, 8);
  CMat avg = site_average(x, full, 1);
  // idempotent and trace preserving
  CHECK(max_abs_entry(site_average(avg, full, 1) - avg) < 1e-12);
  CHECK(std::abs(trace(avg) - trace(x)) < 1e-12);
  // averages over different sites commute
  CMat ab = site_average(site_average(x, full, 0), full, 2);
  CMat ba = site_average(site_average(x, full, 2), full, 0);
  CHECK(max_abs_entry(ab - ba) < 1e-12);
  // centered part is traceless on the centered site
  CMat cen = site_centered(x, full, 1);
  CMat tr_v = partial_trace(cen, full, {1});
  CHECK(max_abs_entry(tr_v) < 1e-12);
  // block average over all sites is the normalized trace
  CMat all = block_average(x, full, {0, 1, 2});
  CMat expect = CMat::identity(8);
  expect *= trace(x) / 8.0;
  CHECK(max_abs_entry(all - expect) < 1e-12);
}

TEST_CASE("traceless single-site basis") {
  for (int d = 2; d <= 4; ++d) {
    auto basis = traceless_site_basis(d);
    CHECK(static_cast<int>(basis.size()) == d * d - 1);
    for (size_t i = 0; i < basis.size(); ++i) {
      CHECK(hermiticity_error(basis[i]) < 1e-15);
      CHECK(std::abs(trace(basis[i])) < 1e-15);
      for (size_t j = 0; j < basis.size(); ++j) {
        cxd g = hs_inner(basis[i], basis[j]);
        CHECK(std::abs(g - (i == j ? cxd(2, 0) : cxd(0, 0))) < 1e-13);
      }
    }
  }
  // for qubits the diagonal element is Z and the first pair is X, Y
  auto qb = traceless_site_basis(2);
  CHECK(max_abs_entry(qb[0] - pauli_x()) < 1e-15);
  CHECK(max_abs_entry(qb[1] - pauli_y()) < 1e-15);
  CHECK(max_abs_entry(qb[2] - pauli_z()) < 1e-15);
}

TEST_CASE("matrix unit") {
  CMat e = matrix_unit(3, 1, 2);
  CHECK(e(1, 2) == cxd(1, 0));
  CHECK(fro_norm(e) == 1.0);
}
