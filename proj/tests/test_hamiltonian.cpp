#include "qot/hamiltonian.hpp"
#include "qot/eig.hpp"
#include "qot/tensor.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qot;

TEST_CASE("ising chain spectrum") {
  HypergraphHamiltonian h = ising_chain(3);
  CHECK(h.terms.size() == 2);
  EigResult e = herm_eig(h.dense());
  // ZZ + ZZ on three qubits: energies 2, 0, -2 with multiplicities 2, 4, 2
  std::vector<double> expect = {2, 2, 0, 0, 0, 0, -2, -2};
  REQUIRE(e.eigenvalues.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i)
    CHECK(e.eigenvalues[i] == doctest::Approx(expect[i]));
  CHECK(h.max_term_norm() == doctest::Approx(1.0));
}

TEST_CASE("ring closes the loop") {
  HypergraphHamiltonian ring = ising_ring(3, 0.5);
  CHECK(ring.terms.size() == 3);
  CHECK(ring.max_term_norm() == doctest::Approx(0.5));
  // frustration-free check: ring energies are (s0 s1 + s1 s2 + s2 s0)/2
  EigResult e = herm_eig(ring.dense());
  CHECK(e.eigenvalues.front() == doctest::Approx(1.5));
  CHECK(e.eigenvalues.back() == doctest::Approx(-0.5));
}

TEST_CASE("neighborhoods") {
  HypergraphHamiltonian h = ising_chain(4);
  CHECK(h.neighborhood(0) == std::vector<int>{0, 1});
  CHECK(h.neighborhood(1) == std::vector<int>{0, 1, 2});
  CHECK(h.max_neighborhood_size() == 3);
  HypergraphHamiltonian f = field_z(3, 0.2);
  CHECK(f.max_neighborhood_size() == 1);
  CHECK(f.neighborhood(2) == std::vector<int>{2});
}

TEST_CASE("commutation detection") {
  CHECK(ising_chain(3).is_commuting(1e-12));
  CHECK(ising_ring(4).is_commuting(1e-12));
  // add a transverse field; no longer commuting
  HypergraphHamiltonian h = ising_chain(2);
  auto terms = h.terms;
  terms.push_back({{0}, pauli_x()});
  HypergraphHamiltonian mixed = HypergraphHamiltonian::make(h.shape, terms);
  CHECK(!mixed.is_commuting(1e-12));
}

TEST_CASE("site distances follow the interaction graph") {
  HypergraphHamiltonian h = ising_chain(4);
  CHECK(h.site_distance(0, 0) == 0);
  CHECK(h.site_distance(0, 1) == 1);
  CHECK(h.site_distance(0, 3) == 3);
  CHECK(h.site_distance(3, 0) == 3);
  HypergraphHamiltonian ring = ising_ring(4);
  CHECK(ring.site_distance(0, 3) == 1);
  // disconnected register: term on {0,1} only, site 2 floats free
  RegisterShape shape(2, {0, 1, 2});
  HypergraphHamiltonian sparse =
      HypergraphHamiltonian::make(shape, {{{0, 1}, kron(pauli_z(), pauli_z())}});
  CHECK(sparse.site_distance(0, 2) == -1);
}

TEST_CASE("construction rejects bad terms") {
  RegisterShape shape(2, {0, 1});
  CHECK_THROWS_AS(HypergraphHamiltonian::make(shape, {{{0, 5}, kron(pauli_z(), pauli_z())}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(HypergraphHamiltonian::make(shape, {{{0, 0}, kron(pauli_z(), pauli_z())}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(HypergraphHamiltonian::make(shape, {{{0}, kron(pauli_z(), pauli_z())}}),
                  std::invalid_argument);
  CMat skew(2);
  skew(0, 1) = 1.0;  // not hermitian
  CHECK_THROWS_AS(HypergraphHamiltonian::make(shape, {{{0}, skew}}), std::invalid_argument);
  CHECK_THROWS_AS(HypergraphHamiltonian::make(shape, {{{}, pauli_z()}}), std::invalid_argument);
}
