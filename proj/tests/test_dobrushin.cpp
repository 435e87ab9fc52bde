#include <doctest.h>

#include <cmath>
#include <vector>

#include "qot/channel.hpp"
#include "qot/dobrushin.hpp"
#include "qot/eig.hpp"
#include "qot/hamiltonian.hpp"
#include "qot/recovery.hpp"
#include "qot/rng.hpp"
#include "qot/states.hpp"
#include "qot/tensor.hpp"
#include "qot/w1.hpp"

using namespace qot;

namespace {

ChainPartition singletons(int n) {
  ChainPartition part;
  for (int i = 0; i < n; ++i) part.blocks.push_back({i});
  return part;
}

DensityState ising_gibbs(int n, double beta) {
  return gibbs_state(ising_chain(n, 1.0), beta);
}

}  // namespace

TEST_CASE("chain partitions must tile the register in order") {
  const RegisterShape shape(2, {0, 1, 2});
  ChainPartition ok;
  ok.blocks = {{0}, {1, 2}};
  CHECK_NOTHROW(ok.validate(shape));
  CHECK(ok.count() == 2);
  CHECK(ok.max_block() == 2);

  ChainPartition gap;
  gap.blocks = {{0}, {2}};
  CHECK_THROWS_AS(gap.validate(shape), std::invalid_argument);
  ChainPartition reorder;
  reorder.blocks = {{1}, {0}, {2}};
  CHECK_THROWS_AS(reorder.validate(shape), std::invalid_argument);
  ChainPartition empty_block;
  empty_block.blocks = {{0}, {}, {1, 2}};
  CHECK_THROWS_AS(empty_block.validate(shape), std::invalid_argument);
  ChainPartition none;
  CHECK_THROWS_AS(none.validate(shape), std::invalid_argument);
}

TEST_CASE("product chains propagate nothing") {
  const DensityState omega = ising_gibbs(3, 0.0);
  const ChainPartition part = singletons(3);
  const EtaEstimate d = eta_diamond(omega, part);
  CHECK(d.eta < 1e-9);
  CHECK(d.per_block[0] == 0.0);
  const EtaEstimate m = eta_from_maxdiv(omega, part);
  CHECK(m.eta < 1e-9);
  CHECK(m.condition_met);
  const EtaEstimate e = eta_empirical(omega, part, 10, 130);
  CHECK(e.eta < 1e-9);
}

TEST_CASE("nearest neighbour divergence matches the closed form") {
  // for a ZZ chain each adjacent pair gives a = beta + ln cosh beta
  for (double beta : {0.05, 0.1, 0.2}) {
    const EtaEstimate m = eta_from_maxdiv(ising_gibbs(3, beta), singletons(3));
    const double a_exact = beta + std::log(std::cosh(beta));
    CHECK(std::abs(m.a - a_exact) < 1e-8);
    CHECK(m.condition_met);
    CHECK(std::abs(m.eta - std::sqrt(2.0 * m.a)) < 1e-12);
  }
}

TEST_CASE("divergence condition fails at strong coupling") {
  // beta + ln cosh beta crosses 1/2 just below beta = 0.45
  const EtaEstimate m = eta_from_maxdiv(ising_gibbs(3, 0.45), singletons(3));
  CHECK_FALSE(m.condition_met);
  CHECK(m.eta == 1.0);
  CHECK(m.a >= 0.5);
}

TEST_CASE("eta estimates are consistently ordered") {
  const ChainPartition part = singletons(3);
  double prev = -1.0;
  for (double beta : {0.05, 0.1, 0.2}) {
    const DensityState omega = ising_gibbs(3, beta);
    const EtaEstimate d = eta_diamond(omega, part);
    const EtaEstimate e = eta_empirical(omega, part, 8, 131);
    const EtaEstimate m = eta_from_maxdiv(omega, part);
    CHECK(d.eta < 1.0);
    CHECK(e.eta <= d.eta + 1e-9);   // sampled ratios cannot beat the sup
    CHECK(e.eta <= m.eta + 1e-9);   // nor the divergence route when it applies
    CHECK(d.eta > prev);            // propagation grows with coupling
    prev = d.eta;
  }
}

TEST_CASE("eta estimation demands short range memory") {
  // GHZ admixture correlates block 3 with block 1 through block 2
  const RegisterShape shape(2, {0, 1, 2});
  CMat ghz(8);
  ghz(0, 0) = 0.5;
  ghz(0, 7) = 0.5;
  ghz(7, 0) = 0.5;
  ghz(7, 7) = 0.5;
  const CMat mixed = 0.9 * ghz + (0.1 / 8.0) * CMat::identity(8);
  const DensityState omega = DensityState::make(shape, mixed);
  CHECK_THROWS_AS(eta_diamond(omega, singletons(3)), std::domain_error);
  CHECK_THROWS_AS(eta_empirical(omega, singletons(3), 4, 132), std::domain_error);
}

TEST_CASE("markov transport constants") {
  CHECK(tci_markov_bound(singletons(4), 0.0) == doctest::Approx(32.0));
  ChainPartition blocks2;
  blocks2.blocks = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  // m = 4, K = 2, eta = 1/2: 2 * 4 * 4 * 9 = 288
  CHECK(tci_markov_bound(blocks2, 0.5) == doctest::Approx(288.0));
  ChainPartition m4 = singletons(4);
  CHECK(tci_markov_bound(m4, 0.5) == doctest::Approx(72.0));
  CHECK_THROWS_AS(tci_markov_bound(m4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tci_markov_bound(m4, -0.1), std::invalid_argument);

  CHECK(tci_markov_refined(0.0, m4, 0.5) == 0.0);
  const double s = std::log(2.0);
  const double want = 3.0 * 2.0 * 4.0 * std::sqrt(1.0 - std::exp(-s / 4.0));
  CHECK(tci_markov_refined(s, m4, 0.5) == doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(tci_markov_refined(-1.0, m4, 0.5), std::invalid_argument);
}

TEST_CASE("long range transport constant has a worked value") {
  const NonMarkovBound b = tci_nonmarkov_bound(16, 1.0, 0.5);
  // ln(16)/(2 ln 2) = 2, so 8 * 16 * (2 + 4 + 2)^2
  CHECK(b.value == doctest::Approx(8192.0).epsilon(1e-12));
  CHECK(b.k0 == 2);
  // degenerate constant is regularized, not rejected
  const NonMarkovBound z = tci_nonmarkov_bound(4, 0.0, 0.5);
  CHECK(std::isfinite(z.value));
  CHECK(z.value > 0.0);
  double prev = 0.0;
  for (int n : {1, 2, 4, 8, 16}) {
    const double cur = tci_nonmarkov_bound(n, 1.0, 0.3).value;
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK_THROWS_AS(tci_nonmarkov_bound(0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(tci_nonmarkov_bound(4, -1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(tci_nonmarkov_bound(4, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(tci_nonmarkov_bound(4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("product states satisfy the sharp transport constant") {
  W1Options w1;
  w1.dual_steps = 40;
  w1.lip_refine = 4;
  w1.lip_refine_final = 20;
  for (int n : {2, 3}) {
    const DensityState omega = ising_gibbs(n, 0.0);
    const TciReport rep = verify_tci_empirical(omega, 0.5 * n, 25, 133, w1);
    CHECK(rep.pass);
    CHECK(rep.used == 25);
    CHECK(rep.strict == rep.used);
    CHECK(rep.max_ratio_upper <= 0.5 * n + 1e-6);
  }
}

TEST_CASE("an absurdly small constant is refuted by the dual witness") {
  const DensityState omega = ising_gibbs(2, 0.0);
  const TciReport rep = verify_tci_empirical(omega, 1e-4, 10, 134);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_ratio_lower > 1e-4);
  CHECK_THROWS_AS(verify_tci_empirical(omega, 0.0, 10, 134), std::invalid_argument);
  CHECK_THROWS_AS(verify_tci_empirical(omega, 1.0, 0, 134), std::invalid_argument);
}

TEST_CASE("transport norm telescopes through partial traces") {
  // ||X||_W1 <= sum_k ||post trace of the first k sites||_1
  const RegisterShape shape(2, {0, 1, 2});
  Rng rng(135, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const CMat x = random_traceless_hermitian(rng, 8);
    double rhs = trace_norm_herm(x);
    rhs += trace_norm_herm(partial_trace(x, shape, {0}));
    rhs += trace_norm_herm(partial_trace(x, shape, {0, 1}));
    const W1Certificate cert = w1_norm(x, shape);
    CHECK(cert.value_upper <= rhs + 1e-6);
  }
}

TEST_CASE("propagation of a locally erased difference stays bounded") {
  // if X lives on the first two blocks and loses both when traced there,
  // pushing it through the remaining recovery maps keeps the transport
  // norm below K (1/(1-eta) + 1) ||X||_1
  const double beta = 0.1;
  const DensityState omega = ising_gibbs(3, beta);
  const ChainPartition part = singletons(3);
  const EtaEstimate d = eta_diamond(omega, part);
  REQUIRE(d.eta < 1.0);
  const RecoveryMap rec = petz_rotated(marginal(omega, {1, 2}), {1}, {2});
  REQUIRE(rec.channel.has_value());
  std::vector<CMat> lifted;
  for (const CMat& k : rec.kraus) lifted.push_back(kron(CMat::identity(2), k));
  const ChannelRep prop = ChannelRep::from_kraus(omega.shape.subset({0, 1}),
                                                 omega.shape, lifted);
  Rng rng(136, 0);
  for (int rep = 0; rep < 4; ++rep) {
    // build X on sites {0,1} with Tr_{01} X = 0 as a difference of densities
    const CMat x = haar_pure_density(rng, 4) - haar_pure_density(rng, 4);
    const CMat img = prop.apply(x);
    const double rhs = (1.0 / (1.0 - d.eta) + 1.0) * trace_norm_herm(x);
    const W1Certificate cert = w1_norm(img, omega.shape);
    CHECK(cert.value_upper <= rhs + 1e-6);
  }
}
