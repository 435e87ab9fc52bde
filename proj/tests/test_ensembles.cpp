#include <doctest.h>

#include <cmath>
#include <vector>

#include "qot/dobrushin.hpp"
#include "qot/eig.hpp"
#include "qot/ensembles.hpp"
#include "qot/hamiltonian.hpp"
#include "qot/rng.hpp"
#include "qot/states.hpp"
#include "qot/w1.hpp"

using namespace qot;

namespace {

ChainPartition singletons(int n) {
  ChainPartition part;
  for (int i = 0; i < n; ++i) part.blocks.push_back({i});
  return part;
}

W1Options quick_w1() {
  W1Options w;
  w.dual_steps = 40;
  w.lip_refine = 4;
  w.lip_refine_final = 20;
  return w;
}

}  // namespace

TEST_CASE("average marginal of a product state") {
  const RegisterShape shape(2, {0, 1});
  CMat up(2), down(2);
  up(0, 0) = 1.0;
  down(1, 1) = 1.0;
  const DensityState state = product_state(shape, {up, down});
  const CMat avg = average_marginal(state);
  CHECK(std::abs(avg(0, 0) - cxd(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(avg(1, 1) - cxd(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(avg(0, 1)) < 1e-12);
}

TEST_CASE("identical states give zero equivalence bounds") {
  const HypergraphHamiltonian ham = ising_chain(2, 1.0);
  const DensityState omega = gibbs_state(ham, 0.4);
  const EnsembleBounds eb = ensemble_equivalence(omega, omega, ham, 10.0);
  CHECK(eb.energy_matched);
  CHECK(eb.entropy_gap == 0.0);
  CHECK(eb.w1_per_site_bound == 0.0);
  CHECK(eb.marginal_bound == 0.0);
}

TEST_CASE("equivalence bounds reject mismatched energies") {
  const HypergraphHamiltonian ham = ising_chain(2, 1.0);
  const DensityState omega = gibbs_state(ham, 0.4);
  const DensityState hot = gibbs_state(ham, 0.1);
  CHECK_THROWS_AS(ensemble_equivalence(hot, omega, ham, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(ensemble_equivalence(omega, omega, ham, 0.0), std::invalid_argument);
}

TEST_CASE("microcanonical shell matched to the gibbs energy") {
  // for the 3-site chain, the shell (-2.5, 0] has average energy -2/3, which
  // is the gibbs energy exactly at beta = ln(2)/2
  const HypergraphHamiltonian ham = ising_chain(3, 1.0);
  const double beta = 0.5 * std::log(2.0);
  const DensityState omega = gibbs_state(ham, beta);
  const DensityState shell = microcanonical_state(omega.shape, ham.dense(), 0.0, 2.5);

  const EtaEstimate eta = eta_diamond(omega, singletons(3));
  REQUIRE(eta.eta < 1.0);
  const double c_markov = tci_markov_bound(singletons(3), eta.eta);
  const EnsembleBounds eb = ensemble_equivalence(shell, omega, ham, c_markov);
  CHECK(eb.energy_matched);
  CHECK(eb.entropy_gap > 0.0);

  const W1Certificate cert = w1_distance(shell, omega, quick_w1());
  CHECK(cert.value_upper / 3.0 <= eb.w1_per_site_bound + 1e-6);
  const double marg = trace_norm_herm(average_marginal(shell) - average_marginal(omega));
  CHECK(marg <= eb.marginal_bound + 1e-9);
  // the marginal chain step stands on its own
  CHECK(marg <= (2.0 / 3.0) * cert.value_upper + 1e-6);
  // low-entropy transport lower bound
  CHECK(entropy_lower_w1(eb.entropy_gap, 2, 3) <= cert.value_upper + 1e-6);
}

TEST_CASE("microcanonical relative entropy bound on a shell grid") {
  const HypergraphHamiltonian ham = ising_chain(3, 1.0);
  // infinite temperature with the product constant
  for (double delta : {0.5, 1.0, 2.1, 10.0}) {
    const MicrocanonicalBound mb =
        microcanonical_equivalence_bound(ham, 0.0, 0.0, delta, 1.5, 20);
    CHECK(mb.exact <= mb.bound + 1e-9);
    CHECK(std::isfinite(mb.bound));
    CHECK(mb.shell_dim >= 4);
  }
  // finite temperature with a measured markov constant
  const double beta = 0.5 * std::log(2.0);
  const DensityState omega = gibbs_state(ham, beta);
  const EtaEstimate eta = eta_diamond(omega, singletons(3));
  const double c = tci_markov_bound(singletons(3), eta.eta);
  for (double delta : {1.5, 2.0, 3.0}) {
    const MicrocanonicalBound mb =
        microcanonical_equivalence_bound(ham, beta, -2.0, delta, c, 20);
    CHECK(mb.exact <= mb.bound + 1e-9);
    CHECK(mb.shell_dim == 2);
  }
  // tiny shells blow the bound up, never below the exact value
  const MicrocanonicalBound tiny =
      microcanonical_equivalence_bound(ham, 0.0, 0.0, 1e-6, 1.5, 20);
  CHECK(tiny.exact <= tiny.bound);
  CHECK(tiny.bound > 10.0);

  CHECK_THROWS_AS(microcanonical_equivalence_bound(ham, 0.0, -0.5, 0.1, 1.5, 20),
                  std::domain_error);
  CHECK_THROWS_AS(microcanonical_equivalence_bound(ham, 0.0, 0.0, 0.0, 1.5, 20),
                  std::invalid_argument);
  CHECK_THROWS_AS(microcanonical_equivalence_bound(ham, 0.0, 0.0, 0.5, 0.0, 20),
                  std::invalid_argument);
  CHECK_THROWS_AS(microcanonical_equivalence_bound(ham, -0.2, 0.0, 0.5, 1.5, 20),
                  std::invalid_argument);
}

TEST_CASE("entropy continuity with certified transport values") {
  const RegisterShape shape(2, {0, 1});
  Rng rng(150, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityState a = DensityState::make(shape, random_density(rng, 4));
    const DensityState b = DensityState::make(shape, random_density(rng, 4));
    const W1Certificate cert = w1_distance(a, b, quick_w1());
    const double gap = std::abs(entropy(a) - entropy(b));
    CHECK(gap <= entropy_continuity_bound(cert.value_upper, 2, 2) + 1e-9);
  }
}
