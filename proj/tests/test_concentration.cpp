#include <doctest.h>

#include <cmath>
#include <vector>

#include "qot/concentration.hpp"
#include "qot/dobrushin.hpp"
#include "qot/eig.hpp"
#include "qot/hamiltonian.hpp"
#include "qot/matfun.hpp"
#include "qot/rng.hpp"
#include "qot/states.hpp"
#include "qot/tensor.hpp"
#include "qot/w1.hpp"

using namespace qot;

namespace {

DualLowerOptions quick_dual() {
  DualLowerOptions o;
  o.iterations = 15;
  o.restarts = 2;
  return o;
}

ChainPartition singletons(int n) {
  ChainPartition part;
  for (int i = 0; i < n; ++i) part.blocks.push_back({i});
  return part;
}

}  // namespace

TEST_CASE("dual estimate reaches the sharp single qubit constant") {
  const DensityState omega = maximally_mixed(RegisterShape(2, {0}));
  const double v = tci_dual_lower(omega, quick_dual());
  CHECK(v >= 0.49);
  CHECK(v <= 0.5 + 1e-9);  // the true constant is 1/2
}

TEST_CASE("dual estimate respects the product constant") {
  const DensityState omega = maximally_mixed(RegisterShape(2, {0, 1}));
  const double v = tci_dual_lower(omega, quick_dual());
  CHECK(v >= 0.9);
  CHECK(v <= 1.0 + 1e-3);
}

TEST_CASE("dual estimate requires a full rank state") {
  const RegisterShape shape(2, {0});
  CMat pure(2);
  pure(0, 0) = 1.0;
  CHECK_THROWS_AS(tci_dual_lower(DensityState::make(shape, pure), quick_dual()),
                  std::invalid_argument);
}

TEST_CASE("dual lower bound never exceeds a certified upper bound") {
  const DensityState omega = gibbs_state(ising_chain(3, 1.0), 0.1);
  const EtaEstimate eta = eta_diamond(omega, singletons(3));
  REQUIRE(eta.eta < 1.0);
  const double upper = tci_markov_bound(singletons(3), eta.eta);
  const double lower = tci_dual_lower(omega, quick_dual());
  CHECK(lower >= 0.0);
  CHECK(lower <= upper + 1e-3);
}

TEST_CASE("exact measurement tails") {
  const DensityState w1q = maximally_mixed(RegisterShape(2, {0}));
  CHECK(tail_prob(pauli_z(), w1q, 0.5, true) == doctest::Approx(1.0));
  CHECK(tail_prob(pauli_z(), w1q, 1.5, true) == 0.0);
  CHECK(tail_prob(pauli_z(), w1q, 0.5, false) == doctest::Approx(0.5));

  const DensityState w2q = maximally_mixed(RegisterShape(2, {0, 1}));
  const CMat ztot =
      kron(pauli_z(), CMat::identity(2)) + kron(CMat::identity(2), pauli_z());
  CHECK(tail_prob(ztot, w2q, 1.5, true) == doctest::Approx(0.5));

  // monotone in r, bounded by one
  Rng rng(140, 0);
  const CMat obs = random_hermitian(rng, 8);
  const DensityState state =
      DensityState::make(RegisterShape(2, {0, 1, 2}), random_density(rng, 8));
  double prev = 2.0;
  for (double r = 0.0; r <= 3.0; r += 0.25) {
    const double p = tail_prob(obs, state, r, true);
    CHECK(p <= 1.0);
    CHECK(p >= 0.0);
    CHECK(p <= prev + 1e-12);
    prev = p;
  }
}

TEST_CASE("gaussian tail bound matches the formula arithmetic") {
  const DensityState omega = maximally_mixed(RegisterShape(2, {0}));
  const TailBound tb = gaussian_tail_bound(pauli_z(), omega, 0.5, 0.5);
  REQUIRE(tb.commuting.has_value());
  // ||Z||_L = 2, so 2 exp(-0.25 / (0.5 * 4))
  CHECK(*tb.commuting == doctest::Approx(2.0 * std::exp(-0.125)).epsilon(1e-6));
  CHECK(*tb.commuting <= tb.general + 1e-12);
  CHECK_FALSE(tb.clipped);

  const TailBound at0 = gaussian_tail_bound(pauli_z(), omega, 0.0, 0.5);
  CHECK(at0.general == 2.0);
  CHECK(*at0.commuting == 2.0);

  CHECK_THROWS_AS(gaussian_tail_bound(pauli_z(), omega, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_tail_bound(pauli_z(), omega, -0.5, 0.5), std::invalid_argument);
}

TEST_CASE("tails of product states sit below the certified gaussian bound") {
  const RegisterShape shape(2, {0, 1, 2});
  const DensityState omega = maximally_mixed(shape);
  const double c = 1.5;  // product constant n/2
  std::vector<double> grid;
  for (int i = 0; i <= 19; ++i) grid.push_back(0.2 * i);

  std::vector<CMat> observables;
  observables.push_back(embed(pauli_z(), single_site(2, 1), shape));
  CMat ztot(8);
  for (int v : shape.sites) ztot += embed(pauli_z(), single_site(2, v), shape);
  observables.push_back(ztot);
  Rng rng(141, 0);
  CMat diag(8);
  for (int i = 0; i < 8; ++i) diag(i, i) = rng.uniform(-1.0, 1.0);
  observables.push_back(diag);

  for (const CMat& obs : observables) {
    const TailReport rep = tail_report(obs, omega, grid, c);
    CHECK(rep.commuting);
    for (size_t i = 0; i < grid.size(); ++i) {
      CHECK(rep.exact_tail[i] <= rep.gauss_bound[i] + 1e-9);
      CHECK(rep.exact_tail[i] >= 0.0);
      CHECK(rep.exact_tail[i] <= 1.0);
      if (i > 0) CHECK(rep.exact_tail[i] <= rep.exact_tail[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("general tail bound covers observables that do not commute") {
  const DensityState omega = gibbs_state(ising_chain(3, 1.0), 0.1);
  const EtaEstimate eta = eta_diamond(omega, singletons(3));
  const double c = tci_markov_bound(singletons(3), eta.eta);
  const CMat obs = embed(pauli_x(), single_site(2, 1), omega.shape);
  std::vector<double> grid = {0.0, 0.3, 0.7, 1.2, 2.0};
  const TailReport rep = tail_report(obs, omega, grid, c);
  CHECK_FALSE(rep.commuting);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(rep.exact_tail[i] <= rep.gauss_bound[i] + 1e-9);
}

TEST_CASE("conjugated observable bound follows the interaction weights") {
  const HypergraphHamiltonian ham = ising_chain(3, 1.0);
  // infinite temperature: plain sum of coefficients
  CHECK(conjugated_lip_bound({HamTerm{{2}, pauli_z()}}, ham, 0.0) ==
        doctest::Approx(4.0));
  // middle site touches both couplings
  const double beta = 0.25;
  CHECK(conjugated_lip_bound({HamTerm{{1}, pauli_z()}}, ham, beta) ==
        doctest::Approx(4.0 * std::exp(2.0 * beta)).epsilon(1e-12));
  // edge site touches one
  CHECK(conjugated_lip_bound({HamTerm{{0}, pauli_x()}}, ham, beta) ==
        doctest::Approx(4.0 * std::exp(beta)).epsilon(1e-12));

  CHECK_THROWS_AS(conjugated_lip_bound({}, ham, beta), std::invalid_argument);
  CHECK_THROWS_AS(conjugated_lip_bound({HamTerm{{7}, pauli_z()}}, ham, beta),
                  std::invalid_argument);
  CHECK_THROWS_AS(conjugated_lip_bound({HamTerm{{0}, pauli_z()}}, ham, -0.1),
                  std::invalid_argument);
}

TEST_CASE("conjugated observable bound dominates the measured brackets") {
  const HypergraphHamiltonian ham = ising_chain(3, 1.0);
  for (double beta : {0.0, 0.1, 0.3}) {
    const DensityState omega = gibbs_state(ham, beta);
    for (int site : {0, 1}) {
      for (const CMat& local : {pauli_z(), pauli_x()}) {
        const std::vector<HamTerm> obs_terms = {HamTerm{{site}, local}};
        const double bound = conjugated_lip_bound(obs_terms, ham, beta);
        const CMat obs = embed(local, single_site(2, site), omega.shape);
        const TailBound tb = gaussian_tail_bound(obs, omega, 0.0, 1.0);
        CHECK(tb.lip_real <= bound + 1e-6);
        CHECK(tb.lip_imag <= bound + 1e-6);
      }
    }
  }
}

TEST_CASE("laplace transform check on the scalar identity") {
  const DensityState omega = maximally_mixed(RegisterShape(2, {0}));
  const LaplacePair zero = laplace_bound_check(CMat(2), omega, 0.5);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const LaplacePair lp = laplace_bound_check(t * pauli_z(), omega, 0.5);
    CHECK(lp.lhs == doctest::Approx(std::log(std::cosh(t))).epsilon(1e-12));
    CHECK(lp.rhs == doctest::Approx(0.5 * t * t).epsilon(1e-9));
    CHECK(lp.lhs <= lp.rhs + 1e-12);
  }
  // a shifted observable is rejected
  CHECK_THROWS_AS(
      laplace_bound_check(pauli_z() + 0.2 * CMat::identity(2), omega, 0.5),
      std::invalid_argument);
  CHECK_THROWS_AS(laplace_bound_check(pauli_z(), omega, 0.0), std::invalid_argument);
}

TEST_CASE("laplace bound holds with a certified markov constant") {
  const HypergraphHamiltonian ham = ising_chain(3, 1.0);
  const DensityState omega = gibbs_state(ham, 0.1);
  const EtaEstimate eta = eta_diamond(omega, singletons(3));
  const double c = tci_markov_bound(singletons(3), eta.eta);
  Rng rng(142, 0);
  for (int rep = 0; rep < 5; ++rep) {
    CMat k(8);
    for (int i = 0; i < 8; ++i) k(i, i) = rng.uniform(-1.0, 1.0);
    k += (-std::real(trace(omega.matrix * k))) * CMat::identity(8);
    const LaplacePair lp = laplace_bound_check(k, omega, c);
    CHECK(lp.lhs <= lp.rhs + 1e-9);
  }
}

TEST_CASE("trace exponential ordering behind the laplace bound") {
  Rng rng(143, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const CMat w = random_density(rng, 4);
    const CMat k = random_hermitian(rng, 4);
    const double lhs = std::real(trace(mat_exp_herm(mat_log_herm(w) + k)));
    const double rhs = std::real(trace(w * mat_exp_herm(k)));
    CHECK(lhs <= rhs + 1e-9 * std::max(1.0, rhs));
  }
}
