#pragma once
// Chain contraction pipeline for one-dimensional Markov states: the
// block-to-block propagation maps, their contraction coefficient eta (bounded
// three ways: diamond norm, max-divergence, and empirical sampling), and the
// transport-entropy constants those bounds imply.  Also the empirical
// verifier that stress-tests a claimed constant against random states.

#include <cstdint>
#include <vector>

#include "qot/curvature.hpp"
#include "qot/states.hpp"
#include "qot/w1.hpp"

namespace qot {

struct ChainPartition {
  std::vector<std::vector<int>> blocks;

  int count() const { return static_cast<int>(blocks.size()); }
  int max_block() const;

  // Blocks must be nonempty and their concatenation must reproduce the
  // register's site list exactly.
  void validate(const RegisterShape& shape) const;
};

enum class EtaMethod { diamond_bound, maxdiv_bound, empirical_lower };

struct EtaEstimate {
  double eta = 0.0;
  EtaMethod method = EtaMethod::diamond_bound;
  std::vector<double> per_block;  // index b: term for the map into block b
  bool condition_met = true;      // maxdiv path only: a < 1/2 held
  double a = 0.0;                 // maxdiv path only: the divergence value
};

// eta as the largest diamond-norm distance between a block propagation map
// and the replace-with-the-marginal channel.  Requires the Markov locality
// precondition (verified; std::domain_error when it fails).
EtaEstimate eta_diamond(const DensityState& omega, const ChainPartition& part,
                        double tol = 1e-8, const DiamondOptions& dopts = {});

// eta = sqrt(2a) with a the largest adjacent-block max-divergence from the
// product of marginals.  Valid only when a < 1/2; otherwise condition_met is
// cleared and eta is reported as 1 (no contraction information).
EtaEstimate eta_from_maxdiv(const DensityState& omega, const ChainPartition& part);

// Lower bound on the contraction coefficient from sampled pure-state pairs
// on the predecessor block pushed through the propagation map.
EtaEstimate eta_empirical(const DensityState& omega, const ChainPartition& part, int trials,
                          uint64_t seed, double tol = 1e-8);

// 2 m K^2 (1/(1-eta) + 1)^2, the transport-entropy constant of the chain.
double tci_markov_bound(const ChainPartition& part, double eta);

// State-dependent form: K (1/(1-eta) + 1) 2m sqrt(1 - exp(-S/m)).
double tci_markov_refined(double rel_entropy, const ChainPartition& part, double eta);

struct NonMarkovBound {
  double value = 0.0;
  long long k0 = 0;  // the cutoff the closed form optimizes over, as chosen
};

// 8 n (2 + (C+1)/(1-eta) - ln(C^2 n)/(2 ln eta))^2 for a chain of n sites
// whose correlations decay as C eta^k.  C is floored at 1e-12 inside the
// logarithm; k0 = ceil(-ln(C^2 n)/(2 ln eta)) is reported unclamped.
NonMarkovBound tci_nonmarkov_bound(int n, double c, double eta);

struct TciReport {
  int trials = 0;
  int used = 0;    // trials that survived the relative-entropy filter
  int strict = 0;  // trials where even the certified upper ratio fit
  uint64_t seed = 0;
  double constant = 0.0;
  double max_ratio_upper = 0.0;  // max over trials of value_upper^2 / S
  double max_ratio_lower = 0.0;  // max over trials of value_lower^2 / S
  bool pass = false;             // no trial refuted the constant via the lower ratio
};

// Samples mixtures of Haar pure states with omega and checks the claimed
// transport-entropy constant: a trial refutes it only when the certified
// transport lower bound squared exceeds constant * S beyond slack.
TciReport verify_tci_empirical(const DensityState& omega, double constant, int trials,
                               uint64_t seed, const W1Options& w1 = {});

}  // namespace qot
