#pragma once
// Diamond-norm bounds for differences of channels, and the transport
// contraction coefficient of the site-rebuild channel of a commuting Gibbs
// state.  The contraction upper bound comes from a per-neighborhood
// diamond-norm chain; the lower bound from certified transport values on the
// best single-site witness found by coordinate ascent.

#include <cstdint>
#include <optional>
#include <vector>

#include "qot/channel.hpp"
#include "qot/hamiltonian.hpp"
#include "qot/w1.hpp"

namespace qot {

struct DiamondOptions {
  int upper_iters = 120;    // descent budget for the feasible-cone polish
  int lower_restarts = 8;   // alternating-maximization restarts
  int lower_iters = 60;     // sweeps per restart
  double target_gap = 1e-6; // stop polishing once upper - lower falls below
  uint64_t seed = 7;
};

struct DiamondBounds {
  double lower = 0.0;  // trace norm of the best doubled input found
  double upper = 0.0;  // objective of an exactly-feasible dual point
  bool tight = false;  // gap at or below the requested target
};

// Two-sided bounds on the diamond norm of (a - b).  Both channels must share
// input and output registers.  The upper bound is certified: the returned
// dual point is re-checked for feasibility after the last iteration.
DiamondBounds diamond_norm_diff(const ChannelRep& a, const ChannelRep& b,
                                const DiamondOptions& opts = {});

// Inverse of x -> x e^x on [0, inf), by Newton to |w e^w - x| <= 1e-14.
double lambert_w(double x);

struct BetaCritical {
  double beta_c = 0.0;
  int neighborhood = 0;        // N, the largest interaction neighborhood
  int d = 0;                   // local dimension
  double max_term_norm = 0.0;  // largest interaction-term spectral norm
};

// Threshold inverse temperature below which the rebuild channel provably
// contracts: W(1/(16 d^3)) / (5 N max_norm).  Requires N > 1; a single-site
// neighborhood leaves no interaction scale to set the threshold.
BetaCritical beta_critical(int neighborhood, int d, double max_term_norm);

// Transport-entropy constant implied by a contraction rate kappa > 0 on a
// register of n sites with neighborhoods of size at most N.
double tci_curvature_bound(int n, int neighborhood, double kappa);

struct ContractionOptions {
  double tol = 1e-8;          // quadrature tolerance for the rebuild maps
  int restarts = 24;          // witness searches per site
  int sweeps = 120;           // coordinate-ascent cap per restart
  uint64_t seed = 11;
  W1Options w1;               // effort for certifying the witness values
  DiamondOptions diamond;
};

struct ContractionEstimate {
  double upper = 0.0;          // sound bound on the transport contraction
  double lower = 0.0;          // certified ratio of the best witness
  double kappa_implied = 0.0;  // n * (1 - upper)
  int neighborhood_max = 0;    // N
  int witness_site = -1;
  std::optional<CMat> witness;        // the operator achieving `lower`
  std::vector<double> site_upper;     // per-site chain values; max is `upper`
  std::vector<double> diamond_terms;  // per-site rebuild-vs-replace diamond uppers
};

// Contraction coefficient of the averaged site-rebuild channel of the Gibbs
// state of `ham` at inverse temperature beta.  The Hamiltonian terms must
// pairwise commute; locality of the rebuild maps relies on it.
ContractionEstimate contraction_coefficient(const HypergraphHamiltonian& ham, double beta,
                                            const ContractionOptions& opts = {});

}  // namespace qot
