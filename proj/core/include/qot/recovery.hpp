#pragma once
// Rotated recovery maps of a reference state: the channel that rebuilds a
// larger marginal from a smaller one through complex powers of the reference
// marginals, integrated over the canonical weight density.  Implemented as a
// Kraus family over quadrature nodes; the Choi matrix is materialized
// whenever dim(in)*dim(out) is small enough to hold comfortably, and the
// Kraus closure remains available either way.

#include <optional>
#include <vector>

#include "qot/channel.hpp"
#include "qot/quadrature.hpp"
#include "qot/states.hpp"

namespace qot {

// Largest dim(in)*dim(out) for which the Choi matrix is materialized.
inline constexpr long long kRecoveryChoiLimit = 1LL << 12;

struct RecoveryMap {
  DensityState base;           // reference joint state on kept + recovered
  std::vector<int> kept;       // sites the input lives on
  std::vector<int> recovered;  // sites the map reconstructs
  RegisterShape in_shape;
  RegisterShape out_shape;
  QuadratureRule rule;
  bool clipped = false;   // eigenvalue floor engaged on the reference state
  std::vector<CMat> kraus;  // sqrt-weighted, dim(out) x dim(in)
  std::optional<ChannelRep> channel;

  CMat apply(const CMat& x) const;  // via the Kraus family
};

// The channel recovering `recovered` from `kept` relative to omega's marginal
// on the union.  Trace preservation is exact analytically; the quadrature
// tolerance governs how well the returned map matches the defining integral,
// and the fixed point apply(omega_kept) = omega_union is checked to 10*tol.
RecoveryMap petz_rotated(const DensityState& omega, const std::vector<int>& kept,
                         const std::vector<int>& recovered, double tol = 1e-8);

// Trace out site v, then recover it from the rest: an omega-preserving
// channel on the full register.
ChannelRep psi_v(const DensityState& omega, int v, double tol = 1e-8);

// Uniform average of psi_v over the register's sites.
ChannelRep psi_avg(const DensityState& omega, double tol = 1e-8);

struct RecoverabilityGap {
  double entropy_drop = 0.0;  // S(rho_AB||omega_AB) - S(rho_A||omega_A)
  double pinsker_rhs = 0.0;   // (1/2) || rho_AB - recover(rho_A) ||_1^2
};

// The two sides of the recoverability inequality: how much relative entropy
// the subsystem carries versus how badly the recovery map misses.
RecoverabilityGap recoverability_gap(const DensityState& rho, const DensityState& omega,
                                     const std::vector<int>& kept,
                                     const std::vector<int>& recovered, double tol = 1e-8);

struct ChainRecoveryBounds {
  double rel_entropy_total = 0.0;  // S(rho||omega)
  double sum_dists = 0.0;          // total recovery defect along the chain
  double bound1 = 0.0;             // sum_dists^2 / (2m)
  double bound2 = 0.0;             // (sum_dists / (2m))^2
  int blocks = 0;
};

// Rebuilds rho block by block with the recovery maps of omega and accumulates
// the trace-norm defects.  Verifies rel_entropy_total >= bound1 and
// bound2 <= 1 - exp(-rel_entropy_total / m) up to quadrature slack, throwing
// std::logic_error otherwise.
ChainRecoveryBounds chain_recovery_bounds(const DensityState& rho, const DensityState& omega,
                                          const std::vector<std::vector<int>>& partition,
                                          double tol = 1e-8);

// With vanishing conditional mutual information across the split, the
// recovery channel for `block` must ignore everything left of the previous
// block; compared on Choi matrices against the identity-extended reduced map.
// Blocks are indexed from zero.  Conditional mutual information above tol
// throws std::domain_error (precondition, not a verification failure).
bool markov_locality_check(const DensityState& omega,
                           const std::vector<std::vector<int>>& partition, int block,
                           double tol = 1e-8);

}  // namespace qot
