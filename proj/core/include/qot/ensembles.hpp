#pragma once
// Ensemble equivalence bounds: how far a state with matched average energy
// can sit from the Gibbs state, in transport distance and in averaged
// marginal trace distance, plus the microcanonical shell bound.

#include "qot/hamiltonian.hpp"
#include "qot/matrix.hpp"
#include "qot/states.hpp"

namespace qot {

// (1/n) sum of the single-site marginals.
CMat average_marginal(const DensityState& state);

struct EnsembleBounds {
  double w1_per_site_bound = 0.0;  // sqrt(c_total * entropy_gap) / n
  double marginal_bound = 0.0;     // 2 sqrt(c_total * entropy_gap) / n
  double entropy_gap = 0.0;        // S(omega) - S(rho), clamped at zero
  bool energy_matched = false;
};

// Bounds for a state rho against the Gibbs state omega of `ham`, assuming
// omega satisfies a transport cost inequality with constant c_total. The
// average energies must agree to 1e-8 * ||H|| or std::invalid_argument is
// thrown, since the entropy gap only equals the relative entropy then.
EnsembleBounds ensemble_equivalence(const DensityState& rho, const DensityState& omega,
                                    const HypergraphHamiltonian& ham, double c_total);

struct MicrocanonicalBound {
  double bound = 0.0;       // beta*delta + ln(4 + 4 sqrt(c_total ln 4) ||H||_L / delta)
  double exact = 0.0;       // S(shell || gibbs)
  double lip_upper = 0.0;   // Lipschitz bracket of the Hamiltonian
  long long shell_dim = 0;  // number of eigenstates in the shell
};

// Bound on the relative entropy between the microcanonical state on the
// shell (energy - delta, energy] and the Gibbs state at beta, evaluated with
// a certified transport constant c_total for that Gibbs state. Throws
// std::domain_error when the shell is empty.
MicrocanonicalBound microcanonical_equivalence_bound(const HypergraphHamiltonian& ham,
                                                     double beta, double energy,
                                                     double delta, double c_total,
                                                     int lip_refine = 40);

}  // namespace qot
