#pragma once

#include "qot/hamiltonian.hpp"
#include "qot/matrix.hpp"
#include "qot/register.hpp"

#include <vector>

namespace qot {

// Density operator tied to a register layout. Construct through make(), which
// symmetrizes, checks positivity and normalizes the trace.
struct DensityState {
  RegisterShape shape;
  CMat matrix;

  long long dim() const { return shape.dim(); }

  static DensityState make(RegisterShape shape, CMat matrix, double tol = 1e-10);
};

DensityState maximally_mixed(const RegisterShape& shape);

// Tensor product of one density matrix per site, in register order.
DensityState product_state(const RegisterShape& shape, const std::vector<CMat>& site_mats);

// Reduced state on `keep` (register order preserved).
DensityState marginal(const DensityState& state, const std::vector<int>& keep);

// exp(-beta h) / Z, with the exponent shifted so it never overflows.
DensityState gibbs_state(const RegisterShape& shape, const CMat& hamiltonian, double beta);
DensityState gibbs_state(const HypergraphHamiltonian& hamiltonian, double beta);

// Normalized projector onto eigenvalues in (energy - delta, energy].
// Eigenvalues closer than degeneracy_tol are treated as one level, so a level
// is either fully inside or fully outside the shell. Empty shell throws
// std::domain_error.
DensityState microcanonical_state(const RegisterShape& shape, const CMat& hamiltonian,
                                  double energy, double delta,
                                  double degeneracy_tol = 1e-9);

// Von Neumann entropy, natural log.
double entropy(const CMat& rho);
double entropy(const DensityState& state);

// Relative entropy S(rho || sigma). Returns +infinity when rho has weight
// outside the support of sigma.
double rel_entropy(const CMat& rho, const CMat& sigma);

// Max-relative entropy ln ||sigma^{-1/2} rho sigma^{-1/2}||, +infinity on
// support violation.
double max_divergence(const CMat& rho, const CMat& sigma);

double mutual_information(const DensityState& state, const std::vector<int>& part_a,
                          const std::vector<int>& part_b);

// I(A;B|C) = S(AC) + S(BC) - S(C) - S(ABC).
double conditional_mutual_information(const DensityState& state,
                                      const std::vector<int>& part_a,
                                      const std::vector<int>& part_b,
                                      const std::vector<int>& part_c);

// g(t) = (t+1)ln(t+1) - t ln t, the modulus in the entropy continuity bound.
double entropy_continuity_g(double t);

// |S(rho) - S(sigma)| <= g(T) + T ln(d^2 n) for T the transport distance.
double entropy_continuity_bound(double transport, int d, int n_sites);

// Inverted form: transport >= (delta_s - ln(n+1) - 1) / ln(d^2 n).
double entropy_lower_w1(double delta_s, int d, int n_sites);

}  // namespace qot
