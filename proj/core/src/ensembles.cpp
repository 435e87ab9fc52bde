#include "qot/ensembles.hpp"

#include <cmath>
#include <stdexcept>

#include "qot/eig.hpp"
#include "qot/w1.hpp"

namespace qot {

CMat average_marginal(const DensityState& state) {
  const RegisterShape& shape = state.shape;
  if (shape.sites.empty())
    throw std::invalid_argument("average_marginal: empty register");
  CMat avg(shape.d);
  for (int v : shape.sites) avg += marginal(state, {v}).matrix;
  avg *= 1.0 / static_cast<double>(shape.num_sites());
  return avg;
}

EnsembleBounds ensemble_equivalence(const DensityState& rho, const DensityState& omega,
                                    const HypergraphHamiltonian& ham, double c_total) {
  if (!(rho.shape == omega.shape) || !(ham.shape == omega.shape))
    throw std::invalid_argument("ensemble_equivalence: register mismatch");
  if (c_total <= 0.0)
    throw std::invalid_argument("ensemble_equivalence: constant must be positive");
  const CMat h = ham.dense();
  const double e_rho = std::real(trace(rho.matrix * h));
  const double e_omega = std::real(trace(omega.matrix * h));
  const double scale = std::max(1.0, op_norm_herm(h));
  if (std::abs(e_rho - e_omega) > 1e-8 * scale)
    throw std::invalid_argument("ensemble_equivalence: average energies differ");

  EnsembleBounds out;
  out.energy_matched = true;
  out.entropy_gap = std::max(0.0, entropy(omega) - entropy(rho));
  const double n = static_cast<double>(omega.shape.num_sites());
  const double root = std::sqrt(c_total * out.entropy_gap);
  out.w1_per_site_bound = root / n;
  out.marginal_bound = 2.0 * root / n;
  return out;
}

MicrocanonicalBound microcanonical_equivalence_bound(const HypergraphHamiltonian& ham,
                                                     double beta, double energy,
                                                     double delta, double c_total,
                                                     int lip_refine) {
  if (delta <= 0.0)
    throw std::invalid_argument("microcanonical_equivalence_bound: shell width must be positive");
  if (beta < 0.0)
    throw std::invalid_argument("microcanonical_equivalence_bound: negative beta");
  if (c_total <= 0.0)
    throw std::invalid_argument("microcanonical_equivalence_bound: constant must be positive");
  const CMat h = ham.dense();
  const DensityState omega = gibbs_state(ham, beta);
  const DensityState shell =
      microcanonical_state(ham.shape, h, energy, delta);  // throws on empty shell

  MicrocanonicalBound out;
  out.shell_dim = std::llround(1.0 / lambda_max_herm(shell.matrix));
  out.exact = rel_entropy(shell.matrix, omega.matrix);
  out.lip_upper = lip_const(h, ham.shape, lip_refine).upper;
  out.bound = beta * delta +
              std::log(4.0 + 4.0 * std::sqrt(c_total * std::log(4.0)) * out.lip_upper / delta);
  return out;
}

}  // namespace qot
