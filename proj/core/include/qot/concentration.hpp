#pragma once
// Concentration toolbox for a state with a certified transport constant:
// dual estimation of that constant, exact measurement tails, Gaussian tail
// bounds for Lipschitz observables, and the Laplace-transform check.

#include "qot/hamiltonian.hpp"
#include "qot/matrix.hpp"
#include "qot/states.hpp"
#include "qot/w1.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qot {

struct DualLowerOptions {
  int iterations = 30;        // gradient ascent steps per restart
  int restarts = 3;           // random probe directions on top of the fixed ones
  uint64_t seed = 17;
  int lip_refine = 8;         // Lipschitz bracket effort during the search
  int lip_refine_final = 48;  // bracket effort on the winning direction
};

// Lower bound on the transport cost constant of omega via
//   4 [ln Tr exp(K + ln omega) - Tr(omega K)] / ||K||_L^2
// maximized over probe directions, a scale sweep per direction and gradient
// ascent. Dividing by the upper Lipschitz bracket keeps the result a lower
// bound. Throws std::invalid_argument unless omega has full rank.
double tci_dual_lower(const DensityState& omega, const DualLowerOptions& opts = {});

// Probability that measuring obs in the state yields an eigenvalue >= r,
// or, when centered, an eigenvalue with |lambda - <obs>| >= r.
double tail_prob(const CMat& obs, const DensityState& state, double r, bool centered);

struct TailBound {
  double general = 0.0;             // valid for any observable
  std::optional<double> commuting;  // tighter form when [obs, omega] = 0
  double lip_real = 0.0;            // bracket for the conjugated real part
  double lip_imag = 0.0;            // bracket for the conjugated imaginary part
  double lip_plain = 0.0;           // bracket for the observable itself
  bool clipped = false;             // inverse sqrt of omega needed clipping
};

// Two-sided Gaussian tail bounds at radius r for a state satisfying a
// transport cost inequality with constant c.
TailBound gaussian_tail_bound(const CMat& obs, const DensityState& omega, double r,
                              double c, int lip_refine = 24);

struct TailReport {
  std::vector<double> r_grid;
  std::vector<double> exact_tail;   // centered two-sided tails
  std::vector<double> gauss_bound;  // commuting form when available
  double lipschitz_used = 0.0;
  bool commuting = false;
};

TailReport tail_report(const CMat& obs, const DensityState& omega,
                       const std::vector<double>& r_grid, double c,
                       int lip_refine = 24);

// Bound on the Lipschitz constants of the real and imaginary parts of
// w^{-1/2} O w^{1/2} when O = sum of obs_terms and w is the Gibbs state of a
// commuting Hamiltonian at inverse temperature beta:
//   4 max_i sum_{A touching i after enlargement} ||O_A|| exp(beta sum_{B cap A != 0} ||h_B||)
// where the enlargement of a support A adds every site of a Hamiltonian term
// that intersects A.
double conjugated_lip_bound(const std::vector<HamTerm>& obs_terms,
                            const HypergraphHamiltonian& ham, double beta);

struct LaplacePair {
  double lhs = 0.0;        // ln Tr(omega e^K)
  double rhs = 0.0;        // (c'/4) * bracket^2
  double lip_upper = 0.0;
};

// Evaluates both sides of ln Tr(omega e^K) <= (c'/4) ||K||_L^2 for a centered
// observable K; callers assert lhs <= rhs when c' is a certified constant.
LaplacePair laplace_bound_check(const CMat& k, const DensityState& omega,
                                double c_prime, int lip_refine = 24);

}  // namespace qot
