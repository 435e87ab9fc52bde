#pragma once
// Wasserstein-1 norm on traceless Hermitian operators over a qudit register,
// with certified two-sided values: the primal side produces a feasible
// decomposition (upper bound), the dual side a Lipschitz-certified witness
// (lower bound).  Also houses the Lipschitz constant bracket and the
// state-dependent differential Lipschitz seminorm.

#include <vector>

#include "qot/channel.hpp"
#include "qot/matrix.hpp"
#include "qot/register.hpp"
#include "qot/states.hpp"

namespace qot {

struct W1Options {
  int admm_max_iters = 20000;
  double admm_residual_tol = 1e-7;
  int dual_steps = 300;
  int lip_refine = 12;        // descent budget for brackets inside the ascent loop
  int lip_refine_final = 80;  // descent budget for the final witness certificate
  double penalty = 0.0;       // initial ADMM penalty; 0 picks a scale-based default
};

struct W1Term {
  int site = 0;
  CMat part;  // traceless after tracing out `site`
};

struct W1Certificate {
  double value_upper = 0.0;
  double value_lower = 0.0;
  std::vector<W1Term> decomposition;  // sums to the input operator
  CMat witness;                       // K with certified Lipschitz upper bound <= 1
  double witness_lip = 0.0;           // that certified bound (0 for the zero witness)
  double gap() const { return value_upper - value_lower; }
};

struct LipschitzBracket {
  double lower = 0.0;  // max over sites of the site-centered spectral norm
  double upper = 0.0;  // 2 * max over sites of the best candidate value
  std::vector<int> sites;
  std::vector<CMat> site_witnesses;  // best G per site, on the complement register
  std::vector<double> site_values;   // ||H - I_v (x) G_v||_inf achieved per site
};

// Two-sided bracket for the Lipschitz constant: lower <= true <= upper <= 2*lower.
LipschitzBracket lip_const(const CMat& h, const RegisterShape& shape, int refine_iters = 60);

// Minimizes (1/2) sum_v ||X_v||_1 over decompositions X = sum_v X_v with
// Tr_v X_v = 0, by ADMM; returns the best feasible value found (upper bound).
W1Certificate w1_primal(const CMat& x, const RegisterShape& shape, const W1Options& opts = {});

// Maximizes Tr[X K] over Lipschitz-certified K; returns a lower bound with
// the rescaled witness attached.
W1Certificate w1_dual(const CMat& x, const RegisterShape& shape, const W1Options& opts = {});

// Runs both sides and merges the certificates.
W1Certificate w1_norm(const CMat& x, const RegisterShape& shape, const W1Options& opts = {});

// w1_norm on rho - sigma, plus the marginal lower-bound sanity check
// (1/2) sum_v ||rho_v - sigma_v||_1 <= value_upper.
W1Certificate w1_distance(const DensityState& rho, const DensityState& sigma,
                          const W1Options& opts = {});

struct LightConeCheck {
  double lhs = 0.0;  // certified upper value of ||Phi(X)||_W1
  double rhs = 0.0;  // 2 * max light-cone size * certified lower value of ||X||_W1
  std::vector<std::vector<int>> cones;  // per input site, the affected output sites
  int max_cone = 0;
  double input_gap = 0.0;  // duality gap of the input certificate, for assertion slack
};

// Probes the channel's light cones with single-site traceless basis elements
// and evaluates both sides of the contraction bound.  Requires an endomorphic
// channel (same input and output register).
LightConeCheck light_cone_expansion_check(const ChannelRep& phi, const CMat& x,
                                          const W1Options& opts = {});

struct LindbladOp {
  CMat op;                   // full-register matrix
  double omega = 0.0;        // modular frequency: omega L omega^{-1} = e^{-omega_k} L
  int site = 0;              // site the op is attached to
  std::vector<int> support;  // declared neighborhood containing the op's support
};

struct JumpSpec {
  CMat local;                // operator on `sites`
  std::vector<int> sites;    // embedding sites
  int site = 0;              // attachment site for per-site bookkeeping
  std::vector<int> support;  // declared neighborhood for all derived components
};

struct DifferentialStructure {
  RegisterShape shape;
  DensityState base;
  std::vector<LindbladOp> ops;

  // Splits each jump operator into modular-frequency components of the base
  // state (groups of matrix elements |u_i><u_j| with a common ln-eigenvalue
  // difference).  The base state must be full rank.
  static DifferentialStructure modular(const DensityState& base,
                                       const std::vector<JumpSpec>& jumps,
                                       double cluster_tol = 1e-8);

  double modular_defect() const;          // worst relative |omega L omega^{-1} - e^{-w} L|
  double adjoint_closure_defect() const;  // distance of {L_k} from being adjoint-closed
};

// sqrt( sum_k (e^{-omega_k/2} + e^{omega_k/2}) ||[L_k, X]||_inf^2 )
double diff_lipschitz(const CMat& x, const DifferentialStructure& ds);

struct ComparisonCheck {
  double lhs = 0.0;  // diff_lipschitz(H)
  double rhs = 0.0;  // explicit-constant bound via the Lipschitz upper bracket
};

// Verifies the declared support metadata, then assembles
// rhs = sqrt(n*Gamma) * 2*sqrt(2 e^{Omega/2}) * max_k||L_k|| * max_i|N_i| * lip_upper(H).
ComparisonCheck comparison_check(const CMat& h, const DifferentialStructure& ds);

}  // namespace qot
