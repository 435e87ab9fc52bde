#pragma once
// Quantum channels stored as Choi matrices.  Convention:
//   J = sum_{ij} |i><j|_in (x) Phi(|i><j|),  composite row index = i*out_dim + o.
// Trace preservation then reads Tr_out J = I_in, and complete positivity J >= 0.

#include <vector>

#include "qot/matrix.hpp"
#include "qot/register.hpp"
#include "qot/states.hpp"

namespace qot {

struct ChannelRep {
  RegisterShape in_shape;
  RegisterShape out_shape;
  CMat choi;

  int in_dim() const { return static_cast<int>(in_shape.dim()); }
  int out_dim() const { return static_cast<int>(out_shape.dim()); }

  // Validates the Choi matrix: Hermitian, positive semidefinite up to tol_cp,
  // trace preserving up to tol_tp.  Throws std::invalid_argument on violation.
  static ChannelRep make(RegisterShape in, RegisterShape out, CMat choi,
                         double tol_cp = 1e-8, double tol_tp = 1e-7);

  // Builds the Choi matrix from Kraus operators (out_dim x in_dim each),
  // optionally weighted: Phi(rho) = sum_k w_k K_k rho K_k^dag.
  static ChannelRep from_kraus(RegisterShape in, RegisterShape out,
                               const std::vector<CMat>& kraus,
                               const std::vector<double>& weights = {},
                               double tol_cp = 1e-8, double tol_tp = 1e-7);

  CMat apply(const CMat& x) const;          // Schroedinger picture
  CMat apply_adjoint(const CMat& y) const;  // Heisenberg picture
  // (Phi (x) id_ref)(x) with a reference system of dimension in_dim appended
  // on the right; input and output composite indices are (sys, ref).
  CMat apply_doubled(const CMat& x) const;
  CMat apply_doubled_adjoint(const CMat& y) const;

  // Composition: first this channel, then `next`.
  ChannelRep then(const ChannelRep& next) const;

  double cp_defect() const;  // max(0, -lambda_min(choi))
  double tp_defect() const;  // max-entry deviation of Tr_out(choi) from identity
};

ChannelRep identity_channel(const RegisterShape& shape);
ChannelRep unitary_channel(const RegisterShape& shape, const CMat& u);
// rho -> Tr[rho] * target, i.e. every input is replaced by the fixed state.
ChannelRep replacer_channel(const RegisterShape& in, const DensityState& target);
ChannelRep partial_trace_channel(const RegisterShape& full, const std::vector<int>& traced);
// rho -> rho (x) appended, arranged on the union register `out` (which must
// consist of exactly the sites of `in` plus the appended state's sites).
ChannelRep append_state_channel(const RegisterShape& in, const DensityState& appended,
                                const RegisterShape& out);
// Convex combination of channels with matching registers; uniform weights
// when none are given.
ChannelRep mixture_channel(const std::vector<ChannelRep>& parts,
                           const std::vector<double>& weights = {});

}  // namespace qot
