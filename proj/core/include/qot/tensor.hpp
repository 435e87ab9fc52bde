#pragma once
// Embedding and partial-trace plumbing for multi-qudit registers, plus the
// per-site averaging/centering maps used throughout the transport solvers:
//   site_average(X, v)  = I_v/d (x) Tr_v X     (keeps the register dimension)
//   site_centered(X, v) = X - site_average(X, v)
// Site v of a register is a position in its ordered label list; the helpers
// below all take labels.

#include "qot/matrix.hpp"
#include "qot/register.hpp"

#include <vector>

namespace qot {

// Lift `op`, acting on the sites of `op_shape` (in that order), to the full
// register with identity elsewhere.  op_shape.sites must be a subset of
// full.sites but may appear in any order.
CMat embed(const CMat& op, const RegisterShape& op_shape, const RegisterShape& full);

// Trace out `traced_labels`; the result lives on full.complement(traced_labels).
CMat partial_trace(const CMat& op, const RegisterShape& full,
                   const std::vector<int>& traced_labels);

CMat site_average(const CMat& op, const RegisterShape& full, int site_label);
CMat site_centered(const CMat& op, const RegisterShape& full, int site_label);

// Same maps for a block of sites: I_A/d^|A| (x) Tr_A X and its complement.
CMat block_average(const CMat& op, const RegisterShape& full, const std::vector<int>& labels);

CMat matrix_unit(int dim, int r, int c);

// Hermitian traceless basis of a single site (generalized Gell-Mann set,
// d^2-1 elements, Tr[B_i B_j] = 2 delta_ij).
std::vector<CMat> traceless_site_basis(int d);

// Pauli matrices for qubit helpers and tests.
CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

}  // namespace qot
