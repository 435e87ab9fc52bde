#pragma once
// Hermitian eigendecomposition via cyclic Jacobi with threshold pivoting.
// Self contained and deterministic: eigenvalues come back in descending
// order, exact ties are broken by lexicographic comparison of the
// eigenvector entries, and each eigenvector is gauged so its first
// significant component is real and positive.

#include "qot/matrix.hpp"

#include <vector>

namespace qot {

struct EigResult {
  std::vector<double> eigenvalues;  // descending
  CMat vectors;                     // columns are the eigenvectors, unitary
};

// Input must be Hermitian within 1e-10 max entry deviation (it is
// symmetrized before factorization); larger deviations throw.
// Reconstruction error ||V diag(w) V^dagger - X||_max stays below
// 1e-9 * max(1, ||X||).
EigResult herm_eig(const CMat& x);

// Convenience wrappers on top of herm_eig.
double op_norm_herm(const CMat& x);        // max |eigenvalue|
double trace_norm_herm(const CMat& x);     // sum |eigenvalue|
double lambda_max_herm(const CMat& x);
double lambda_min_herm(const CMat& x);
// Operator norm (largest singular value) of a general square matrix,
// computed from the Hermitian eigenvalues of X^dagger X.
double op_norm(const CMat& x);
// Trace norm (sum of singular values) of a general square matrix.
double trace_norm(const CMat& x);
// Hermitian matrix with eigenvalues sign(lambda_i); near-zero eigenvalues
// (|lambda| <= tol) map to 0.
CMat sign_herm(const CMat& x, double tol = 0.0);
// Hermitian matrix with eigenvalues |lambda_i|.
CMat abs_herm(const CMat& x);
// Positive part: eigenvalues max(lambda, 0).
CMat pos_part_herm(const CMat& x);

CMat from_eig(const std::vector<double>& w, const CMat& v);

}  // namespace qot
