#pragma once
// Matrix functions of Hermitian operators through the eigendecomposition:
// powers with complex exponents, exp, log, plus the perturbation inequality
// ||A^z - B^z|| <= |z| * M^{1+|Re z|} * ||A - B|| for positive definite A, B
// with M = max(||A||, ||A^{-1}||, ||B||, ||B^{-1}||).

#include "qot/eig.hpp"
#include "qot/matrix.hpp"

namespace qot {

// A^z for Hermitian positive definite A.  Throws std::domain_error when the
// smallest eigenvalue is <= 1e-12 (no silent regularization on this path).
CMat mat_power(const CMat& a, cxd z);

// A^z where eigenvalues below rel_floor * max(lambda_max, 0) are clipped up
// to that floor.  Sets *clipped when the floor was engaged.  Used inside
// recovery-map construction where strict positivity can fail at the working
// precision.
CMat mat_power_clipped(const CMat& a, cxd z, double rel_floor, bool* clipped);

// Same functions evaluated from a cached eigendecomposition.
CMat mat_power_from_eig(const EigResult& e, cxd z);
CMat mat_power_from_eig_clipped(const EigResult& e, cxd z, double rel_floor, bool* clipped);

CMat mat_exp_herm(const CMat& a);
// log of a positive definite Hermitian matrix; eigenvalues are floored at
// `floor_eig` (default refuses values <= 1e-12 like mat_power).
CMat mat_log_herm(const CMat& a);

struct PowerPerturbation {
  double lhs = 0.0;   // ||A^z - B^z||
  double rhs = 0.0;   // |z| * M^{1+|Re z|} * ||A - B||
  bool holds = false; // lhs <= rhs + slack
};

PowerPerturbation power_perturbation_check(const CMat& a, const CMat& b, cxd z,
                                           double slack = 1e-9);

}  // namespace qot
