#pragma once

#include "qspec/qmatrix.hpp"

#include <vector>

namespace qspec {

// Eigenvalues of a dense complex matrix by Householder reduction to upper
// Hessenberg form followed by single-shift complex QR iteration with
// Wilkinson shifts and deflation.
//
// Every returned value is checked against the accuracy contract
//   sigma_min(lambda I - M) <= tol * ||M||_F
// and NoConvergence is thrown when the iteration cap is hit or the contract
// fails. Non-finite input raises InvalidArgument.
std::vector<SliceComplex> eigenvalues(const ComplexMatrix& m, double tol = 1e-10);

// Same iteration without the residual check.
std::vector<SliceComplex> eigenvalues_unchecked(const ComplexMatrix& m);

// sigma_min(lambda I - M).
double eigen_residual(const ComplexMatrix& m, SliceComplex lambda);

} // namespace qspec
