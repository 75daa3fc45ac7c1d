#pragma once

// Named slice functions shared by the library and the CLI:
//
//   exp                 exponential (entire, intrinsic)
//   log                 principal logarithm, cut (-inf, 0]
//   sqrt                principal square root, cut (-inf, 0]
//   pow:N               q^N for integer N (N < 0 excludes 0)
//   poly:[c0,...,cm]    c0 + c1 q + ... + cm q^m, real coefficients
//   ratpoly:[p]/[q]     p(q) / q(q), real coefficients; excludes zeros of q
//   monoL:[a,n]         q^n a, left slice function
//   monoR:[a,n]         a q^n, right slice function
//
// The monomial coefficient a is a real number or a quaternion [a,b,c,d].
// Cut and pole exclusions carry a buffer of kCatalogBuffer.

#include "qspec/slice_function.hpp"

#include <string_view>
#include <vector>

namespace qspec {

inline constexpr double kCatalogBuffer = 1e-6;

// Throws InvalidArgument for unknown or malformed names.
StemFunction catalog_function(std::string_view name);

// Evaluates the real polynomial c0 + c1 z + ... at z.
SliceComplex polynomial_value(const std::vector<double>& coefficients, SliceComplex z);

// Complex roots of a real polynomial (coefficients lowest degree first).
std::vector<SliceComplex> polynomial_roots(const std::vector<double>& coefficients);

} // namespace qspec
