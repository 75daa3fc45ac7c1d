#pragma once

// Executable identities of the S-functional calculus, evaluated on one matrix.
//
//   product          (fg)(A) = f(A) g(A) for intrinsic f with left g, right f
//                    with intrinsic g, and two intrinsic functions
//   mapping          sigma_S(f(A)) = f(sigma_S(A)) for intrinsic f
//   composition      g(f(A)) = (g o f)(A) for intrinsic f, any-kind g
//   polynomial       sigma_S(P(A)) = P(sigma_S(A)) for real polynomials, plus
//                    the control P(q) = iq on A = I where the identity must fail
//   distance         dist(alpha, sigma_S(A)) = 1 / r_S((alpha I - A)^{-1})
//   resolvent_series S-resolvent power series against the closed formulas
//
// Discrepancies are relative: ||lhs - rhs|| / (1 + ||lhs||), and sphere set
// distances divided by 1 + the largest sphere norm.

#include "qspec/qmatrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qspec {

enum class TheoremSuite { Product, Mapping, Composition, Polynomial, Distance, ResolventSeries };

std::string_view to_string(TheoremSuite suite) noexcept;
std::optional<TheoremSuite> parse_suite(std::string_view name);

struct TheoremCase {
    std::string label;
    double discrepancy = 0.0;
    // Controls pass when the discrepancy exceeds the tolerance.
    bool expected_mismatch = false;
    bool pass = false;
};

struct TheoremReport {
    std::string suite;
    std::vector<TheoremCase> cases;
    double tolerance = 1e-8;
    bool pass = false;
};

TheoremReport verify_theorems(const QMatrix& a, TheoremSuite suite, double tolerance = 1e-8);

} // namespace qspec
