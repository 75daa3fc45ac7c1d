#pragma once

/**
 * S-functional calculus for quaternionic matrices.
 *
 * Two independent routes compute f(A) for an intrinsic f:
 *  - complex path: the Riesz-Dunford integral
 *      (1/2 pi i) \oint h(lambda) (lambda I - chi(A))^{-1} d lambda
 *    of h = f restricted to C_i, mapped back through the complex adjoint;
 *  - S-contour: (1/2 pi) \oint S_L^{-1}(s, A) ds_i f(s) over the same contour
 *    in C_i, with ds_i = -i ds.
 * Contours are unions of positively oriented circles, integrated with the
 * trapezoidal rule and node doubling.
 *
 * Left and right slice functions go through their four intrinsic parts.
 */

#include "qspec/qmatrix.hpp"
#include "qspec/slice_function.hpp"
#include "qspec/spectrum.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qspec {

struct Circle {
    SliceComplex center;
    double radius;
};

// Pairwise disjoint, positively oriented circles, closed under conjugation.
struct SliceContour {
    std::vector<Circle> circles;
};

// One circle of radius margin around each slice point of every sphere;
// overlapping circles are replaced by their smallest enclosing circle.
// Throws DomainTooTight when a disk is not inside the domain, and
// InvalidArgument for margin <= 0.
SliceContour build_contour(const SphereSet& spheres, const AxSymDomain& domain, double margin);

// min(0.25 (1 + max sphere norm), half the clearance of the nearest sphere
// from the domain exclusions, 0.4 times the distance between any two slice
// points of the spectrum that are more than 5% of the first bound apart).
double default_margin(const SphereSet& spheres, const AxSymDomain& domain);

struct QuadratureOptions {
    std::size_t initial_nodes = 32;  // per circle
    std::size_t max_nodes = std::size_t{1} << 16;
    double rel_tol = 1e-10;
};

struct QuadratureResult {
    ComplexMatrix value;
    std::size_t nodes = 0;  // per circle at termination
    double last_change = 0.0;  // Frobenius norm of the last doubling step
};

// Trapezoidal Riesz-Dunford integral of h over the contour. Throws
// SingularNode when a node hits an eigenvalue of M and QuadratureStalled when
// node doubling reaches max_nodes without converging.
QuadratureResult riesz_dunford(const ComplexMatrix& m, const SliceFunction& h, const SliceContour& contour,
                               const QuadratureOptions& options = {});

enum class CalculusMethod { ComplexPath, SContour };

struct CalculusOptions {
    std::optional<double> margin;  // default_margin() when empty
    QuadratureOptions quadrature{};
};

struct CalculusResult {
    QMatrix value;
    SliceContour contour;
    double margin = 0.0;
    std::size_t nodes = 0;
    double structure_residual = 0.0;  // complex path only
};

// Complex path with an arbitrary slice function h. The block structure of the
// result is checked at 1e-9 relative and StructureViolation thrown otherwise,
// which is what happens when h is not intrinsic.
CalculusResult complex_path(const QMatrix& a, const SliceFunction& h, const AxSymDomain& domain,
                            const CalculusOptions& options = {});

// Throws NotIntrinsic for non-intrinsic f. Without an explicit margin the
// contour is retried with halved margins on DomainTooTight.
CalculusResult calculus_intrinsic_detailed(const QMatrix& a, const StemFunction& f, CalculusMethod method,
                                           const CalculusOptions& options = {});
QMatrix calculus_intrinsic(const QMatrix& a, const StemFunction& f,
                           CalculusMethod method = CalculusMethod::ComplexPath, const CalculusOptions& options = {});

enum class SidedMethod { Decomposition, SContour };

// f(A) for a left or right slice function f of the given kind. Decomposition
// combines f_m(A) of the four intrinsic parts; SContour integrates
// (1/2 pi) \oint S_L^{-1}(s, A) ds_i f(s) (left) or
// (1/2 pi) \oint f(s) ds_i S_R^{-1}(s, A) (right) directly.
// Intrinsic f is accepted for either kind. Throws InvalidArgument when the
// kinds disagree.
QMatrix calculus_sided(const QMatrix& a, const StemFunction& f, SliceKind kind,
                       SidedMethod method = SidedMethod::Decomposition, const CalculusOptions& options = {});

// Scaling and squaring with a Taylor series truncated at relative 1e-16.
QMatrix op_exp(const QMatrix& a);

// Principal logarithm. Throws BranchCut when a sphere of the spectrum lies
// within kCatalogBuffer of (-inf, 0].
QMatrix op_log(const QMatrix& a);

// exp(log(A) / m) for m >= 1.
QMatrix op_nth_root(const QMatrix& a, int m);

} // namespace qspec
