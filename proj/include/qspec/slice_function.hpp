#pragma once

/**
 * Slice functions represented by their stem functions.
 *
 * A slice function on an axially symmetric set U is determined by two
 * quaternion-valued functions f0, f1 of the parameters (alpha, beta), with
 * f(alpha + beta I) = f0 + I f1 (left kind) or f0 + f1 I (right kind) for
 * every imaginary unit I. Compatibility requires f0 even and f1 odd in beta;
 * StemFunction enforces this by only ever calling the user callables with
 * beta >= 0 and extending by parity. Intrinsic functions have real-valued
 * stems, where both kinds agree.
 *
 * User callables must be pure and reentrant.
 */

#include "qspec/quaternion.hpp"

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace qspec {

enum class SliceKind { Left, Right, Intrinsic };

std::string_view to_string(SliceKind kind) noexcept;

struct ParameterBox {
    double alpha_min = -4.0;
    double alpha_max = 4.0;
    double beta_min = 0.0;
    double beta_max = 4.0;
};

/// Parameter set {(alpha, beta) : alpha + beta S inside U} of an axially
/// symmetric open set U. Membership only depends on |beta|.
///
/// The set is the plane minus a list of excluded features (rays of the real
/// axis, points mirrored across it), each inflated by a buffer, further
/// intersected with optional predicates. Excluded features are handled
/// exactly by the disk and clearance queries; predicates are sampled.
class AxSymDomain {
public:
    using Predicate = std::function<bool(double alpha, double beta)>;

    AxSymDomain() = default;
    explicit AxSymDomain(ParameterBox box, std::string description = "H");

    // Removes the real ray (-inf, end].
    AxSymDomain& exclude_ray(double end, double buffer);
    // Removes the sphere through point (alpha + |beta| i).
    AxSymDomain& exclude_point(SliceComplex point, double buffer);
    AxSymDomain& restrict_to(Predicate predicate, const std::string& description);

    [[nodiscard]] bool contains(double alpha, double beta) const;
    [[nodiscard]] bool contains(SliceComplex z) const { return contains(z.real(), z.imag()); }
    // Whether the closed disk (in the slice plane) lies in the domain.
    [[nodiscard]] bool contains_disk(SliceComplex center, double radius) const;
    // Distance from z to the nearest excluded feature (buffer included);
    // +inf without exclusions. Predicates are not considered.
    [[nodiscard]] double clearance(SliceComplex z) const;
    [[nodiscard]] bool has_exclusions() const { return !rays_.empty() || !points_.empty(); }

    [[nodiscard]] const ParameterBox& box() const noexcept { return box_; }
    [[nodiscard]] const std::string& description() const noexcept { return description_; }

    friend AxSymDomain intersect(const AxSymDomain& a, const AxSymDomain& b);

private:
    struct Ray {
        double end;
        double buffer;
    };
    struct Point {
        SliceComplex point;
        double buffer;
    };

    ParameterBox box_{};
    std::string description_ = "H";
    std::vector<Ray> rays_;
    std::vector<Point> points_;
    std::vector<Predicate> predicates_;
};

using StemComponent = std::function<Quaternion(double alpha, double beta)>;
using SliceFunction = std::function<SliceComplex(SliceComplex)>;

class StemFunction {
public:
    StemFunction(StemComponent f0, StemComponent f1, AxSymDomain domain, SliceKind kind, std::string name);

    // Parity-extended components: f0(a, -b) = f0(a, b), f1(a, -b) = -f1(a, b).
    [[nodiscard]] Quaternion f0(double alpha, double beta) const;
    [[nodiscard]] Quaternion f1(double alpha, double beta) const;

    [[nodiscard]] SliceKind kind() const noexcept { return kind_; }
    [[nodiscard]] const AxSymDomain& domain() const noexcept { return domain_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    StemComponent f0_;
    StemComponent f1_;
    AxSymDomain domain_;
    SliceKind kind_;
    std::string name_;
};

// f(q). Throws OutOfDomain when (Re q, |Im q|) is outside the domain.
Quaternion eval(const StemFunction& f, const Quaternion& q);

// Intrinsic stem of a holomorphic h with h(conj z) = conj(h(z)).
// Throws NotIntrinsic when the symmetry fails at one of 64 sample points.
StemFunction from_holomorphic_intrinsic(SliceFunction h, AxSymDomain domain, std::string name = "h");

// Intrinsic parts f_1..f_4 with f = f_1 + i f_2 + j f_3 + k f_4 (right kind)
// or f = f_1 + f_2 i + f_3 j + f_4 k (left kind).
std::array<StemFunction, 4> decompose(const StemFunction& f);

// Inverse of decompose at one point: combines the four part values with the
// basis units on the side dictated by kind.
Quaternion recombine(SliceKind kind, const std::array<Quaternion, 4>& part_values);

struct ValidationReport {
    double compatibility_residual = 0.0;
    double cauchy_riemann_residual = 0.0;
    double intrinsic_residual = 0.0;
    std::size_t samples = 0;
    bool compatibility_ok = true;
    bool cauchy_riemann_ok = true;
    bool intrinsic_ok = true;

    [[nodiscard]] bool pass() const { return compatibility_ok && cauchy_riemann_ok && intrinsic_ok; }
};

// Finite-difference check of the Cauchy-Riemann system, of f1(alpha, 0) = 0
// and (for intrinsic kind) of real-valued stems, over the domain box.
ValidationReport validate(const StemFunction& f, double grid_step, double fd_step, double tol);
// Defaults: 32 x 32 cells, fd_step 1e-5 times the box size, tol 1e-6.
ValidationReport validate(const StemFunction& f);

// z -> f0 + i f1 on C_i for intrinsic f; throws NotIntrinsic otherwise.
SliceFunction restrict_to_slice(const StemFunction& f);

// Pointwise product fg. Defined for (intrinsic, intrinsic), (intrinsic, left)
// and (right, intrinsic), the pairs whose product is again a slice function of
// a known kind. Throws InvalidArgument otherwise.
StemFunction multiply(const StemFunction& f, const StemFunction& g);

// g o f for intrinsic f. Throws NotIntrinsic otherwise.
StemFunction compose(const StemFunction& g, const StemFunction& f);

} // namespace qspec
