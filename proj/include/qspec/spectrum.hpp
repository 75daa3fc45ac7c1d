#pragma once

/**
 * S-spectrum of quaternionic matrices.
 *
 * sigma_S(A) is the set of q for which Q_q(A) = A^2 - 2 Re(q) A + |q|^2 I is
 * singular. It is the union of the spheres through the eigenvalues of the
 * complex adjoint chi(A), which is how s_spectrum computes it. classify()
 * answers the same question independently, from the smallest singular value
 * of the real representation of Q_q(A).
 *
 * In finite dimension the residual and continuous spectra are empty and the
 * approximate-point and surjectivity spectra coincide with the point
 * spectrum, so a point is either in the resolvent set or an S-eigenvalue.
 */

#include "qspec/qmatrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qspec {

struct SphereEntry {
    Sphere sphere;
    int multiplicity = 1;
};

class SphereSet {
public:
    SphereSet() = default;
    SphereSet(std::vector<SphereEntry> entries, double tolerance);

    [[nodiscard]] const std::vector<SphereEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] double tolerance() const noexcept { return tolerance_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] int total_multiplicity() const;
    [[nodiscard]] double max_norm() const;

    // Whether q lies on one of the spheres within tol (defaults to tolerance()).
    [[nodiscard]] bool contains(const Quaternion& q, std::optional<double> tol = std::nullopt) const;

    // Spheres repeated by multiplicity, sorted by (re, im_norm).
    [[nodiscard]] std::vector<Sphere> expanded() const;

private:
    std::vector<SphereEntry> entries_;
    double tolerance_ = 0.0;
};

// Largest pairwise sphere distance after an optimal matching of the
// multiplicity-expanded sets; +inf if total multiplicities differ.
double sphere_set_distance(const SphereSet& a, const SphereSet& b);
double sphere_set_distance(const std::vector<Sphere>& a, const std::vector<Sphere>& b);

// Groups points by sphere with clustering tolerance tol. Real clusters
// (im_norm <= tol) get half their count as multiplicity (OddRealMultiplicity
// when odd); other clusters count their members with positive imaginary part.
SphereSet spheres_from_eigenvalues(const std::vector<SliceComplex>& values, double tol);

// Default clustering tolerance 1e-8 (1 + ||A||).
double default_sphere_tolerance(const QMatrix& a);

SphereSet s_spectrum(const QMatrix& a, std::optional<double> tol = std::nullopt);

enum class RadiusMethod { Eig, Power };

double s_spectral_radius(const QMatrix& a, RadiusMethod method = RadiusMethod::Eig);

struct PowerRadius {
    double estimate;
    int squarings;
};

// ||A^(2^m)||^(1/2^m), stopped once successive estimates agree within 1%.
PowerRadius power_spectral_radius(const QMatrix& a, int max_squarings = 60);

enum class PencilMethod { Direct, Neumann };

struct SeriesResult {
    QMatrix value;
    std::size_t terms = 0;
    // max |Im a_n| over the computed Neumann coefficients (pencil series only).
    double max_coefficient_imag = 0.0;
};

// Real coefficients a_n = sum_{k=0}^{n} q^{-k-1} conj(q)^{-n+k-1}, computed in
// quaternion arithmetic (their imaginary parts are rounding only).
std::vector<Quaternion> neumann_coefficients(const Quaternion& q, std::size_t count);

// Series truncation: stop after two consecutive terms with Frobenius norm
// below tol (1 + ||partial sum||); at most kMaxSeriesTerms terms.
inline constexpr std::size_t kMaxSeriesTerms = 1'000'000;

SeriesResult q_pencil_inverse_series(const QMatrix& a, const Quaternion& q, double tol);
QMatrix q_pencil_inverse(const QMatrix& a, const Quaternion& q, PencilMethod method, double tol = 1e-14);

enum class Side { Left, Right };
enum class ResolventMethod { Formula, Series };

// S_L^{-1}(s, A) = -Q_s(A)^{-1} (A - conj(s) I) and
// S_R^{-1}(s, A) = -(A - conj(s) I) Q_s(A)^{-1}, or their power series.
QMatrix s_resolvent(const QMatrix& a, const Quaternion& s, Side side, ResolventMethod method, double tol = 1e-14);
SeriesResult s_resolvent_series(const QMatrix& a, const Quaternion& s, Side side, double tol);

enum class Verdict { Resolvent, PointSpectrum };

struct Classification {
    Verdict verdict;
    double smallest_singular_value;
    double threshold;
};

// Threshold 1e-10 (1 + ||A||^2) on sigma_min of the real representation of Q_q(A).
Classification classify(const QMatrix& a, const Quaternion& q);

struct DistanceReport {
    double geometric;     // min over spheres of |alpha - sphere|
    double via_resolvent;  // 1 / r_S((alpha I - A)^{-1})
};

// Throws AlphaInSpectrum when alpha lies on a real sphere of sigma_S(A).
DistanceReport distance_to_spectrum(const QMatrix& a, double alpha);

} // namespace qspec
