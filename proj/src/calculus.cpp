#include "qspec/calculus.hpp"

#include "qspec/catalog.hpp"
#include "qspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qspec {

namespace {

// Slice points closer than this fraction of the base margin share a circle.
constexpr double kMergeFraction = 0.05;

bool overlaps(const Circle& x, const Circle& y)
{
    return std::abs(x.center - y.center) <= x.radius + y.radius;
}

Circle mirror(const Circle& c) { return {std::conj(c.center), c.radius}; }

// Smallest circle containing both.
Circle enclose(const Circle& x, const Circle& y)
{
    const double d = std::abs(y.center - x.center);
    if (d + y.radius <= x.radius) {
        return x;
    }
    if (d + x.radius <= y.radius) {
        return y;
    }
    const double r = 0.5 * (d + x.radius + y.radius);
    return {x.center + (y.center - x.center) / d * (r - x.radius), r};
}

// Moves c to the closed upper half plane; a circle meeting its own mirror
// image becomes the real-centred circle enclosing both.
Circle fold(Circle c)
{
    if (c.center.imag() < 0.0) {
        c = mirror(c);
    }
    if (c.center.imag() <= c.radius) {
        return {{c.center.real(), 0.0}, c.center.imag() + c.radius};
    }
    return c;
}

// Complex-adjoint solve (lambda I - M)^{-1} at a quadrature node.
template <class Matrix>
Matrix node_inverse(const Matrix& shifted, SliceComplex node)
{
    const Eigen::PartialPivLU<Matrix> lu(shifted);
    if (!(lu.rcond() > kSingularRcond)) {
        throw Error(ErrorCode::SingularNode, "quadrature node (" + std::to_string(node.real()) + ", " +
                                                 std::to_string(node.imag()) + ") hits the spectrum");
    }
    return lu.inverse();
}

// Q_s(A)^{-1} at a node s in C_i.
QMatrix pencil_inverse_at_node(const QMatrix& a, SliceComplex s)
{
    const ComplexMatrix q = complex_adjoint(q_pencil(a, Quaternion{s}));
    return from_complex_adjoint(node_inverse(q, s), 1e-6);
}

QMatrix left_resolvent_at_node(const QMatrix& a, SliceComplex s)
{
    const QMatrix shifted = a - QMatrix::scalar(a.size(), Quaternion{std::conj(s)});
    return -(pencil_inverse_at_node(a, s) * shifted);
}

QMatrix right_resolvent_at_node(const QMatrix& a, SliceComplex s)
{
    const QMatrix shifted = a - QMatrix::scalar(a.size(), Quaternion{std::conj(s)});
    return -(shifted * pencil_inverse_at_node(a, s));
}

// Trapezoidal rule over every circle with node doubling. term(node, center)
// returns the integrand already multiplied by (node - center), so the
// N-node estimate is the plain average over nodes.
template <class Value, class Term>
std::pair<Value, std::pair<std::size_t, double>> trapezoid(const SliceContour& contour,
                                                           const QuadratureOptions& options, Value zero, Term&& term)
{
    if (contour.circles.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty contour");
    }
    auto sweep = [&](std::size_t count, double offset, double& abs_sum) {
        Value sum = zero;
        for (const Circle& circle : contour.circles) {
            for (std::size_t k = 0; k < count; ++k) {
                const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + offset) / count;
                const SliceComplex node = circle.center + std::polar(circle.radius, theta);
                const Value t = term(node, circle.center);
                abs_sum += t.norm();
                sum = sum + t;
            }
        }
        return sum;
    };

    std::size_t nodes = std::max<std::size_t>(options.initial_nodes, 4);
    double abs_sum = 0.0;
    Value raw = sweep(nodes, 0.0, abs_sum);
    Value estimate = raw * (1.0 / static_cast<double>(nodes));
    double change = std::numeric_limits<double>::infinity();
    while (2 * nodes <= options.max_nodes) {
        raw = raw + sweep(nodes, 0.5, abs_sum);
        nodes *= 2;
        Value refined = raw * (1.0 / static_cast<double>(nodes));
        change = (refined - estimate).norm();
        estimate = std::move(refined);
        // Relative test plus a rounding floor for results that cancel to ~0.
        const double floor = 100.0 * std::numeric_limits<double>::epsilon() * abs_sum / static_cast<double>(nodes);
        if (change <= options.rel_tol * estimate.norm() + floor) {
            return {std::move(estimate), {nodes, change}};
        }
    }
    throw Error(ErrorCode::QuadratureStalled, "no convergence with " + std::to_string(nodes) +
                                                  " nodes per circle (last change " + std::to_string(change) + ")");
}

std::pair<SliceContour, double> contour_for(const SphereSet& spectrum, const AxSymDomain& domain,
                                            const CalculusOptions& options)
{
    if (options.margin) {
        return {build_contour(spectrum, domain, *options.margin), *options.margin};
    }
    double margin = default_margin(spectrum, domain);
    constexpr int kRetries = 6;
    for (int attempt = 0;; ++attempt) {
        try {
            return {build_contour(spectrum, domain, margin), margin};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DomainTooTight || attempt == kRetries) {
                throw;
            }
            margin *= 0.5;
        }
    }
}

QMatrix s_contour_integral(const QMatrix& a, const SliceContour& contour, const QuadratureOptions& options,
                           const StemFunction& f, SliceKind kind, std::size_t& nodes)
{
    auto [value, info] = trapezoid(contour, options, QMatrix::zero(a.size()), [&](SliceComplex s, SliceComplex c) {
        // ds_i = -i ds = (s - c) dtheta on a circle centred at c.
        const Quaternion ds{s - c};
        const Quaternion fs = eval(f, Quaternion{s});
        if (kind == SliceKind::Right) {
            return left_multiply(fs * ds, right_resolvent_at_node(a, s));
        }
        return right_multiply(left_resolvent_at_node(a, s), ds * fs);
    });
    nodes = info.first;
    return value;
}

} // namespace

SliceContour build_contour(const SphereSet& spheres, const AxSymDomain& domain, double margin)
{
    if (!(margin > 0.0) || !std::isfinite(margin)) {
        throw Error(ErrorCode::InvalidArgument, "contour margin must be positive, got " + std::to_string(margin));
    }
    // Circles in the closed upper half plane; each non-real one stands for
    // itself and its mirror image.
    std::vector<Circle> upper;
    for (const auto& e : spheres.entries()) {
        upper.push_back(fold({e.sphere.representative(), margin}));
    }
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t r = 0; r < upper.size() && !merged; ++r) {
            for (std::size_t c = r + 1; c < upper.size() && !merged; ++c) {
                if (overlaps(upper[r], upper[c])) {
                    upper[r] = fold(enclose(upper[r], upper[c]));
                } else if (overlaps(upper[r], mirror(upper[c]))) {
                    upper[r] = fold(enclose(upper[r], mirror(upper[c])));
                } else {
                    continue;
                }
                upper.erase(upper.begin() + static_cast<std::ptrdiff_t>(c));
                merged = true;
            }
        }
    }

    SliceContour contour;
    for (const Circle& c : upper) {
        if (!domain.contains_disk(c.center, c.radius)) {
            throw Error(ErrorCode::DomainTooTight,
                        "disk of radius " + std::to_string(c.radius) + " around (" + std::to_string(c.center.real()) +
                            ", " + std::to_string(c.center.imag()) + ") leaves " + domain.description());
        }
        contour.circles.push_back(c);
        if (c.center.imag() != 0.0) {
            contour.circles.push_back(mirror(c));
        }
    }
    return contour;
}

double default_margin(const SphereSet& spheres, const AxSymDomain& domain)
{
    const double base = 0.25 * (1.0 + spheres.max_norm());
    double margin = base;
    std::vector<SliceComplex> points;
    for (const auto& e : spheres.entries()) {
        margin = std::min(margin, 0.5 * domain.clearance(e.sphere.representative()));
        points.push_back(e.sphere.representative());
        points.push_back(std::conj(e.sphere.representative()));
    }
    // Separated points keep separate circles; only near-coincident ones merge.
    for (std::size_t x = 0; x < points.size(); ++x) {
        for (std::size_t y = x + 1; y < points.size(); ++y) {
            const double d = std::abs(points[x] - points[y]);
            if (d > kMergeFraction * base) {
                margin = std::min(margin, 0.4 * d);
            }
        }
    }
    if (!(margin > 0.0)) {
        throw Error(ErrorCode::DomainTooTight, "spectrum touches the boundary of " + domain.description());
    }
    return margin;
}

QuadratureResult riesz_dunford(const ComplexMatrix& m, const SliceFunction& h, const SliceContour& contour,
                               const QuadratureOptions& options)
{
    const ComplexMatrix identity = ComplexMatrix::Identity(m.rows(), m.cols());
    auto [value, info] =
        trapezoid(contour, options, ComplexMatrix(ComplexMatrix::Zero(m.rows(), m.cols())),
                  [&](SliceComplex node, SliceComplex center) -> ComplexMatrix {
                      return (h(node) * (node - center)) * node_inverse<ComplexMatrix>(node * identity - m, node);
                  });
    return {std::move(value), info.first, info.second};
}

CalculusResult complex_path(const QMatrix& a, const SliceFunction& h, const AxSymDomain& domain,
                            const CalculusOptions& options)
{
    const SphereSet spectrum = s_spectrum(a);
    auto [contour, margin] = contour_for(spectrum, domain, options);
    const QuadratureResult q = riesz_dunford(complex_adjoint(a), h, contour, options.quadrature);
    CalculusResult out;
    out.structure_residual = structure_residual(q.value);
    out.value = from_complex_adjoint(q.value, 1e-9);
    out.contour = std::move(contour);
    out.margin = margin;
    out.nodes = q.nodes;
    return out;
}

CalculusResult calculus_intrinsic_detailed(const QMatrix& a, const StemFunction& f, CalculusMethod method,
                                           const CalculusOptions& options)
{
    if (f.kind() != SliceKind::Intrinsic) {
        throw Error(ErrorCode::NotIntrinsic, f.name() + " is a " + std::string(to_string(f.kind())) +
                                                 " slice function");
    }
    if (method == CalculusMethod::ComplexPath) {
        return complex_path(a, restrict_to_slice(f), f.domain(), options);
    }
    const SphereSet spectrum = s_spectrum(a);
    auto [contour, margin] = contour_for(spectrum, f.domain(), options);
    CalculusResult out;
    out.value = s_contour_integral(a, contour, options.quadrature, f, SliceKind::Left, out.nodes);
    out.contour = std::move(contour);
    out.margin = margin;
    return out;
}

QMatrix calculus_intrinsic(const QMatrix& a, const StemFunction& f, CalculusMethod method,
                           const CalculusOptions& options)
{
    return calculus_intrinsic_detailed(a, f, method, options).value;
}

QMatrix calculus_sided(const QMatrix& a, const StemFunction& f, SliceKind kind, SidedMethod method,
                       const CalculusOptions& options)
{
    if (kind == SliceKind::Intrinsic) {
        throw Error(ErrorCode::InvalidArgument, "sided calculus needs kind left or right");
    }
    if (f.kind() == SliceKind::Intrinsic) {
        return calculus_intrinsic(a, f, CalculusMethod::ComplexPath, options);
    }
    if (f.kind() != kind) {
        throw Error(ErrorCode::InvalidArgument, f.name() + " is a " + std::string(to_string(f.kind())) +
                                                    " slice function, not " + std::string(to_string(kind)));
    }
    if (method == SidedMethod::SContour) {
        const SphereSet spectrum = s_spectrum(a);
        const SliceContour contour = contour_for(spectrum, f.domain(), options).first;
        std::size_t nodes = 0;
        return s_contour_integral(a, contour, options.quadrature, f, kind, nodes);
    }
    const std::array<StemFunction, 4> parts = decompose(f);
    const std::array<Quaternion, 4> units{Quaternion{1.0}, Quaternion::i(), Quaternion::j(), Quaternion::k()};
    QMatrix out = calculus_intrinsic(a, parts[0], CalculusMethod::ComplexPath, options);
    for (std::size_t m = 1; m < 4; ++m) {
        const QMatrix fm = calculus_intrinsic(a, parts[m], CalculusMethod::ComplexPath, options);
        out += kind == SliceKind::Right ? left_multiply(units[m], fm) : right_multiply(fm, units[m]);
    }
    return out;
}

QMatrix op_exp(const QMatrix& a)
{
    const double norm = a.norm();
    if (!std::isfinite(norm)) {
        throw Error(ErrorCode::InvalidArgument, "exp of a matrix with non-finite entries");
    }
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const QMatrix b = a * std::ldexp(1.0, -squarings);
    QMatrix sum = QMatrix::identity(a.size());
    QMatrix term = sum;
    for (int k = 1; k < 200; ++k) {
        term = (term * b) * (1.0 / k);
        sum += term;
        if (term.norm() <= 1e-16 * sum.norm()) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        sum = sum * sum;
    }
    return sum;
}

QMatrix op_log(const QMatrix& a)
{
    const SphereSet spectrum = s_spectrum(a);
    for (const auto& e : spectrum.entries()) {
        const double to_cut = e.sphere.re <= 0.0 ? e.sphere.im_norm : e.sphere.norm();
        if (to_cut <= kCatalogBuffer) {
            throw Error(ErrorCode::BranchCut, "sphere (" + std::to_string(e.sphere.re) + ", " +
                                                  std::to_string(e.sphere.im_norm) +
                                                  ") lies on the cut (-inf, 0] of the principal logarithm");
        }
    }
    return calculus_intrinsic(a, catalog_function("log"));
}

QMatrix op_nth_root(const QMatrix& a, int m)
{
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "root order must be at least 1, got " + std::to_string(m));
    }
    return op_exp(op_log(a) * (1.0 / m));
}

} // namespace qspec
