#include "qspec/theorems.hpp"

#include "qspec/calculus.hpp"
#include "qspec/catalog.hpp"
#include "qspec/error.hpp"
#include "qspec/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace qspec {

namespace {

struct CaseSink {
    TheoremReport& report;

    void add(std::string label, double discrepancy, bool expected_mismatch = false)
    {
        const bool within = discrepancy < report.tolerance;
        report.cases.push_back({std::move(label), discrepancy, expected_mismatch,
                                expected_mismatch ? !within : within});
    }
};

double relative(const QMatrix& lhs, const QMatrix& rhs) { return (lhs - rhs).norm() / (1.0 + lhs.norm()); }

QMatrix apply_function(const QMatrix& a, const StemFunction& f)
{
    if (f.kind() == SliceKind::Intrinsic) {
        return calculus_intrinsic(a, f);
    }
    return calculus_sided(a, f, f.kind());
}

QMatrix polynomial_of(const QMatrix& a, const std::vector<double>& coefficients)
{
    QMatrix acc = QMatrix::zero(a.size());
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * a + QMatrix::scalar(a.size(), Quaternion{*it});
    }
    return acc;
}

std::vector<Sphere> image_spheres(const SphereSet& spectrum, const SliceFunction& h)
{
    std::vector<Sphere> out;
    for (const auto& e : spectrum.entries()) {
        const Sphere image = sphere_of(h(e.sphere.representative()));
        out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), image);
    }
    return out;
}

double scaled_sphere_distance(const SphereSet& computed, const std::vector<Sphere>& expected)
{
    return sphere_set_distance(computed.expanded(), expected) / (1.0 + computed.max_norm());
}

// Whether every sphere keeps a clear distance from (-inf, 0].
bool clear_of_cut(const SphereSet& spectrum, double clearance)
{
    return std::all_of(spectrum.entries().begin(), spectrum.entries().end(), [&](const SphereEntry& e) {
        const double to_cut = e.sphere.re <= 0.0 ? e.sphere.im_norm : e.sphere.norm();
        return to_cut > clearance;
    });
}

void product_suite(const QMatrix& a, CaseSink& sink)
{
    const std::array<std::pair<const char*, const char*>, 4> pairs{{
        {"exp", "pow:2"},
        {"exp", "monoL:[[1,2,0,-1],1]"},
        {"pow:2", "monoL:[[0,0,1,0],2]"},
        {"monoR:[[0,1,1,0],2]", "exp"},
    }};
    for (const auto& [fn, gn] : pairs) {
        const StemFunction f = catalog_function(fn);
        const StemFunction g = catalog_function(gn);
        const QMatrix lhs = apply_function(a, multiply(f, g));
        const QMatrix rhs = apply_function(a, f) * apply_function(a, g);
        sink.add("(" + std::string(fn) + " * " + gn + ")(A) vs f(A) g(A)", relative(lhs, rhs));
    }
}

void mapping_suite(const QMatrix& a, CaseSink& sink)
{
    const SphereSet spectrum = s_spectrum(a);
    std::vector<std::string> names{"exp", "pow:2", "poly:[1,-2,0,1]"};
    if (clear_of_cut(spectrum, 1e-2)) {
        names.emplace_back("sqrt");
    }
    for (const auto& name : names) {
        const StemFunction f = catalog_function(name);
        const QMatrix fa = calculus_intrinsic(a, f);
        sink.add("sigma_S(" + name + "(A)) vs " + name + "(sigma_S(A))",
                 scaled_sphere_distance(s_spectrum(fa), image_spheres(spectrum, restrict_to_slice(f))));
    }
}

void composition_suite(const QMatrix& a, CaseSink& sink)
{
    const std::array<std::pair<const char*, const char*>, 3> pairs{{
        {"exp", "poly:[1,0,1]"},
        {"monoL:[[1,0,2,0],3]", "pow:2"},
        {"monoR:[[0,1,0,1],2]", "exp"},
    }};
    for (const auto& [gn, fn] : pairs) {
        const StemFunction g = catalog_function(gn);
        const StemFunction f = catalog_function(fn);
        const QMatrix lhs = apply_function(apply_function(a, f), g);
        const QMatrix rhs = apply_function(a, compose(g, f));
        sink.add(std::string(gn) + "(" + fn + "(A)) vs (" + gn + " o " + fn + ")(A)", relative(lhs, rhs));
    }
}

void polynomial_suite(const QMatrix& a, CaseSink& sink)
{
    const SphereSet spectrum = s_spectrum(a);
    const std::vector<std::vector<double>> polys{{1.0, -2.0, 0.0, 1.0}, {0.5, 0.0, -1.0, 0.25, 0.125}, {-3.0, 2.0}};
    for (const auto& p : polys) {
        std::string label = "P = [";
        for (std::size_t k = 0; k < p.size(); ++k) {
            std::ostringstream coeff;
            coeff << p[k];
            label += (k ? "," : "") + coeff.str();
        }
        label += "]";
        const SphereSet mapped = s_spectrum(polynomial_of(a, p));
        sink.add("sigma_S(P(A)) vs P(sigma_S(A)), " + label,
                 scaled_sphere_distance(mapped, image_spheres(spectrum, [&p](SliceComplex z) {
                                            return polynomial_value(p, z);
                                        })));
    }

    // P(q) = iq is not a real polynomial: P(I) = iI has the whole unit sphere
    // as S-spectrum, while P maps sigma_S(I) = {1} to the single point i.
    const QMatrix control = left_multiply(Quaternion::i(), QMatrix::identity(1));
    const SphereSet control_spectrum = s_spectrum(control);
    sink.add("control sigma_S(iI) = {(0,1)}",
             sphere_set_distance(control_spectrum.expanded(), std::vector<Sphere>{{0.0, 1.0}}));
    // Hausdorff distance between the spheres of sigma_S(iI) and the point i.
    double hausdorff = 0.0;
    for (const auto& e : control_spectrum.entries()) {
        hausdorff = std::max(hausdorff, std::hypot(e.sphere.re, e.sphere.im_norm + 1.0));
    }
    sink.add("control sigma_S(iI) vs image point {i} (must differ)", hausdorff, true);
}

void distance_suite(const QMatrix& a, CaseSink& sink)
{
    const SphereSet spectrum = s_spectrum(a);
    const double r = spectrum.max_norm();
    for (const double alpha : {-(r + 1.0), -0.5, 0.0, 0.5, r + 1.0}) {
        double geometric = std::numeric_limits<double>::infinity();
        for (const auto& e : spectrum.entries()) {
            geometric = std::min(geometric, std::hypot(alpha - e.sphere.re, e.sphere.im_norm));
        }
        if (geometric <= 1e-6 * (1.0 + a.norm())) {
            continue;
        }
        const DistanceReport d = distance_to_spectrum(a, alpha);
        sink.add("dist(" + std::to_string(alpha) + ", sigma_S(A))",
                 std::abs(d.geometric - d.via_resolvent) / (1.0 + d.geometric));
    }
}

void resolvent_series_suite(const QMatrix& a, CaseSink& sink)
{
    const double radius = 2.0 * a.norm() + 1.0;
    const std::array<Quaternion, 3> directions{Quaternion{0.6, 0.8, 0.0, 0.0}, Quaternion{0.0, 0.0, 1.0, 0.0},
                                               Quaternion{-0.5, 0.5, 0.5, -0.5}};
    for (const Quaternion& dir : directions) {
        const Quaternion s = dir * radius;
        for (const Side side : {Side::Left, Side::Right}) {
            const QMatrix formula = s_resolvent(a, s, side, ResolventMethod::Formula);
            const QMatrix series = s_resolvent(a, s, side, ResolventMethod::Series);
            std::ostringstream label;
            label << (side == Side::Left ? "S_L" : "S_R") << " series vs formula at s = " << s;
            sink.add(label.str(), relative(formula, series));
        }
    }
}

} // namespace

std::string_view to_string(TheoremSuite suite) noexcept
{
    switch (suite) {
    case TheoremSuite::Product: return "product";
    case TheoremSuite::Mapping: return "mapping";
    case TheoremSuite::Composition: return "composition";
    case TheoremSuite::Polynomial: return "polynomial";
    case TheoremSuite::Distance: return "distance";
    case TheoremSuite::ResolventSeries: return "resolvent_series";
    }
    return "unknown";
}

std::optional<TheoremSuite> parse_suite(std::string_view name)
{
    for (const TheoremSuite s : {TheoremSuite::Product, TheoremSuite::Mapping, TheoremSuite::Composition,
                                 TheoremSuite::Polynomial, TheoremSuite::Distance, TheoremSuite::ResolventSeries}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

TheoremReport verify_theorems(const QMatrix& a, TheoremSuite suite, double tolerance)
{
    TheoremReport report;
    report.suite = std::string(to_string(suite));
    report.tolerance = tolerance;
    CaseSink sink{report};
    switch (suite) {
    case TheoremSuite::Product: product_suite(a, sink); break;
    case TheoremSuite::Mapping: mapping_suite(a, sink); break;
    case TheoremSuite::Composition: composition_suite(a, sink); break;
    case TheoremSuite::Polynomial: polynomial_suite(a, sink); break;
    case TheoremSuite::Distance: distance_suite(a, sink); break;
    case TheoremSuite::ResolventSeries: resolvent_series_suite(a, sink); break;
    }
    report.pass = !report.cases.empty() &&
                  std::all_of(report.cases.begin(), report.cases.end(), [](const TheoremCase& c) { return c.pass; });
    return report;
}

} // namespace qspec
