#include "qspec/slice_function.hpp"

#include "qspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace qspec {

std::string_view to_string(SliceKind kind) noexcept
{
    switch (kind) {
    case SliceKind::Left: return "left";
    case SliceKind::Right: return "right";
    case SliceKind::Intrinsic: return "intrinsic";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// AxSymDomain

AxSymDomain::AxSymDomain(ParameterBox box, std::string description)
    : box_(box), description_(std::move(description))
{
}

AxSymDomain& AxSymDomain::exclude_ray(double end, double buffer)
{
    rays_.push_back({end, buffer});
    return *this;
}

AxSymDomain& AxSymDomain::exclude_point(SliceComplex point, double buffer)
{
    points_.push_back({{point.real(), std::abs(point.imag())}, buffer});
    return *this;
}

AxSymDomain& AxSymDomain::restrict_to(Predicate predicate, const std::string& description)
{
    predicates_.push_back(std::move(predicate));
    description_ += " & " + description;
    return *this;
}

namespace {

double distance_to_ray(SliceComplex z, double end)
{
    if (z.real() <= end) {
        return std::abs(z.imag());
    }
    return std::hypot(z.real() - end, z.imag());
}

double distance_to_point_pair(SliceComplex z, SliceComplex p)
{
    return std::min(std::abs(z - p), std::abs(z - std::conj(p)));
}

} // namespace

double AxSymDomain::clearance(SliceComplex z) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const Ray& ray : rays_) {
        best = std::min(best, distance_to_ray(z, ray.end) - ray.buffer);
    }
    for (const Point& p : points_) {
        best = std::min(best, distance_to_point_pair(z, p.point) - p.buffer);
    }
    return best;
}

bool AxSymDomain::contains(double alpha, double beta) const
{
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        return false;
    }
    beta = std::abs(beta);
    if (!(clearance({alpha, beta}) > 0.0)) {
        return false;
    }
    return std::all_of(predicates_.begin(), predicates_.end(),
                       [&](const Predicate& p) { return p(alpha, beta); });
}

bool AxSymDomain::contains_disk(SliceComplex center, double radius) const
{
    if (!(clearance(center) > radius)) {
        return false;
    }
    if (predicates_.empty()) {
        return true;
    }
    auto ok = [&](SliceComplex z) { return contains(z.real(), z.imag()); };
    if (!ok(center)) {
        return false;
    }
    constexpr int kAngles = 64;
    for (const double frac : {0.25, 0.5, 0.75, 1.0}) {
        for (int t = 0; t < kAngles; ++t) {
            const double theta = 2.0 * std::numbers::pi * t / kAngles;
            if (!ok(center + frac * radius * std::polar(1.0, theta))) {
                return false;
            }
        }
    }
    // The real axis is where axially symmetric domains are most often cut.
    if (std::abs(center.imag()) <= radius) {
        const double half = std::sqrt(radius * radius - center.imag() * center.imag());
        constexpr int kChord = 32;
        for (int t = 0; t <= kChord; ++t) {
            const double x = center.real() - half + 2.0 * half * t / kChord;
            if (!ok({x, 0.0})) {
                return false;
            }
        }
    }
    return true;
}

AxSymDomain intersect(const AxSymDomain& a, const AxSymDomain& b)
{
    AxSymDomain out = a;
    out.box_ = {std::max(a.box_.alpha_min, b.box_.alpha_min), std::min(a.box_.alpha_max, b.box_.alpha_max),
                std::max(a.box_.beta_min, b.box_.beta_min), std::min(a.box_.beta_max, b.box_.beta_max)};
    out.rays_.insert(out.rays_.end(), b.rays_.begin(), b.rays_.end());
    out.points_.insert(out.points_.end(), b.points_.begin(), b.points_.end());
    out.predicates_.insert(out.predicates_.end(), b.predicates_.begin(), b.predicates_.end());
    if (b.description_ != a.description_) {
        out.description_ = "(" + a.description_ + ") & (" + b.description_ + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// StemFunction

StemFunction::StemFunction(StemComponent f0, StemComponent f1, AxSymDomain domain, SliceKind kind, std::string name)
    : f0_(std::move(f0)), f1_(std::move(f1)), domain_(std::move(domain)), kind_(kind), name_(std::move(name))
{
}

Quaternion StemFunction::f0(double alpha, double beta) const
{
    return f0_(alpha, std::abs(beta));
}

Quaternion StemFunction::f1(double alpha, double beta) const
{
    const Quaternion v = f1_(alpha, std::abs(beta));
    return beta < 0.0 ? -v : v;
}

Quaternion eval(const StemFunction& f, const Quaternion& q)
{
    const double alpha = q.real();
    const double beta = q.imag_norm();
    if (!f.domain().contains(alpha, beta)) {
        throw Error(ErrorCode::OutOfDomain, "point outside the domain of " + f.name());
    }
    const Quaternion v0 = f.f0(alpha, beta);
    if (beta == 0.0) {
        return v0;
    }
    const Quaternion unit = q.imag() / beta;
    const Quaternion v1 = f.f1(alpha, beta);
    if (f.kind() == SliceKind::Right) {
        return v0 + v1 * unit;
    }
    return v0 + unit * v1;
}

StemFunction from_holomorphic_intrinsic(SliceFunction h, AxSymDomain domain, std::string name)
{
    const ParameterBox& box = domain.box();
    constexpr int kGrid = 8;
    for (int ia = 0; ia < kGrid; ++ia) {
        for (int ib = 0; ib < kGrid; ++ib) {
            const double alpha = box.alpha_min + (ia + 0.5) * (box.alpha_max - box.alpha_min) / kGrid;
            const double beta = box.beta_min + (ib + 0.5) * (box.beta_max - box.beta_min) / kGrid;
            if (!domain.contains(alpha, beta)) {
                continue;
            }
            const SliceComplex z{alpha, beta};
            const SliceComplex hz = h(z);
            const SliceComplex hzbar = h(std::conj(z));
            if (!(std::abs(hzbar - std::conj(hz)) <= 1e-10 * (1.0 + std::abs(hz)))) {
                throw Error(ErrorCode::NotIntrinsic,
                            name + " does not satisfy h(conj z) = conj(h(z)) on its domain");
            }
        }
    }
    auto f0 = [h](double alpha, double beta) {
        const SliceComplex z{alpha, beta};
        return Quaternion{0.5 * (h(z) + h(std::conj(z)))};
    };
    auto f1 = [h](double alpha, double beta) {
        const SliceComplex z{alpha, beta};
        return Quaternion{(h(z) - h(std::conj(z))) / SliceComplex{0.0, 2.0}};
    };
    return {f0, f1, std::move(domain), SliceKind::Intrinsic, std::move(name)};
}

std::array<StemFunction, 4> decompose(const StemFunction& f)
{
    auto part = [&f](int m) {
        auto p0 = [f, m](double alpha, double beta) { return Quaternion{f.f0(alpha, beta)[m]}; };
        auto p1 = [f, m](double alpha, double beta) { return Quaternion{f.f1(alpha, beta)[m]}; };
        return StemFunction(p0, p1, f.domain(), SliceKind::Intrinsic, f.name() + "[" + std::to_string(m) + "]");
    };
    return {part(0), part(1), part(2), part(3)};
}

Quaternion recombine(SliceKind kind, const std::array<Quaternion, 4>& part_values)
{
    static constexpr std::array<Quaternion, 4> kBasis{Quaternion{1.0}, Quaternion::i(), Quaternion::j(),
                                                      Quaternion::k()};
    Quaternion sum;
    for (std::size_t m = 0; m < 4; ++m) {
        sum += kind == SliceKind::Right ? kBasis[m] * part_values[m] : part_values[m] * kBasis[m];
    }
    return sum;
}

ValidationReport validate(const StemFunction& f, double grid_step, double fd_step, double tol)
{
    const ParameterBox& box = f.domain().box();
    ValidationReport report;
    if (!(grid_step > 0.0) || !(fd_step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "validate needs positive grid and finite-difference steps");
    }
    const auto cells_alpha = static_cast<int>(std::max(1.0, std::floor((box.alpha_max - box.alpha_min) / grid_step)));
    const auto cells_beta = static_cast<int>(std::max(1.0, std::floor((box.beta_max - box.beta_min) / grid_step)));

    auto imag_size = [](const Quaternion& q) { return q.imag_norm(); };

    for (int ia = 0; ia < cells_alpha; ++ia) {
        const double alpha = box.alpha_min + (ia + 0.5) * grid_step;
        if (f.domain().contains(alpha, 0.0)) {
            report.compatibility_residual = std::max(report.compatibility_residual, f.f1(alpha, 0.0).norm());
        }
        for (int ib = 0; ib < cells_beta; ++ib) {
            const double beta = box.beta_min + (ib + 0.5) * grid_step;
            if (!f.domain().contains(alpha, beta)) {
                continue;
            }
            const Quaternion v0 = f.f0(alpha, beta);
            const Quaternion v1 = f.f1(alpha, beta);
            report.intrinsic_residual = std::max({report.intrinsic_residual, imag_size(v0), imag_size(v1)});

            if (!f.domain().contains_disk({alpha, beta}, 2.0 * fd_step)) {
                continue;
            }
            const double inv2h = 0.5 / fd_step;
            const Quaternion d0_da = (f.f0(alpha + fd_step, beta) - f.f0(alpha - fd_step, beta)) * inv2h;
            const Quaternion d0_db = (f.f0(alpha, beta + fd_step) - f.f0(alpha, beta - fd_step)) * inv2h;
            const Quaternion d1_da = (f.f1(alpha + fd_step, beta) - f.f1(alpha - fd_step, beta)) * inv2h;
            const Quaternion d1_db = (f.f1(alpha, beta + fd_step) - f.f1(alpha, beta - fd_step)) * inv2h;
            report.cauchy_riemann_residual =
                std::max({report.cauchy_riemann_residual, (d0_da - d1_db).norm(), (d0_db + d1_da).norm()});
            ++report.samples;
        }
    }
    report.compatibility_ok = report.compatibility_residual <= tol;
    report.cauchy_riemann_ok = report.cauchy_riemann_residual <= tol;
    report.intrinsic_ok = f.kind() != SliceKind::Intrinsic || report.intrinsic_residual <= tol;
    return report;
}

ValidationReport validate(const StemFunction& f)
{
    const ParameterBox& box = f.domain().box();
    const double size = std::max(box.alpha_max - box.alpha_min, box.beta_max - box.beta_min);
    return validate(f, size / 32.0, 1e-5 * size, 1e-6);
}

SliceFunction restrict_to_slice(const StemFunction& f)
{
    if (f.kind() != SliceKind::Intrinsic) {
        throw Error(ErrorCode::NotIntrinsic, f.name() + " is " + std::string(to_string(f.kind())) + ", not intrinsic");
    }
    return [f](SliceComplex z) {
        return SliceComplex{f.f0(z.real(), z.imag()).real(), f.f1(z.real(), z.imag()).real()};
    };
}

StemFunction multiply(const StemFunction& f, const StemFunction& g)
{
    SliceKind kind;
    if (f.kind() == SliceKind::Intrinsic && g.kind() != SliceKind::Right) {
        kind = g.kind();
    } else if (f.kind() == SliceKind::Right && g.kind() == SliceKind::Intrinsic) {
        kind = SliceKind::Right;
    } else {
        throw Error(ErrorCode::InvalidArgument, "product of a " + std::string(to_string(f.kind())) + " and a " +
                                                    std::string(to_string(g.kind())) +
                                                    " function is not a slice function");
    }
    // (f0 + I f1)(g0 + I g1) and (f0 + f1 I)(g0 + g1 I) share these stems when
    // the intrinsic factor commutes with I.
    auto p0 = [f, g](double alpha, double beta) {
        return f.f0(alpha, beta) * g.f0(alpha, beta) - f.f1(alpha, beta) * g.f1(alpha, beta);
    };
    auto p1 = [f, g](double alpha, double beta) {
        return f.f0(alpha, beta) * g.f1(alpha, beta) + f.f1(alpha, beta) * g.f0(alpha, beta);
    };
    return {p0, p1, intersect(f.domain(), g.domain()), kind, "(" + f.name() + ")*(" + g.name() + ")"};
}

StemFunction compose(const StemFunction& g, const StemFunction& f)
{
    if (f.kind() != SliceKind::Intrinsic) {
        throw Error(ErrorCode::NotIntrinsic, "inner function of a composition must be intrinsic");
    }
    // f(alpha + beta I) = u + v I with u, v real, so g(f(q)) uses g's stems at (u, v).
    auto c0 = [f, g](double alpha, double beta) { return g.f0(f.f0(alpha, beta).real(), f.f1(alpha, beta).real()); };
    auto c1 = [f, g](double alpha, double beta) { return g.f1(f.f0(alpha, beta).real(), f.f1(alpha, beta).real()); };
    AxSymDomain domain = f.domain();
    domain.restrict_to(
        [f, g](double alpha, double beta) {
            return g.domain().contains(f.f0(alpha, beta).real(), f.f1(alpha, beta).real());
        },
        "f maps into dom(" + g.name() + ")");
    return {c0, c1, std::move(domain), g.kind(), "(" + g.name() + ")o(" + f.name() + ")"};
}

} // namespace qspec
