#include "qspec/spectrum.hpp"

#include "qspec/eigenvalues.hpp"
#include "qspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qspec {

namespace {

double sphere_distance(const Sphere& s, const Sphere& t) { return std::hypot(s.re - t.re, s.im_norm - t.im_norm); }

bool sphere_less(const Sphere& s, const Sphere& t)
{
    return s.re < t.re || (s.re == t.re && s.im_norm < t.im_norm);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void require_square_nonempty(const QMatrix& a, const char* what)
{
    if (a.size() == 0) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + ": empty matrix");
    }
}

// Accumulates sum_n term(n) until two consecutive terms fall below
// tol * (1 + ||partial sum||).
template <class Term>
SeriesResult sum_series(std::size_t n, double tol, Term&& term)
{
    SeriesResult out{QMatrix::zero(n), 0, 0.0};
    int small_in_a_row = 0;
    for (std::size_t k = 0; k < kMaxSeriesTerms; ++k) {
        const QMatrix t = term(k);
        out.value += t;
        out.terms = k + 1;
        const double tn = t.norm();
        const double sn = out.value.norm();
        if (!std::isfinite(tn) || !std::isfinite(sn)) {
            throw Error(ErrorCode::SeriesDiverges, "series terms overflowed after " + std::to_string(k + 1) + " terms");
        }
        small_in_a_row = tn < tol * (1.0 + sn) ? small_in_a_row + 1 : 0;
        if (small_in_a_row >= 2) {
            return out;
        }
    }
    throw Error(ErrorCode::SeriesDiverges, "series did not reach tolerance within " +
                                               std::to_string(kMaxSeriesTerms) + " terms");
}

} // namespace

SphereSet::SphereSet(std::vector<SphereEntry> entries, double tolerance)
    : entries_(std::move(entries)), tolerance_(tolerance)
{
    std::sort(entries_.begin(), entries_.end(),
              [](const SphereEntry& x, const SphereEntry& y) { return sphere_less(x.sphere, y.sphere); });
}

int SphereSet::total_multiplicity() const
{
    return std::accumulate(entries_.begin(), entries_.end(), 0,
                           [](int acc, const SphereEntry& e) { return acc + e.multiplicity; });
}

double SphereSet::max_norm() const
{
    double m = 0.0;
    for (const auto& e : entries_) {
        m = std::max(m, e.sphere.norm());
    }
    return m;
}

bool SphereSet::contains(const Quaternion& q, std::optional<double> tol) const
{
    const double t = tol.value_or(tolerance_);
    const Sphere s = sphere_of(q);
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const SphereEntry& e) { return sphere_distance(e.sphere, s) <= t; });
}

std::vector<Sphere> SphereSet::expanded() const
{
    std::vector<Sphere> out;
    for (const auto& e : entries_) {
        out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.sphere);
    }
    std::sort(out.begin(), out.end(), sphere_less);
    return out;
}

double sphere_set_distance(const std::vector<Sphere>& a, const std::vector<Sphere>& b)
{
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a.empty()) {
        return 0.0;
    }
    std::vector<Sphere> x = a;
    std::vector<Sphere> y = b;
    std::sort(x.begin(), x.end(), sphere_less);
    std::sort(y.begin(), y.end(), sphere_less);

    auto matching_cost = [&](const std::vector<std::size_t>& perm) {
        double worst = 0.0;
        for (std::size_t r = 0; r < x.size(); ++r) {
            worst = std::max(worst, sphere_distance(x[r], y[perm[r]]));
        }
        return worst;
    };

    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (x.size() <= 8) {
        double best = std::numeric_limits<double>::infinity();
        do {
            best = std::min(best, matching_cost(perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    // Greedy nearest-neighbour matching for larger sets.
    std::vector<bool> used(y.size(), false);
    double worst = 0.0;
    for (const Sphere& s : x) {
        std::size_t best_idx = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < y.size(); ++c) {
            if (!used[c] && sphere_distance(s, y[c]) < best) {
                best = sphere_distance(s, y[c]);
                best_idx = c;
            }
        }
        used[best_idx] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

double sphere_set_distance(const SphereSet& a, const SphereSet& b)
{
    return sphere_set_distance(a.expanded(), b.expanded());
}

SphereSet spheres_from_eigenvalues(const std::vector<SliceComplex>& values, double tol)
{
    const std::size_t m = values.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = r + 1; c < m; ++c) {
            if (sphere_distance(sphere_of(values[r]), sphere_of(values[c])) <= tol) {
                parent[find_root(parent, r)] = find_root(parent, c);
            }
        }
    }

    std::vector<SphereEntry> entries;
    std::vector<bool> done(m, false);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t root = find_root(parent, r);
        if (done[root]) {
            continue;
        }
        done[root] = true;
        double re = 0.0;
        double im = 0.0;
        int count = 0;
        int upper = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (find_root(parent, c) == root) {
                re += values[c].real();
                im += std::abs(values[c].imag());
                ++count;
                upper += values[c].imag() > 0.0 ? 1 : 0;
            }
        }
        Sphere s{re / count, im / count};
        int mult = 0;
        if (s.im_norm <= tol) {
            if (count % 2 != 0) {
                throw Error(ErrorCode::OddRealMultiplicity,
                            "real eigenvalue " + std::to_string(s.re) + " has odd multiplicity " +
                                std::to_string(count) + " in the complex adjoint");
            }
            s.im_norm = 0.0;
            mult = count / 2;
        } else {
            if (2 * upper != count) {
                throw Error(ErrorCode::NoConvergence,
                            "eigenvalues of the complex adjoint are not closed under conjugation");
            }
            mult = upper;
        }
        entries.push_back({s, mult});
    }
    return {std::move(entries), tol};
}

double default_sphere_tolerance(const QMatrix& a) { return 1e-8 * (1.0 + a.norm()); }

SphereSet s_spectrum(const QMatrix& a, std::optional<double> tol)
{
    require_square_nonempty(a, "s_spectrum");
    const double t = tol.value_or(default_sphere_tolerance(a));
    SphereSet set = spheres_from_eigenvalues(eigenvalues(complex_adjoint(a)), t);
    if (set.total_multiplicity() != static_cast<int>(a.size())) {
        throw Error(ErrorCode::NoConvergence, "sphere multiplicities do not add up to the dimension");
    }
    return set;
}

PowerRadius power_spectral_radius(const QMatrix& a, int max_squarings)
{
    const double n0 = a.norm();
    if (n0 == 0.0) {
        return {0.0, 0};
    }
    // log ||A^(2^m)|| accumulated through normalized squarings.
    double log_norm = std::log(n0);
    QMatrix b = a * (1.0 / n0);
    double previous = n0;
    for (int m = 1; m <= max_squarings; ++m) {
        QMatrix c = b * b;
        const double cn = c.norm();
        if (cn == 0.0) {
            return {0.0, m};
        }
        log_norm = 2.0 * log_norm + std::log(cn);
        const double estimate = std::exp(log_norm / std::ldexp(1.0, m));
        if (m >= 3 && std::abs(estimate - previous) < 0.01 * previous) {
            return {estimate, m};
        }
        // Tiny estimates are an eigenvalue-free (nilpotent) matrix losing precision.
        if (estimate < 1e-300) {
            return {0.0, m};
        }
        previous = estimate;
        b = c * (1.0 / cn);
    }
    throw Error(ErrorCode::NoConvergence,
                "power estimate of the spectral radius did not settle in " + std::to_string(max_squarings) + " squarings");
}

double s_spectral_radius(const QMatrix& a, RadiusMethod method)
{
    require_square_nonempty(a, "s_spectral_radius");
    if (method == RadiusMethod::Power) {
        return power_spectral_radius(a).estimate;
    }
    double r = 0.0;
    for (const SliceComplex& z : eigenvalues(complex_adjoint(a))) {
        r = std::max(r, std::abs(z));
    }
    return r;
}

std::vector<Quaternion> neumann_coefficients(const Quaternion& q, std::size_t count)
{
    const Quaternion u = inv(q);
    const Quaternion w = inv(q.conj());
    const Quaternion uw = u * w;
    std::vector<Quaternion> out;
    out.reserve(count);
    // h_n = sum_k u^k w^(n-k), h_n = w h_(n-1) + u^n.
    Quaternion h{1.0};
    Quaternion u_pow{1.0};
    for (std::size_t n = 0; n < count; ++n) {
        if (n > 0) {
            u_pow = u_pow * u;
            h = w * h + u_pow;
        }
        out.push_back(uw * h);
    }
    return out;
}

SeriesResult q_pencil_inverse_series(const QMatrix& a, const Quaternion& q, double tol)
{
    require_square_nonempty(a, "q_pencil_inverse");
    const double radius = s_spectral_radius(a);
    if (!(q.norm() > radius)) {
        throw Error(ErrorCode::SeriesDiverges, "|q| = " + std::to_string(q.norm()) +
                                                   " does not exceed the spectral radius " + std::to_string(radius));
    }
    const Quaternion u = inv(q);
    const Quaternion w = inv(q.conj());
    const Quaternion uw = u * w;
    Quaternion h{1.0};
    Quaternion u_pow{1.0};
    QMatrix a_pow = QMatrix::identity(a.size());
    double max_imag = 0.0;
    SeriesResult out = sum_series(a.size(), tol, [&](std::size_t n) {
        if (n > 0) {
            u_pow = u_pow * u;
            h = w * h + u_pow;
            a_pow = a_pow * a;
        }
        const Quaternion coeff = uw * h;
        max_imag = std::max(max_imag, coeff.imag_norm());
        return a_pow * coeff.real();
    });
    out.max_coefficient_imag = max_imag;
    return out;
}

QMatrix q_pencil_inverse(const QMatrix& a, const Quaternion& q, PencilMethod method, double tol)
{
    if (method == PencilMethod::Neumann) {
        return q_pencil_inverse_series(a, q, tol).value;
    }
    require_square_nonempty(a, "q_pencil_inverse");
    return inverse(q_pencil(a, q));
}

SeriesResult s_resolvent_series(const QMatrix& a, const Quaternion& s, Side side, double tol)
{
    require_square_nonempty(a, "s_resolvent");
    if (!(s.norm() > a.norm())) {
        throw Error(ErrorCode::SeriesDiverges,
                    "|s| = " + std::to_string(s.norm()) + " does not exceed ||A|| = " + std::to_string(a.norm()));
    }
    const Quaternion u = inv(s);
    Quaternion s_pow = u;
    QMatrix a_pow = QMatrix::identity(a.size());
    return sum_series(a.size(), tol, [&](std::size_t n) {
        if (n > 0) {
            a_pow = a_pow * a;
            s_pow = s_pow * u;
        }
        return side == Side::Left ? right_multiply(a_pow, s_pow) : left_multiply(s_pow, a_pow);
    });
}

QMatrix s_resolvent(const QMatrix& a, const Quaternion& s, Side side, ResolventMethod method, double tol)
{
    if (method == ResolventMethod::Series) {
        return s_resolvent_series(a, s, side, tol).value;
    }
    require_square_nonempty(a, "s_resolvent");
    const QMatrix q_inv = inverse(q_pencil(a, s));
    const QMatrix shifted = a - QMatrix::scalar(a.size(), s.conj());
    return side == Side::Left ? -(q_inv * shifted) : -(shifted * q_inv);
}

Classification classify(const QMatrix& a, const Quaternion& q)
{
    const double smin = RealOperator::of(q_pencil(a, q)).smallest_singular_value();
    const double an = a.norm();
    const double threshold = 1e-10 * (1.0 + an * an);
    return {smin <= threshold ? Verdict::PointSpectrum : Verdict::Resolvent, smin, threshold};
}

DistanceReport distance_to_spectrum(const QMatrix& a, double alpha)
{
    const SphereSet spectrum = s_spectrum(a);
    double geometric = std::numeric_limits<double>::infinity();
    for (const auto& e : spectrum.entries()) {
        geometric = std::min(geometric, std::hypot(alpha - e.sphere.re, e.sphere.im_norm));
    }
    if (geometric <= spectrum.tolerance()) {
        throw Error(ErrorCode::AlphaInSpectrum, std::to_string(alpha) + " lies in the S-spectrum");
    }
    QMatrix shifted_inverse;
    try {
        shifted_inverse = inverse(QMatrix::scalar(a.size(), Quaternion{alpha}) - a);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Singular) {
            throw;
        }
        throw Error(ErrorCode::AlphaInSpectrum, std::to_string(alpha) + " lies in the S-spectrum");
    }
    return {geometric, 1.0 / s_spectral_radius(shifted_inverse)};
}

} // namespace qspec
