#include "qspec/calculus.hpp"
#include "qspec/catalog.hpp"
#include "qspec/error.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qspec;
using qspec::support::Rng;

namespace {

const Quaternion I = Quaternion::i();
const Quaternion J = Quaternion::j();
const Quaternion K = Quaternion::k();
constexpr double pi = std::numbers::pi;

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

AxSymDomain whole() { return AxSymDomain(ParameterBox{}, "H"); }

SphereSet spheres(std::initializer_list<Sphere> s)
{
    std::vector<SphereEntry> e;
    for (const Sphere& x : s) {
        e.push_back({x, 1});
    }
    return {e, 1e-8};
}

bool has_circle(const SliceContour& c, SliceComplex center, double radius)
{
    return std::any_of(c.circles.begin(), c.circles.end(), [&](const Circle& x) {
        return std::abs(x.center - center) < 1e-14 && std::abs(x.radius - radius) < 1e-14;
    });
}

// Exponential from chi(A) by the Taylor series, mapped back.
QMatrix exp_oracle(const QMatrix& a) { return from_complex_adjoint(support::taylor_exp(complex_adjoint(a)), 1e-9); }

double relative(const QMatrix& x, const QMatrix& y) { return (x - y).norm() / (1.0 + y.norm()); }

} // namespace

TEST(Contour, Examples)
{
    const SliceContour a = build_contour(spheres({{0.0, 1.0}}), whole(), 0.3);
    ASSERT_EQ(a.circles.size(), 2U);
    EXPECT_TRUE(has_circle(a, {0.0, 1.0}, 0.3));
    EXPECT_TRUE(has_circle(a, {0.0, -1.0}, 0.3));

    const SliceContour b = build_contour(spheres({{1.0, 0.0}}), whole(), 0.2);
    ASSERT_EQ(b.circles.size(), 1U);
    EXPECT_TRUE(has_circle(b, {1.0, 0.0}, 0.2));

    const SliceContour c = build_contour(spheres({{0.0, 0.1}}), whole(), 0.3);
    ASSERT_EQ(c.circles.size(), 1U);
    EXPECT_TRUE(has_circle(c, {0.0, 0.0}, 0.4));
}

TEST(Contour, MergesOverlapsAndStaysDisjoint)
{
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        std::vector<SphereEntry> e;
        for (int k = 0; k < 1 + t % 5; ++k) {
            e.push_back({{support::uniform(rng, -2, 2), std::abs(support::uniform(rng, -2, 2))}, 1});
        }
        const SphereSet s(e, 1e-8);
        const double margin = support::uniform(rng, 0.05, 0.6);
        const SliceContour c = build_contour(s, whole(), margin);
        for (std::size_t x = 0; x < c.circles.size(); ++x) {
            for (std::size_t y = x + 1; y < c.circles.size(); ++y) {
                const double gap = std::abs(c.circles[x].center - c.circles[y].center);
                EXPECT_GT(gap, c.circles[x].radius + c.circles[y].radius);
            }
            // Conjugation-closed.
            EXPECT_TRUE(has_circle(c, std::conj(c.circles[x].center), c.circles[x].radius));
        }
        // Every representative sits at least margin inside some circle.
        for (const auto& entry : s.entries()) {
            for (const SliceComplex z : {entry.sphere.representative(), std::conj(entry.sphere.representative())}) {
                EXPECT_TRUE(std::any_of(c.circles.begin(), c.circles.end(), [&](const Circle& x) {
                    return std::abs(z - x.center) + margin <= x.radius * (1.0 + 1e-12);
                }));
            }
        }
    }
}

TEST(Contour, Errors)
{
    AxSymDomain cut(ParameterBox{}, "cut");
    cut.exclude_ray(0.0, 1e-6);
    EXPECT_EQ(code_of([&] { (void)build_contour(spheres({{0.1, 0.0}}), cut, 0.2); }), ErrorCode::DomainTooTight);
    EXPECT_NO_THROW((void)build_contour(spheres({{0.3, 0.0}}), cut, 0.2));
    EXPECT_EQ(code_of([&] { (void)build_contour(spheres({{1.0, 0.0}}), whole(), 0.0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { (void)build_contour(spheres({{1.0, 0.0}}), whole(), -1.0); }), ErrorCode::InvalidArgument);
}

TEST(Contour, DefaultMarginClearsExclusions)
{
    AxSymDomain cut(ParameterBox{}, "cut");
    cut.exclude_ray(0.0, 1e-6);
    const SphereSet s = spheres({{0.5, 0.0}, {2.0, 1.0}});
    const double m = default_margin(s, cut);
    EXPECT_GT(m, 0.0);
    EXPECT_LE(m, 0.25 * (1.0 + s.max_norm()));
    EXPECT_LE(m, 0.5 * (0.5 - 1e-6) + 1e-15);
    EXPECT_NO_THROW((void)build_contour(s, cut, m));
    EXPECT_NEAR(default_margin(spheres({{0.0, 1.0}}), whole()), 0.5, 1e-15);
}

TEST(RieszDunford, Examples)
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    const SliceContour around_both{{{{1.5, 0.0}, 1.5}}};
    const QuadratureResult id = riesz_dunford(m, [](SliceComplex z) { return z; }, around_both);
    EXPECT_LT((id.value - m).norm(), 1e-12);

    ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    const SliceContour unit{{{{0.0, 0.0}, 1.0}}};
    const QuadratureResult e = riesz_dunford(nil, [](SliceComplex z) { return std::exp(z); }, unit);
    ComplexMatrix want = ComplexMatrix::Identity(2, 2);
    want(0, 1) = 1.0;
    EXPECT_LT((e.value - want).norm(), 1e-12);

    const SliceContour around_one{{{{1.0, 0.0}, 0.5}}};
    const QuadratureResult p = riesz_dunford(m, [](SliceComplex) { return SliceComplex{1.0}; }, around_one);
    ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    EXPECT_LT((p.value - proj).norm(), 1e-12);
    EXPECT_LE(p.last_change, 1e-10 * p.value.norm() + 1e-13);
}

TEST(RieszDunford, Errors)
{
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    // A node at 1 when the circle of radius 1 about 0 is sampled at angle 0.
    const SliceContour through{{{{0.0, 0.0}, 1.0}}};
    EXPECT_EQ(code_of([&] { (void)riesz_dunford(m, [](SliceComplex z) { return z; }, through); }),
              ErrorCode::SingularNode);

    // A discontinuous integrand only converges algebraically.
    const SliceContour circle{{{{0.0, 0.0}, 0.5}}};
    QuadratureOptions small;
    small.max_nodes = 256;
    const ComplexMatrix m3 = ComplexMatrix::Constant(1, 1, 0.3);
    EXPECT_EQ(code_of([&] {
                  (void)riesz_dunford(m3, [](SliceComplex z) { return SliceComplex{z.real() > 0.1 ? 1.0 : 0.0}; },
                                      circle, small);
              }),
              ErrorCode::QuadratureStalled);
}

TEST(Calculus, IntrinsicExamples)
{
    Rng rng(102);
    const QMatrix a = support::random_matrix(rng, 3);
    const StemFunction id = catalog_function("pow:1");
    for (const CalculusMethod m : {CalculusMethod::ComplexPath, CalculusMethod::SContour}) {
        EXPECT_LT(relative(calculus_intrinsic(a, id, m), a), 1e-10);

        const QMatrix e = calculus_intrinsic(QMatrix::scalar(1, I * (pi / 2)), catalog_function("exp"), m);
        EXPECT_LT(support::qdist(e(0, 0), I), 1e-12);

        const QMatrix p = calculus_intrinsic(QMatrix::scalar(1, J), catalog_function("poly:[1,0,1]"), m);
        EXPECT_LT(p(0, 0).norm(), 1e-12);
    }
    EXPECT_LT(relative(calculus_intrinsic(a, catalog_function("exp")), exp_oracle(a)), 1e-10);
}

TEST(Calculus, RejectsNonIntrinsic)
{
    const QMatrix a = QMatrix::scalar(1, J);
    EXPECT_EQ(code_of([&] { (void)calculus_intrinsic(a, catalog_function("monoR:[[0,1,0,0],1]")); }),
              ErrorCode::NotIntrinsic);

    Rng rng(103);
    const QMatrix b = support::random_matrix(rng, 2);
    EXPECT_EQ(code_of([&] {
                  (void)complex_path(b, [](SliceComplex z) { return SliceComplex{0.0, 1.0} * z; }, whole());
              }),
              ErrorCode::StructureViolation);
    const CalculusResult ok = complex_path(b, [](SliceComplex z) { return z * z; }, whole());
    EXPECT_LT(ok.structure_residual, 1e-9);
}

TEST(Calculus, PathsAgreeOnCatalogFunctions)
{
    Rng rng(104);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t) % 4;
        const QMatrix a = t % 2 == 0 ? support::random_matrix(rng, n) : support::random_shifted(rng, n, 0.8, 2.0);
        for (const char* name : {"exp", "pow:2", "poly:[1,-2,0,1]", "sqrt", "log"}) {
            const StemFunction f = catalog_function(name);
            try {
                const QMatrix x = calculus_intrinsic(a, f, CalculusMethod::ComplexPath);
                const QMatrix y = calculus_intrinsic(a, f, CalculusMethod::SContour);
                EXPECT_LT(relative(y, x), 1e-8) << name << " n=" << n;
            } catch (const Error& e) {
                // Spectra near the cut are out of scope for sqrt and log.
                EXPECT_EQ(e.code(), ErrorCode::DomainTooTight) << name << ": " << e.what();
                EXPECT_TRUE(std::string(name) == "sqrt" || std::string(name) == "log");
            }
        }
    }
}

TEST(Calculus, IndependentOfMargin)
{
    Rng rng(105);
    for (int t = 0; t < 10; ++t) {
        const QMatrix a = support::random_shifted(rng, 3, 0.5, 2.0);
        const StemFunction f = catalog_function("log");
        const SphereSet s = s_spectrum(a);
        const double gap = default_margin(s, f.domain()) * 2.0;
        QMatrix first;
        for (const double frac : {0.1, 0.2, 0.35, 0.5}) {
            CalculusOptions o;
            o.margin = frac * gap;
            const QMatrix v = calculus_intrinsic(a, f, CalculusMethod::ComplexPath, o);
            if (first.size() == 0) {
                first = v;
            } else {
                EXPECT_LT(relative(v, first), 1e-9) << frac;
            }
        }
    }
}

TEST(Calculus, QuadratureConverged)
{
    Rng rng(106);
    const QMatrix a = support::random_matrix(rng, 3);
    const CalculusResult r = calculus_intrinsic_detailed(a, catalog_function("exp"), CalculusMethod::ComplexPath);
    EXPECT_GE(r.nodes, 32U);
    EXPECT_GT(r.margin, 0.0);
    EXPECT_FALSE(r.contour.circles.empty());
}

TEST(Calculus, IntrinsicProductsCommute)
{
    Rng rng(107);
    for (int t = 0; t < 10; ++t) {
        const QMatrix a = support::random_matrix(rng, 3);
        const QMatrix f = calculus_intrinsic(a, catalog_function("exp"));
        const QMatrix g = calculus_intrinsic(a, catalog_function("poly:[0.5,-1,0,2]"));
        EXPECT_LT(relative(f * g, g * f), 1e-10);
        const QMatrix fg = calculus_intrinsic(a, multiply(catalog_function("exp"), catalog_function("poly:[0.5,-1,0,2]")));
        EXPECT_LT(relative(f * g, fg), 1e-8);
    }
}

TEST(Calculus, SidedExamples)
{
    const QMatrix a = QMatrix::scalar(1, J);
    for (const SidedMethod m : {SidedMethod::Decomposition, SidedMethod::SContour}) {
        const QMatrix r = calculus_sided(a, catalog_function("monoR:[[0,1,0,0],1]"), SliceKind::Right, m);
        EXPECT_LT(support::qdist(r(0, 0), K), 1e-12);
        const QMatrix l = calculus_sided(a, catalog_function("monoL:[[0,1,0,0],1]"), SliceKind::Left, m);
        EXPECT_LT(support::qdist(l(0, 0), -K), 1e-12);
    }
    Rng rng(108);
    const QMatrix b = support::random_matrix(rng, 2);
    EXPECT_LT(relative(calculus_sided(b, catalog_function("exp"), SliceKind::Left), calculus_intrinsic(b, catalog_function("exp"))),
              1e-12);
    EXPECT_EQ(code_of([&] { (void)calculus_sided(b, catalog_function("monoL:[1,1]"), SliceKind::Right); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { (void)calculus_sided(b, catalog_function("exp"), SliceKind::Intrinsic); }),
              ErrorCode::InvalidArgument);
}

TEST(Calculus, SidedMonomialsMatchMatrixProducts)
{
    // q^n a (left) is A^n a entrywise right; a q^n (right) is a A^n entrywise left.
    Rng rng(109);
    for (int t = 0; t < 10; ++t) {
        const QMatrix a = support::random_matrix(rng, 1 + t % 3);
        const Quaternion c = support::random_quaternion(rng);
        std::ostringstream coeff;
        coeff.precision(17);
        coeff << "[[" << c.a << "," << c.b << "," << c.c << "," << c.d << "],3]";
        const QMatrix a3 = a * a * a;
        for (const SidedMethod m : {SidedMethod::Decomposition, SidedMethod::SContour}) {
            const QMatrix l = calculus_sided(a, catalog_function("monoL:" + coeff.str()), SliceKind::Left, m);
            EXPECT_LT(relative(l, right_multiply(a3, c)), 1e-9);
            const QMatrix r = calculus_sided(a, catalog_function("monoR:" + coeff.str()), SliceKind::Right, m);
            EXPECT_LT(relative(r, left_multiply(c, a3)), 1e-9);
        }
    }
}

TEST(Calculus, SidedRoutesAgreeWithExpProducts)
{
    Rng rng(110);
    const StemFunction f = multiply(catalog_function("exp"), catalog_function("monoL:[[1,2,0,-1],1]"));
    for (int t = 0; t < 5; ++t) {
        const QMatrix a = support::random_matrix(rng, 2);
        const QMatrix d = calculus_sided(a, f, SliceKind::Left, SidedMethod::Decomposition);
        const QMatrix s = calculus_sided(a, f, SliceKind::Left, SidedMethod::SContour);
        EXPECT_LT(relative(s, d), 1e-8);
        EXPECT_LT(relative(d, right_multiply(exp_oracle(a) * a, Quaternion{1, 2, 0, -1})), 1e-9);
    }
}

TEST(Exp, Examples)
{
    EXPECT_EQ(op_exp(QMatrix::zero(3)), QMatrix::identity(3));
    EXPECT_LT(support::qdist(op_exp(QMatrix::scalar(1, I * pi))(0, 0), Quaternion{-1.0}), 1e-14);
    Rng rng(111);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = support::random_matrix(rng, 1 + t % 4, 2.0);
        const QMatrix e = op_exp(a);
        EXPECT_LT(relative(e, exp_oracle(a)), 1e-12);
        EXPECT_LT(relative(e, calculus_intrinsic(a, catalog_function("exp"))), 1e-9);
    }
}

TEST(Exp, SpectralMapping)
{
    Rng rng(112);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = support::random_matrix(rng, 1 + t % 4);
        std::vector<Sphere> image;
        for (const Sphere& s : s_spectrum(a).expanded()) {
            image.push_back(sphere_of(std::exp(s.representative())));
        }
        EXPECT_LT(sphere_set_distance(s_spectrum(op_exp(a)).expanded(), image), 1e-7);
    }
}

TEST(Log, Examples)
{
    EXPECT_LT(support::qdist(op_log(QMatrix::scalar(1, Quaternion{std::exp(2.0)}))(0, 0), Quaternion{2.0}), 1e-12);
    EXPECT_LT(support::qdist(op_log(QMatrix::scalar(1, I))(0, 0), I * (pi / 2)), 1e-12);
    EXPECT_EQ(code_of([] { (void)op_log(QMatrix::scalar(1, Quaternion{-1.0})); }), ErrorCode::BranchCut);
    EXPECT_EQ(code_of([] { (void)op_log(QMatrix::zero(2)); }), ErrorCode::BranchCut);
    EXPECT_EQ(code_of([] { (void)op_nth_root(QMatrix::scalar(1, Quaternion{-4.0}), 2); }), ErrorCode::BranchCut);
}

TEST(Root, Examples)
{
    EXPECT_LT(support::qdist(op_nth_root(QMatrix::scalar(1, Quaternion{4.0}), 2)(0, 0), Quaternion{2.0}), 1e-12);
    const Quaternion want = Quaternion{std::cos(pi / 4), std::sin(pi / 4)};
    EXPECT_LT(support::qdist(op_nth_root(QMatrix::scalar(1, I), 2)(0, 0), want), 1e-12);
    EXPECT_EQ(code_of([] { (void)op_nth_root(QMatrix::identity(1), 0); }), ErrorCode::InvalidArgument);
}

TEST(Log, RoundTrips)
{
    Rng rng(113);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = support::random_shifted(rng, 1 + t % 4, 0.9, 1.5);
        const double tol = 1e-8 * (1.0 + a.norm());
        EXPECT_LT((op_exp(op_log(a)) - a).norm(), tol);
        for (const int m : {2, 3, 5}) {
            EXPECT_LT((power(op_nth_root(a, m), static_cast<unsigned>(m)) - a).norm(), tol) << m;
        }
    }
}
