#include "qspec/eigenvalues.hpp"
#include "qspec/error.hpp"

#include "test_support.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

using namespace qspec;
using qspec::support::Rng;

namespace {

// Largest distance from a value of x to its nearest unused value of y.
double multiset_distance(std::vector<SliceComplex> x, std::vector<SliceComplex> y)
{
    if (x.size() != y.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (const SliceComplex& z : x) {
        auto it = std::min_element(y.begin(), y.end(),
                                   [&](const SliceComplex& a, const SliceComplex& b) {
                                       return std::abs(a - z) < std::abs(b - z);
                                   });
        worst = std::max(worst, std::abs(*it - z));
        y.erase(it);
    }
    return worst;
}

ComplexMatrix random_complex(Rng& rng, Eigen::Index n)
{
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = {support::uniform(rng), support::uniform(rng)};
        }
    }
    return m;
}

} // namespace

TEST(Eigenvalues, RotationMatrix)
{
    ComplexMatrix m(2, 2);
    m << 0.0, -1.0, 1.0, 0.0;
    EXPECT_LT(multiset_distance(eigenvalues(m), {{0.0, 1.0}, {0.0, -1.0}}), 1e-14);
}

TEST(Eigenvalues, Diagonal)
{
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    m(2, 2) = 3.0;
    EXPECT_LT(multiset_distance(eigenvalues(m), {1.0, 2.0, 3.0}), 1e-14);
}

TEST(Eigenvalues, CompanionOfQuadratic)
{
    // z^2 - 2z + 5: roots 1 +- 2i by the quadratic formula.
    const double b = -2.0, c = 5.0;
    const SliceComplex disc = std::sqrt(SliceComplex(b * b - 4.0 * c, 0.0));
    const std::vector<SliceComplex> want{(-b + disc) / 2.0, (-b - disc) / 2.0};
    ComplexMatrix m(2, 2);
    m << 0.0, -c, 1.0, -b;
    EXPECT_LT(multiset_distance(eigenvalues(m), want), 1e-13);
    EXPECT_LT(multiset_distance(want, {{1.0, 2.0}, {1.0, -2.0}}), 1e-15);
}

TEST(Eigenvalues, AgreesWithEigenOnRandomMatrices)
{
    Rng rng(51);
    for (int t = 0; t < 200; ++t) {
        const Eigen::Index n = 1 + t % 8;
        const ComplexMatrix m = random_complex(rng, n);
        const Eigen::ComplexEigenSolver<ComplexMatrix> ref(m, false);
        std::vector<SliceComplex> want(ref.eigenvalues().data(), ref.eigenvalues().data() + n);
        const auto got = eigenvalues(m);
        EXPECT_LT(multiset_distance(got, want), 1e-10) << "n = " << n;
        for (const SliceComplex& z : got) {
            EXPECT_LE(eigen_residual(m, z), 1e-10 * m.norm());
        }
    }
}

TEST(Eigenvalues, ComplexAdjointsOfRandomQuaternionMatrices)
{
    Rng rng(52);
    for (int t = 0; t < 50; ++t) {
        const QMatrix a = support::random_matrix(rng, 1 + t % 5);
        const ComplexMatrix m = complex_adjoint(a);
        const Eigen::ComplexEigenSolver<ComplexMatrix> ref(m, false);
        std::vector<SliceComplex> want(ref.eigenvalues().data(), ref.eigenvalues().data() + m.rows());
        EXPECT_LT(multiset_distance(eigenvalues(m), want), 1e-9);
    }
}

TEST(Eigenvalues, DefectiveAndTriangular)
{
    ComplexMatrix jordan = ComplexMatrix::Zero(3, 3);
    jordan(0, 1) = 1.0;
    jordan(1, 2) = 1.0;
    for (const SliceComplex& z : eigenvalues(jordan)) {
        EXPECT_LT(std::abs(z), 1e-4);
    }
    EXPECT_TRUE(eigenvalues(ComplexMatrix::Zero(4, 4)) == std::vector<SliceComplex>(4, 0.0));
    EXPECT_TRUE(eigenvalues(ComplexMatrix(0, 0)).empty());
}

TEST(Eigenvalues, Errors)
{
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
        (void)eigenvalues(bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
    try {
        (void)eigenvalues(ComplexMatrix::Zero(2, 3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}
