#include "qspec/eigenvalues.hpp"
#include "qspec/error.hpp"
#include "qspec/qmatrix.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <ranges>

using namespace qspec;
using qspec::support::Rng;

namespace {

const Quaternion I = Quaternion::i();
const Quaternion J = Quaternion::j();
const Quaternion K = Quaternion::k();
const SliceComplex ci{0.0, 1.0};

// Real matrix of an R-linear map on H^1, column t = image of basis unit t.
template <class Map>
RealMatrix matrix_by_basis(Map map)
{
    RealMatrix m(4, 4);
    for (int t = 0; t < 4; ++t) {
        Quaternion e;
        e = t == 0 ? Quaternion{1.0} : t == 1 ? I : t == 2 ? J : K;
        const Quaternion y = map(e);
        for (int r = 0; r < 4; ++r) {
            m(r, t) = y[r];
        }
    }
    return m;
}

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

} // namespace

TEST(QMatrix, ConstructionChecksSize)
{
    EXPECT_EQ(code_of([] { QMatrix(2, std::vector<Quaternion>(3)); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { QMatrix({{1.0, 2.0}, {3.0}}); }), ErrorCode::DimensionMismatch);
}

TEST(QMatrix, ApplyExamples)
{
    Rng rng(31);
    const QMatrix id = QMatrix::identity(3);
    const QVector x{support::random_quaternion(rng), support::random_quaternion(rng), support::random_quaternion(rng)};
    EXPECT_TRUE(qspec::apply(id, x) == x);

    const QMatrix a{{I}};
    EXPECT_TRUE(qspec::apply(a, QVector{J}) == QVector{K});
    EXPECT_TRUE(qspec::apply(a, right_scale(QVector{1.0}, J)) == right_scale(qspec::apply(a, QVector{1.0}), J));
    EXPECT_EQ(qspec::apply(a, right_scale(QVector{1.0}, J))[0], K);

    EXPECT_EQ(code_of([&] { (void)qspec::apply(a, QVector{1.0, 2.0}); }), ErrorCode::DimensionMismatch);
}

TEST(QMatrix, RightLinearity)
{
    Rng rng(32);
    for (int t = 0; t < 50; ++t) {
        const QMatrix a = support::random_matrix(rng, 4);
        QVector x(4);
        for (auto& e : x) {
            e = support::random_quaternion(rng);
        }
        const Quaternion q = support::random_quaternion(rng);
        const QVector lhs = qspec::apply(a, right_scale(x, q));
        const QVector rhs = right_scale(qspec::apply(a, x), q);
        for (std::size_t r = 0; r < 4; ++r) {
            EXPECT_LT(support::qdist(lhs[r], rhs[r]), 1e-13);
        }
    }
}

TEST(QMatrix, ProductMatchesNaiveOracle)
{
    Rng rng(33);
    for (std::size_t n = 1; n <= 6; ++n) {
        const QMatrix a = support::random_matrix(rng, n);
        const QMatrix b = support::random_matrix(rng, n);
        EXPECT_LT(max_entry_distance(a * b, support::naive_product(a, b)), 1e-13);
    }
}

TEST(QMatrix, ScalarProducts)
{
    Rng rng(34);
    const QMatrix a = support::random_matrix(rng, 3);
    const Quaternion s = support::random_quaternion(rng);
    QVector x(3);
    for (auto& e : x) {
        e = support::random_quaternion(rng);
    }
    // (sA)x = s(Ax), (As)x = A(sx)
    const QVector sax = qspec::apply(left_multiply(s, a), x);
    const QVector ax = qspec::apply(a, x);
    QVector sx(3);
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_LT(support::qdist(sax[r], s * ax[r]), 1e-14);
        sx[r] = s * x[r];
    }
    const QVector asx = qspec::apply(right_multiply(a, s), x);
    const QVector want = qspec::apply(a, sx);
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_LT(support::qdist(asx[r], want[r]), 1e-14);
    }
}

TEST(QMatrix, PowerMatchesRepeatedProduct)
{
    Rng rng(35);
    const QMatrix a = support::random_matrix(rng, 3);
    EXPECT_EQ(power(a, 0), QMatrix::identity(3));
    EXPECT_LT(max_entry_distance(power(a, 5), a * a * a * a * a), 1e-12);
}

TEST(ComplexAdjoint, Examples)
{
    ComplexMatrix want_i(2, 2);
    want_i << ci, 0.0, 0.0, -ci;
    EXPECT_LT((complex_adjoint(QMatrix{{I}}) - want_i).norm(), 1e-15);

    ComplexMatrix want_j(2, 2);
    want_j << 0.0, -1.0, 1.0, 0.0;
    EXPECT_LT((complex_adjoint(QMatrix{{J}}) - want_j).norm(), 1e-15);

    // chi(k) = chi(i) chi(j).
    EXPECT_LT((complex_adjoint(QMatrix{{K}}) - want_i * want_j).norm(), 1e-15);
}

TEST(ComplexAdjoint, HomomorphismOnRandomMatrices)
{
    Rng rng(36);
    for (int t = 0; t < 100; ++t) {
        const QMatrix a = support::random_matrix(rng, 4);
        const QMatrix b = support::random_matrix(rng, 4);
        EXPECT_LT((complex_adjoint(a + b) - complex_adjoint(a) - complex_adjoint(b)).norm(), 1e-12);
        // Product computed by the independent oracle.
        EXPECT_LT((complex_adjoint(support::naive_product(a, b)) - complex_adjoint(a) * complex_adjoint(b)).norm(),
                  1e-12 * (1.0 + a.norm() * b.norm()));
    }
    EXPECT_LT((complex_adjoint(QMatrix::identity(4)) - ComplexMatrix::Identity(8, 8)).norm(), 1e-15);
}

TEST(ComplexAdjoint, EmbeddingConsistency)
{
    Rng rng(37);
    for (int t = 0; t < 50; ++t) {
        const QMatrix a = support::random_matrix(rng, 3);
        QVector x(3);
        for (auto& e : x) {
            e = support::random_quaternion(rng);
        }
        const ComplexVector lhs = complex_coordinates(qspec::apply(a, x));
        const ComplexVector rhs = complex_adjoint(a) * complex_coordinates(x);
        EXPECT_LT((lhs - rhs).norm(), 1e-12);
        EXPECT_EQ(from_complex_coordinates(complex_coordinates(x)), x);
    }
}

TEST(ComplexAdjoint, RightSliceScalarIsComplexLinear)
{
    // x -> x z for z in C_i acts as multiplication by z on the coordinates.
    Rng rng(38);
    QVector x(2);
    for (auto& e : x) {
        e = support::random_quaternion(rng);
    }
    const SliceComplex z{0.3, -1.7};
    const ComplexVector lhs = complex_coordinates(right_scale(x, Quaternion{z}));
    EXPECT_LT((lhs - z * complex_coordinates(x)).norm(), 1e-14);
}

TEST(ComplexAdjoint, FromComplexAdjoint)
{
    Rng rng(39);
    const QMatrix a = support::random_matrix(rng, 3);
    EXPECT_EQ(from_complex_adjoint(complex_adjoint(a), 1e-12), a);

    ComplexMatrix m(2, 2);
    m << 0.0, -1.0, 1.0, 0.0;
    EXPECT_EQ(from_complex_adjoint(m, 1e-12), (QMatrix{{J}}));

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    EXPECT_EQ(code_of([&] { (void)from_complex_adjoint(d, 1e-9); }), ErrorCode::StructureViolation);
    EXPECT_GT(structure_residual(d), 0.5);
    EXPECT_EQ(code_of([&] { (void)from_complex_adjoint(ComplexMatrix::Zero(3, 3), 1e-9); }),
              ErrorCode::DimensionMismatch);
}

TEST(ComplexAdjoint, EigenvaluesClosedUnderConjugation)
{
    Rng rng(40);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = support::random_matrix(rng, 4);
        auto ev = eigenvalues(complex_adjoint(a));
        ASSERT_EQ(ev.size(), 8U);
        for (const SliceComplex& z : ev) {
            const double nearest = std::ranges::min(
                ev | std::views::transform([&](const SliceComplex& w) { return std::abs(w - std::conj(z)); }));
            EXPECT_LT(nearest, 1e-8 * (1.0 + a.norm()));
        }
    }
}

TEST(QMatrix, InverseAndSingular)
{
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = support::random_matrix(rng, 4);
        EXPECT_LT(max_entry_distance(a * inverse(a), QMatrix::identity(4)), 1e-10);
    }
    const QMatrix s{{1.0, J}, {1.0, J}};
    EXPECT_EQ(code_of([&] { (void)inverse(s); }), ErrorCode::Singular);
}

TEST(RealRepresentation, RightMultiplicationByI)
{
    RealMatrix want(4, 4);
    want << 0, -1, 0, 0,
            1,  0, 0, 0,
            0,  0, 0, 1,
            0,  0, -1, 0;
    const RealOperator ri = RealOperator::right_scalar(1, I);
    EXPECT_LT((ri.matrix() - want).norm(), 1e-15);
    EXPECT_LT((ri.matrix() - matrix_by_basis([](const Quaternion& x) { return support::cayley_dickson(x, I); }))
                  .norm(),
              1e-15);
}

TEST(RealRepresentation, LeftMultiplicationByIDiffers)
{
    const RealOperator li = RealOperator::of(QMatrix{{I}});
    EXPECT_LT((li.matrix() - matrix_by_basis([](const Quaternion& x) { return support::cayley_dickson(I, x); }))
                  .norm(),
              1e-15);
    EXPECT_GT((li.matrix() - RealOperator::right_scalar(1, I).matrix()).norm(), 1.0);
    EXPECT_LT((RealOperator::left_scalar(1, I).matrix() - li.matrix()).norm(), 1e-15);
}

TEST(RealRepresentation, BasisExpansionOracleForRandomScalars)
{
    Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        const Quaternion q = support::random_quaternion(rng);
        EXPECT_LT((RealOperator::right_scalar(1, q).matrix() -
                   matrix_by_basis([&](const Quaternion& x) { return support::cayley_dickson(x, q); }))
                      .norm(),
                  1e-14);
        EXPECT_LT((RealOperator::left_scalar(1, q).matrix() -
                   matrix_by_basis([&](const Quaternion& x) { return support::cayley_dickson(q, x); }))
                      .norm(),
                  1e-14);
    }
}

TEST(RealRepresentation, PencilAtImaginaryUnitOfJIsZero)
{
    const RealOperator rep = real_representation(q_pencil(QMatrix{{J}}, I));
    EXPECT_EQ(rep.matrix(), RealMatrix::Zero(4, 4));
}

TEST(RealRepresentation, HomomorphismAndApply)
{
    Rng rng(43);
    for (int t = 0; t < 30; ++t) {
        const QMatrix a = support::random_matrix(rng, 3);
        const QMatrix b = support::random_matrix(rng, 3);
        EXPECT_LT((RealOperator::of(a * b).matrix() - (RealOperator::of(a) * RealOperator::of(b)).matrix()).norm(),
                  1e-12);
        EXPECT_LT((RealOperator::of(a + b).matrix() - (RealOperator::of(a) + RealOperator::of(b)).matrix()).norm(),
                  1e-14);
        QVector x(3);
        for (auto& e : x) {
            e = support::random_quaternion(rng);
        }
        const QVector y1 = RealOperator::of(a).apply(x);
        const QVector y2 = qspec::apply(a, x);
        for (std::size_t r = 0; r < 3; ++r) {
            EXPECT_LT(support::qdist(y1[r], y2[r]), 1e-13);
        }
        const Quaternion q = support::random_quaternion(rng);
        const QVector z1 = RealOperator::right_scalar(3, q).apply(x);
        const QVector z2 = right_scale(x, q);
        for (std::size_t r = 0; r < 3; ++r) {
            EXPECT_LT(support::qdist(z1[r], z2[r]), 1e-14);
        }
    }
    EXPECT_EQ(code_of([] {
                  (void)(RealOperator::identity(2) + RealOperator::identity(3));
              }),
              ErrorCode::DimensionMismatch);
}

TEST(Pencil, Examples)
{
    EXPECT_EQ(q_pencil(QMatrix{{J}}, I), QMatrix{{0.0}});

    const Quaternion q{0.5, -1.0, 2.0, 0.25};
    EXPECT_LT(max_entry_distance(q_pencil(QMatrix::zero(2), q), QMatrix::scalar(2, Quaternion{q.norm2()})), 1e-15);

    Rng rng(44);
    const QMatrix a = support::random_matrix(rng, 3);
    const QMatrix shifted = a - QMatrix::scalar(3, Quaternion{1.5});
    EXPECT_LT(max_entry_distance(q_pencil(a, Quaternion{1.5}), shifted * shifted), 1e-13);
}

TEST(Pencil, DependsOnlyOnTheSphere)
{
    // Re(s q s^-1) and |s q s^-1| equal those of q up to rounding, so the
    // pencils agree to rounding level rather than bit for bit.
    Rng rng(45);
    for (int t = 0; t < 100; ++t) {
        const QMatrix a = support::random_matrix(rng, 3);
        const Quaternion q = support::random_quaternion(rng, 2.0);
        const Quaternion s = support::random_unit(rng);
        const QMatrix p1 = q_pencil(a, q);
        const QMatrix p2 = q_pencil(a, s * q * s.conj());
        EXPECT_LT(max_entry_distance(p1, p2), 1e-13 * (1.0 + p1.norm()));
    }
    // Exact when the conjugate is computed exactly: q = j vs s j s^-1 = i for s = (i+j)/sqrt2.
    const QMatrix a = support::random_matrix(rng, 2);
    EXPECT_EQ(q_pencil(a, J), q_pencil(a, I));
}

TEST(Delta, Examples)
{
    EXPECT_LT((delta(QMatrix::zero(1), ci) - ci * ComplexMatrix::Identity(2, 2)).norm(), 1e-15);

    ComplexMatrix want(2, 2);
    want << ci, 0.0, 0.0, 3.0 * ci;
    EXPECT_LT((delta(QMatrix{{I}}, 2.0 * ci) - want).norm(), 1e-15);

    const ComplexMatrix d = delta(QMatrix{{I}}, ci);
    ComplexMatrix sing(2, 2);
    sing << 0.0, 0.0, 0.0, 2.0 * ci;
    EXPECT_LT((d - sing).norm(), 1e-15);
    EXPECT_LT(Eigen::JacobiSVD<ComplexMatrix>(d).singularValues().minCoeff(), 1e-15);
}

TEST(Delta, FactorizationOfThePencil)
{
    Rng rng(46);
    for (int t = 0; t < 100; ++t) {
        const QMatrix a = support::random_matrix(rng, 1 + t % 4);
        const Quaternion q = support::random_quaternion(rng, 2.0);
        const RealMatrix pencil = real_representation(q_pencil(a, q)).matrix();
        const RealMatrix dq = delta_operator(a, q).matrix();
        const RealMatrix dqbar = delta_operator(a, q.conj()).matrix();
        EXPECT_LT((pencil - dq * dqbar).norm(), 1e-12 * (1.0 + pencil.norm()));
        EXPECT_LT((pencil - dqbar * dq).norm(), 1e-12 * (1.0 + pencil.norm()));
        EXPECT_NEAR(delta_operator(a, q).smallest_singular_value(),
                    delta_operator(a, q.conj()).smallest_singular_value(), 1e-10);
    }
}

TEST(Delta, SliceDeltaMatchesOperatorDelta)
{
    // On the slice, R_q - A in complex coordinates is q I - chi(A).
    Rng rng(47);
    const QMatrix a = support::random_matrix(rng, 2);
    const SliceComplex q{0.4, 1.1};
    QVector x(2);
    for (auto& e : x) {
        e = support::random_quaternion(rng);
    }
    const ComplexVector lhs = complex_coordinates(delta_operator(a, Quaternion{q}).apply(x));
    const ComplexVector rhs = delta(a, q) * complex_coordinates(x);
    EXPECT_LT((lhs - rhs).norm(), 1e-13);
}
