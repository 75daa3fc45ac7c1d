#pragma once

/**
 * Quaternionic n x n matrices as right-linear operators on H^n.
 *
 * Vectors are columns of quaternions; matrices act from the left and scalars
 * multiply vectors from the right, so A(xq) = (Ax)q.
 *
 * Three representations are provided:
 *  - QMatrix: the native quaternion matrix.
 *  - the complex adjoint chi(A): the 2n x 2n complex matrix of the same map on
 *    H^n viewed as C_i^{2n} through x = x1 + j x2 (x1, x2 in C_i^n). Right
 *    multiplication by C_i is complex-linear in these coordinates and
 *    chi(A) = [[A1, -conj(A2)], [A2, conj(A1)]] where A = A1 + j A2.
 *  - RealOperator: the 4n x 4n real matrix of any R-linear map of H^n in the
 *    coordinates (a, b, c, d) of each component. It also carries maps that are
 *    not right-linear, such as x -> xq.
 */

#include "qspec/quaternion.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qspec {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using QVector = std::vector<Quaternion>;

class QMatrix {
public:
    QMatrix() = default;
    explicit QMatrix(std::size_t n) : n_(n), data_(n * n) {}
    // Row-major entries; throws DimensionMismatch unless entries.size() == n*n.
    QMatrix(std::size_t n, std::vector<Quaternion> entries);
    QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

    static QMatrix zero(std::size_t n) { return QMatrix(n); }
    static QMatrix identity(std::size_t n) { return scalar(n, Quaternion{1.0}); }
    static QMatrix scalar(std::size_t n, const Quaternion& s);
    static QMatrix diagonal(std::span<const Quaternion> diag);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::span<const Quaternion> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<Quaternion> entries() noexcept { return data_; }

    Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    QMatrix& operator+=(const QMatrix& o);
    QMatrix& operator-=(const QMatrix& o);
    QMatrix& operator*=(double s);

    // Frobenius norm; the operator-norm surrogate used for series bounds.
    [[nodiscard]] double norm() const;

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t n_ = 0;
    QVector data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(const QMatrix& a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);

// (sA)x = s(Ax): every entry multiplied by s on the left.
QMatrix left_multiply(const Quaternion& s, const QMatrix& a);
// (As)x = A(sx): every entry multiplied by s on the right.
QMatrix right_multiply(const QMatrix& a, const Quaternion& s);

QMatrix power(const QMatrix& a, unsigned exponent);

// Ax; throws DimensionMismatch.
QVector apply(const QMatrix& a, std::span<const Quaternion> x);
// Componentwise right scalar multiplication x q.
QVector right_scale(std::span<const Quaternion> x, const Quaternion& q);

// Entrywise max |a_rc - b_rc|.
double max_entry_distance(const QMatrix& a, const QMatrix& b);

ComplexMatrix complex_adjoint(const QMatrix& a);

// (x1, x2) with x = x1 + j x2.
ComplexVector complex_coordinates(std::span<const Quaternion> x);
QVector from_complex_coordinates(const ComplexVector& v);

// Frobenius distance from M to the nearest complex adjoint (the block
// structure defect). Throws DimensionMismatch for odd or non-square M.
double structure_residual(const ComplexMatrix& m);

// Recovers A from chi(A). Throws StructureViolation when the structure
// residual exceeds tol * (1 + ||M||_F).
QMatrix from_complex_adjoint(const ComplexMatrix& m, double tol);

// Inverse through the complex adjoint; throws Singular.
QMatrix inverse(const QMatrix& a);

// Reciprocal condition below which complex solves are reported singular.
inline constexpr double kSingularRcond = 1e-14;

class RealOperator {
public:
    RealOperator(std::size_t n, RealMatrix m);

    static RealOperator identity(std::size_t n);
    // x -> Ax
    static RealOperator of(const QMatrix& a);
    // R_q: x -> xq
    static RealOperator right_scalar(std::size_t n, const Quaternion& q);
    // x -> qx
    static RealOperator left_scalar(std::size_t n, const Quaternion& q);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] const RealMatrix& matrix() const noexcept { return m_; }

    [[nodiscard]] QVector apply(std::span<const Quaternion> x) const;
    [[nodiscard]] double smallest_singular_value() const;

    RealOperator& operator+=(const RealOperator& o);
    RealOperator& operator-=(const RealOperator& o);

    friend RealOperator operator+(RealOperator a, const RealOperator& b) { return a += b; }
    friend RealOperator operator-(RealOperator a, const RealOperator& b) { return a -= b; }
    // Composition: (a * b)x = a(b(x)).
    friend RealOperator operator*(const RealOperator& a, const RealOperator& b);
    friend RealOperator operator*(double s, RealOperator a);

private:
    std::size_t n_;
    RealMatrix m_;
};

inline RealOperator real_representation(const QMatrix& a) { return RealOperator::of(a); }

// Q_q(A) = A^2 - 2 Re(q) A + |q|^2 I; depends on q only through its sphere.
QMatrix q_pencil(const QMatrix& a, const Quaternion& q);

// Delta_q = qI - chi(A) for q in C_i.
ComplexMatrix delta(const QMatrix& a, SliceComplex q);

// Delta_q = R_q - A for any quaternion q. Only R-linear off the slice.
RealOperator delta_operator(const QMatrix& a, const Quaternion& q);

} // namespace qspec
